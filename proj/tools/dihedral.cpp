// dihedral: command-line front end.
//
//   dihedral analyze --matrix "{{1,0,0,0},{0,1,0,0},{1,0,-2,1},{-1,-1,0,-1}}" --n 3
//   dihedral scan census.csv --jobs 4 --format text
//   dihedral twist --from -10 --to 20
//   dihedral charknots --matrix "{{-1,1},{0,11}}" --n 3
//   dihedral selftest
//
// Exit status: 0 success, 1 fatal input/output error, 2 selftest failure.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dihedral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitSelftest = 2;

struct Common {
  std::string format = "json";
  std::optional<std::size_t> enum_cap;
  std::vector<std::int64_t> moduli;
  std::int64_t n_max = 99;
  std::size_t jobs = 1;
};

std::size_t resolve_cap(const Common& c) {
  if (c.enum_cap) return *c.enum_cap;
  if (const char* env = std::getenv("DIHEDRAL_ENUM_CAP"); env && *env) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != std::string(env).size())
      throw dihedral::Error(std::string("DIHEDRAL_ENUM_CAP is not a number: ") + env);
    return static_cast<std::size_t>(v);
  }
  return dihedral::kDefaultEnumerationCap;
}

dihedral::AnalyzeOptions options_from(const Common& c) {
  dihedral::AnalyzeOptions o;
  o.moduli = c.moduli;
  o.n_max = c.n_max;
  o.enum_cap = resolve_cap(c);
  return o;
}

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
}

void add_cap(CLI::App* cmd, Common& c) {
  cmd->add_option("--enum-cap", c.enum_cap,
                  "Largest group enumerated exhaustively (default 1000000, or DIHEDRAL_ENUM_CAP)");
}

void add_moduli(CLI::App* cmd, Common& c) {
  cmd->add_option("--n", c.moduli, "Odd moduli n (default: every odd divisor of det up to n-max)")
      ->delimiter(',');
  cmd->add_option("--n-max", c.n_max, "Upper bound for automatic moduli")->capture_default_str();
}

int run_selftest() {
  const auto results = dihedral::run_selftest();
  std::size_t failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name;
    if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
    std::cout << "\n";
    if (!r.passed) ++failed;
  }
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed ? kExitSelftest : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dihedral quotients of knot groups and their extension over surfaces in B^4"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dihedral::kToolVersion));

  Common c;
  std::string matrix, name, path;
  std::int64_t m_from = -10, m_to = 10, single_n = 0;

  auto* analyze = app.add_subcommand("analyze", "Analyze one Seifert matrix");
  analyze->add_option("--matrix", matrix, "Seifert matrix, e.g. {{-1,1},{0,2}}")->required();
  analyze->add_option("--name", name, "Label for the report");
  add_moduli(analyze, c);
  add_cap(analyze, c);
  add_format(analyze, c);

  auto* scan = app.add_subcommand("scan", "Analyze every row of a CSV or JSON-lines census");
  scan->add_option("path", path, "Input file")->required();
  add_moduli(scan, c);
  add_cap(scan, c);
  add_format(scan, c);
  scan->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1, 1024))->capture_default_str();

  auto* twist = app.add_subcommand("twist", "Tabulate the twist knot family K_m");
  twist->add_option("--from", m_from, "First m")->capture_default_str();
  twist->add_option("--to", m_to, "Last m")->capture_default_str();
  add_format(twist, c);

  auto* charknots = app.add_subcommand("charknots", "List mod-n characteristic classes");
  charknots->add_option("--matrix", matrix, "Seifert matrix")->required();
  charknots->add_option("--n", single_n, "Odd modulus n > 1")->required();
  add_cap(charknots, c);
  add_format(charknots, c);

  auto* selftest = app.add_subcommand("selftest", "Run the built-in regression checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitFatal;
  }

  const bool json = c.format == "json";
  try {
    if (selftest->parsed()) return run_selftest();

    if (analyze->parsed()) {
      const dihedral::Report r = dihedral::analyze(dihedral::parse_matrix(matrix), name, options_from(c));
      if (json) std::cout << dihedral::to_json(r).dump(2) << "\n";
      else std::cout << dihedral::to_text(r);
      return kExitOk;
    }

    if (scan->parsed()) {
      dihedral::scan(path, options_from(c), c.jobs, [&](const dihedral::Report& r) {
        if (json) std::cout << dihedral::to_json(r).dump() << "\n";
        else std::cout << dihedral::to_text(r);
      });
      std::cout.flush();
      return std::cout ? kExitOk : kExitFatal;
    }

    if (twist->parsed()) {
      if (m_to < m_from) throw dihedral::Error("--to must not be below --from");
      const auto rows = dihedral::twist_family(m_from, m_to);
      if (json) std::cout << dihedral::to_json(rows).dump(2) << "\n";
      else std::cout << dihedral::to_text(rows);
      return kExitOk;
    }

    if (charknots->parsed()) {
      const auto listing =
          dihedral::list_char_knots(dihedral::parse_matrix(matrix), single_n, resolve_cap(c));
      if (json) std::cout << dihedral::to_json(listing).dump(2) << "\n";
      else std::cout << dihedral::to_text(listing);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "dihedral: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitFatal;
}
