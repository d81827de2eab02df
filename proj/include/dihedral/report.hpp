// End-to-end analysis of a knot and the report formats built from it.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dihedral/cover.hpp"
#include "dihedral/errors.hpp"
#include "dihedral/io.hpp"
#include "dihedral/linalg.hpp"
#include "dihedral/obstruction.hpp"
#include "dihedral/seifert.hpp"
#include "dihedral/signatures.hpp"
#include "json.hpp"

namespace dihedral {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "dihedral-report/1";
inline constexpr const char* kTwistSchema = "dihedral-twist/1";
inline constexpr const char* kCharKnotSchema = "dihedral-charknots/1";

using Json = nlohmann::ordered_json;

struct AnalyzeOptions {
  /// Explicit moduli; empty means every odd n > 1 dividing the determinant.
  std::vector<std::int64_t> moduli;
  std::int64_t n_max = 99;
  std::size_t enum_cap = kDefaultEnumerationCap;
};

struct StabilizationSummary {
  bool stabilized = false;
  bool reversed_orientation = false;
  std::array<Integer, 4> squares{};
  std::size_t genus = 0;
  IntVector beta;
};

struct CharKnotSummary {
  std::vector<std::int64_t> beta_mod_n;
  Integer form_value;
  Integer form_value_mod_n2;
  bool criterion = false;
  GroupElement character;
  ResidueQZ self_linking;
  std::optional<StabilizationSummary> stabilization;
  std::string stabilization_note;
};

struct ClassSummary {
  GroupElement representative;
  std::size_t orbit_size = 0;
  ExtensionVerdict verdict;
  std::optional<CharKnotSummary> characteristic;
};

struct ModulusBlock {
  std::int64_t n = 0;
  Integer torsion_order;
  bool enumerated = true;
  std::string enumeration_note;
  std::optional<std::size_t> quotient_class_count;
  std::optional<std::size_t> extendable_class_count;
  std::vector<ClassSummary> classes;
  /// Filled only when the classes were not enumerated.
  std::vector<CharKnotSummary> kernel_basis;
  std::optional<bool> cyclic_criterion;
  bool criteria_agree = true;
};

struct SkippedModulus {
  std::int64_t n = 0;
  std::string reason;
};

struct XiSummary {
  std::int64_t n = 3;
  IntVector beta;
  XiValue xi;
  std::int64_t rank_h1 = 0;
  RibbonVerdict ribbon = RibbonVerdict::ConsistentWithRibbon;
};

struct Report {
  std::string name;
  std::string source;
  std::optional<SeifertMatrix> seifert;
  std::string error_kind;
  std::string error;
  std::optional<std::size_t> error_position;

  std::size_t genus = 0;
  Integer determinant;
  IntVector invariant_factors;
  std::vector<ModulusBlock> blocks;
  std::vector<SkippedModulus> skipped;
  std::optional<XiSummary> xi;
  std::vector<std::string> notes;

  bool ok() const noexcept { return seifert.has_value() && error.empty(); }
};

/// Largest a/2 handed to four_squares when reporting stabilizations.
inline const Integer kStabilizationLimit = Integer(1'000'000'000'000LL);

namespace detail {

inline CharKnotSummary summarize(const LinkingForm& form, const CharKnotClass& beta) {
  CharKnotSummary s;
  const std::int64_t n = beta.modulus();
  s.beta_mod_n = beta.beta_mod_n();
  s.form_value = beta.form_value();
  s.form_value_mod_n2 = mod_floor(s.form_value, Integer(n) * n);
  s.criterion = seifert_criterion(beta);
  const Character ch = char_knot_to_character(form, beta);
  s.character = ch.element();
  s.self_linking = form.self_linking(ch.element());
  if (s.criterion && abs(s.form_value) > kStabilizationLimit * 2 * n * n) {
    s.stabilization_note = "skipped: four-square search for " +
                           to_string(abs(s.form_value) / (2 * n * n)) + " is too large";
  } else if (s.criterion) {
    const SeifertMatrix& v = beta.seifert();
    const Stabilization st = stabilize_zero_framed(v, SurfaceClass(v, beta.lift()), n);
    s.stabilization = StabilizationSummary{st.stabilized, st.reversed_orientation, st.squares,
                                           st.matrix.genus(), st.beta.coords()};
  }
  return s;
}

inline GroupElement orbit_key(const TorsionGroup& g, const GroupElement& c, std::int64_t n) {
  GroupElement rep = c;
  for (std::int64_t u : units_mod(n)) rep = std::min(rep, g.scale(c, Integer(u)));
  return rep;
}

inline ModulusBlock analyze_modulus(const SeifertMatrix& v, const LinkingForm& form,
                                    std::int64_t n, std::size_t cap) {
  const TorsionGroup& g = form.group();
  ModulusBlock b;
  b.n = n;
  b.torsion_order = g.torsion_order(n);
  if (g.is_cyclic()) b.cyclic_criterion = cyclic_criterion(g, n);
  try {
    const auto chars = surjective_characters(form, n, cap);
    const auto classes = quotient_classes(form, chars, n);
    const auto betas = characteristic_knot_classes(v, n, cap);
    if (betas.size() != chars.size()) b.criteria_agree = false;
    std::map<GroupElement, CharKnotSummary> by_class;
    for (const CharKnotClass& beta : betas) {
      CharKnotSummary s = summarize(form, beta);
      if (s.criterion != s.self_linking.is_zero()) b.criteria_agree = false;
      by_class.try_emplace(orbit_key(g, s.character, n), std::move(s));
    }
    std::size_t extendable = 0;
    for (const QuotientClass& qc : classes) {
      ClassSummary cs;
      cs.representative = qc.representative().element();
      cs.orbit_size = qc.members.size();
      cs.verdict = verdict(form, qc.representative());
      if (cs.verdict.extends) ++extendable;
      if (auto it = by_class.find(cs.representative); it != by_class.end()) {
        if (it->second.criterion != cs.verdict.extends) b.criteria_agree = false;
        cs.characteristic = it->second;
      } else {
        b.criteria_agree = false;
      }
      b.classes.push_back(std::move(cs));
    }
    b.quotient_class_count = classes.size();
    b.extendable_class_count = extendable;
    if (b.cyclic_criterion && *b.cyclic_criterion != (extendable > 0)) b.criteria_agree = false;
  } catch (const EnumerationCapError& e) {
    b.enumerated = false;
    b.enumeration_note = std::string("not enumerated: ") + e.what();
    b.classes.clear();
    for (const CharKnotClass& beta : kernel_basis_classes(v, n))
      b.kernel_basis.push_back(summarize(form, beta));
  }
  return b;
}

// The genus-one twist knot matrix [[-1, 1], [0, m]], if v is one.
inline std::optional<Integer> twist_parameter(const SeifertMatrix& v) {
  const IntMatrix& m = v.matrix();
  if (m.rows() != 2 || m(0, 0) != -1 || m(0, 1) != 1 || m(1, 0) != 0) return std::nullopt;
  return m(1, 1);
}

inline std::vector<std::int64_t> auto_moduli(const Integer& det, std::int64_t n_max) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 3; n <= n_max; n += 2)
    if (det % n == 0) out.push_back(n);
  return out;
}

}  // namespace detail

inline Report analyze(const KnotRecord& record, const AnalyzeOptions& options = {}) {
  Report r;
  r.name = record.name;
  r.source = record.source;
  if (!record.ok()) {
    r.error_kind = record.error_kind;
    r.error = record.error;
    r.error_position = record.error_position;
    return r;
  }
  const SeifertMatrix& v = *record.seifert;
  r.seifert = v;
  r.genus = v.genus();
  r.determinant = knot_determinant(v);
  const LinkingForm form(double_cover_homology(v));
  r.invariant_factors = form.group().invariant_factors();

  std::vector<std::int64_t> moduli = options.moduli;
  if (moduli.empty()) moduli = detail::auto_moduli(r.determinant, options.n_max);
  std::sort(moduli.begin(), moduli.end());
  moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
  for (std::int64_t n : moduli) {
    if (n % 2 == 0 || n <= 1) {
      r.skipped.push_back({n, n % 2 == 0 ? "even modulus" : "modulus must be > 1"});
    } else if (r.determinant % n != 0) {
      r.skipped.push_back({n, "does not divide the determinant; no D_" + std::to_string(n) +
                                  " quotient"});
    } else {
      r.blocks.push_back(detail::analyze_modulus(v, form, n, options.enum_cap));
    }
  }

  const auto m = detail::twist_parameter(v);
  const bool has3 = std::any_of(r.blocks.begin(), r.blocks.end(),
                                [](const ModulusBlock& b) { return b.n == 3; });
  if (m && has3) {
    XiSummary x;
    x.beta = {-1, 1};
    x.xi = xi_twist(*m);
    x.ribbon = ribbon_test(x.xi, 0, 3);
    r.xi = std::move(x);
  }

  r.notes = {
      "lk(u,v) = u^T A^-1 v mod Z with A = V + V^T",
      "torsion coordinates are relative to Smith normal form generators, which are not canonical",
      "a class beta mod n is characteristic when A beta = 0 mod n and gcd(beta, n) = 1",
      "quotient classes are (Z/n)^x orbits of surjective characters; the trivial character is "
      "excluded",
  };
  if (r.xi)
    r.notes.push_back(
        "twist knot path: beta = (-1,1) is unknotted, sigma(W) = +-1, rk H_1(M_3) = 0");
  return r;
}

inline Report analyze(const SeifertMatrix& v, const std::string& name,
                      const AnalyzeOptions& options = {}) {
  KnotRecord rec;
  rec.name = name;
  rec.seifert = v;
  return analyze(rec, options);
}

// JSON

inline Json to_json(const Rational& q) {
  return Json{{"num", to_string(numerator(q))}, {"den", to_string(denominator(q))}};
}
inline Json to_json(const ResidueQZ& x) { return to_json(x.value()); }

inline Json integers_json(const IntVector& v) {
  Json a = Json::array();
  for (const Integer& x : v) a.push_back(to_string(x));
  return a;
}

inline Json to_json(const CharKnotSummary& s) {
  Json j;
  j["beta_mod_n"] = s.beta_mod_n;
  j["form_value"] = to_string(s.form_value);
  j["form_value_mod_n2"] = to_string(s.form_value_mod_n2);
  j["seifert_criterion"] = s.criterion;
  j["zero_framed_exists"] = s.criterion;
  j["character"] = integers_json(s.character.coords);
  j["self_linking"] = to_json(s.self_linking);
  if (s.stabilization) {
    const StabilizationSummary& st = *s.stabilization;
    Json sq = Json::array();
    for (const Integer& a : st.squares) sq.push_back(to_string(a));
    j["stabilization"] = Json{{"stabilized", st.stabilized},
                              {"reversed_orientation", st.reversed_orientation},
                              {"squares", sq},
                              {"genus", st.genus},
                              {"beta", integers_json(st.beta)}};
  } else {
    j["stabilization"] = nullptr;
  }
  j["stabilization_note"] = s.stabilization_note.empty() ? Json(nullptr) : Json(s.stabilization_note);
  return j;
}

inline Json to_json(const ModulusBlock& b) {
  Json j;
  j["n"] = b.n;
  j["torsion_subgroup_order"] = to_string(b.torsion_order);
  j["enumerated"] = b.enumerated;
  j["enumeration_note"] = b.enumerated ? Json(nullptr) : Json(b.enumeration_note);
  j["quotient_class_count"] = b.quotient_class_count ? Json(*b.quotient_class_count) : Json(nullptr);
  j["extendable_class_count"] =
      b.extendable_class_count ? Json(*b.extendable_class_count) : Json(nullptr);
  Json classes = Json::array();
  for (const ClassSummary& c : b.classes) {
    Json scope = Json::array();
    for (ScopeNote s : c.verdict.scope) scope.push_back(to_string(s));
    classes.push_back(Json{
        {"representative", integers_json(c.representative.coords)},
        {"orbit_size", c.orbit_size},
        {"self_linking", to_json(c.verdict.self_linking)},
        {"extends", c.verdict.extends},
        {"scope", scope},
        {"characteristic_class", c.characteristic ? to_json(*c.characteristic) : Json(nullptr)},
    });
  }
  j["classes"] = classes;
  Json kb = Json::array();
  for (const CharKnotSummary& s : b.kernel_basis) kb.push_back(to_json(s));
  j["kernel_basis_classes"] = kb;
  j["cyclic_criterion"] = b.cyclic_criterion ? Json(*b.cyclic_criterion) : Json(nullptr);
  j["criteria_agree"] = b.criteria_agree;
  return j;
}

inline Json to_json(const XiValue& xi) {
  Json c = Json::array();
  for (const Rational& q : xi.candidates()) c.push_back(to_json(q));
  return c;
}

inline Json to_json(const Report& r) {
  Json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = kToolVersion;
  j["name"] = r.name;
  j["source"] = r.source;
  if (!r.ok()) {
    j["error"] = Json{{"kind", r.error_kind},
                      {"message", r.error},
                      {"position", r.error_position ? Json(*r.error_position) : Json(nullptr)}};
    return j;
  }
  j["seifert"] = render_matrix(*r.seifert);
  j["genus"] = r.genus;
  j["determinant"] = to_string(r.determinant);
  j["invariant_factors"] = integers_json(r.invariant_factors);
  Json blocks = Json::array();
  for (const ModulusBlock& b : r.blocks) blocks.push_back(to_json(b));
  j["moduli"] = blocks;
  Json skipped = Json::array();
  for (const SkippedModulus& s : r.skipped) skipped.push_back(Json{{"n", s.n}, {"reason", s.reason}});
  j["skipped_moduli"] = skipped;
  if (r.xi) {
    const XiSummary& x = *r.xi;
    j["xi"] = Json{{"n", x.n},
                   {"beta", integers_json(x.beta)},
                   {"sigma_w", Json{{"low", x.xi.components.sigma_w_low},
                                    {"high", x.xi.components.sigma_w_high}}},
                   {"form_term", to_json(x.xi.components.form_term)},
                   {"tristram_levine_sum", x.xi.components.tristram_levine_sum},
                   {"candidates", to_json(x.xi)},
                   {"rank_h1", x.rank_h1},
                   {"ribbon", to_string(x.ribbon)}};
  } else {
    j["xi"] = nullptr;
  }
  j["notes"] = r.notes;
  return j;
}

// Text

inline std::string rational_text(const Rational& q) {
  if (denominator(q) == 1) return to_string(numerator(q));
  return to_string(numerator(q)) + "/" + to_string(denominator(q));
}

inline std::string element_text(const GroupElement& g) {
  std::ostringstream os;
  os << g;
  return os.str();
}

inline std::string beta_text(const std::vector<std::int64_t>& b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + ")";
}

inline std::string to_text(const Report& r) {
  std::ostringstream os;
  const std::string label = r.name.empty() ? std::string("<unnamed>") : r.name;
  if (!r.ok()) {
    os << label;
    if (!r.source.empty()) os << " [" << r.source << "]";
    os << "  ERROR " << r.error << "\n";
    return os.str();
  }
  os << label << "  genus " << r.genus << "  det " << r.determinant << "  H1 = ";
  if (r.invariant_factors.empty()) os << "0";
  for (std::size_t i = 0; i < r.invariant_factors.size(); ++i)
    os << (i ? " + " : "") << "Z" << r.invariant_factors[i];
  os << "\n";
  for (const ModulusBlock& b : r.blocks) {
    os << "  n = " << b.n << "  |G[n]| = " << b.torsion_order;
    if (b.cyclic_criterion) os << "  cyclic criterion: " << (*b.cyclic_criterion ? "yes" : "no");
    os << "\n";
    if (!b.enumerated) {
      os << "    " << b.enumeration_note << "\n";
      for (const CharKnotSummary& s : b.kernel_basis)
        os << "    beta " << beta_text(s.beta_mod_n) << "  form " << s.form_value << " = "
           << s.form_value_mod_n2 << " mod n^2  " << (s.criterion ? "extends" : "obstructed")
           << "\n";
      continue;
    }
    os << "    " << *b.quotient_class_count << " quotient classes, " << *b.extendable_class_count
       << " extend" << (b.criteria_agree ? "" : "  (CRITERIA DISAGREE)") << "\n";
    if (!b.classes.empty())
      os << "    c                lk(c,c)   verdict     beta mod n        form mod n^2\n";
    for (const ClassSummary& c : b.classes) {
      std::string line = "    " + element_text(c.representative);
      line.resize(std::max<std::size_t>(line.size() + 1, 21), ' ');
      line += rational_text(c.verdict.self_linking.value());
      line.resize(std::max<std::size_t>(line.size() + 1, 31), ' ');
      line += c.verdict.extends ? "extends" : "obstructed";
      line.resize(std::max<std::size_t>(line.size() + 1, 43), ' ');
      if (c.characteristic) {
        line += beta_text(c.characteristic->beta_mod_n);
        line.resize(std::max<std::size_t>(line.size() + 1, 61), ' ');
        line += to_string(c.characteristic->form_value_mod_n2);
      }
      os << line << "\n";
    }
  }
  for (const SkippedModulus& s : r.skipped) os << "  n = " << s.n << "  skipped: " << s.reason << "\n";
  if (r.xi) {
    os << "  Xi_3 candidates:";
    for (const Rational& q : r.xi->xi.candidates()) os << " " << rational_text(q);
    os << "  (" << to_string(r.xi->ribbon) << ")\n";
  }
  return os.str();
}

// Twist family

struct TwistRow {
  Integer m;
  Integer determinant;
  bool quotient = false;
  std::optional<bool> extends;
  std::optional<XiValue> xi;
  std::optional<RibbonVerdict> ribbon;
  bool criteria_agree = true;
};

inline TwistRow twist_row(const Integer& m) {
  TwistRow row;
  row.m = m;
  const SeifertMatrix v = twist_knot(m);
  row.determinant = knot_determinant(v);
  row.quotient = row.determinant % 3 == 0;
  if (!row.quotient) return row;
  AnalyzeOptions opt;
  opt.moduli = {3};
  const Report r = analyze(v, "", opt);
  const ModulusBlock& b = r.blocks.front();
  row.extends = b.extendable_class_count.value_or(0) > 0;
  const bool by_form = seifert_criterion(CharKnotClass(v, {-1, 1}, 3));
  row.criteria_agree = b.criteria_agree && by_form == *row.extends;
  row.xi = xi_twist(m);
  row.ribbon = ribbon_test(*row.xi, 0, 3);
  return row;
}

inline std::vector<TwistRow> twist_family(std::int64_t m_lo, std::int64_t m_hi) {
  std::vector<TwistRow> rows;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) rows.push_back(twist_row(Integer(m)));
  return rows;
}

inline Json to_json(const std::vector<TwistRow>& rows) {
  Json j;
  j["schema"] = kTwistSchema;
  j["tool_version"] = kToolVersion;
  Json a = Json::array();
  for (const TwistRow& r : rows)
    a.push_back(Json{{"m", to_string(r.m)},
                     {"determinant", to_string(r.determinant)},
                     {"d3_quotient", r.quotient},
                     {"extends", r.extends ? Json(*r.extends) : Json(nullptr)},
                     {"xi3", r.xi ? to_json(*r.xi) : Json(nullptr)},
                     {"ribbon", r.ribbon ? Json(to_string(*r.ribbon)) : Json(nullptr)},
                     {"criteria_agree", r.criteria_agree}});
  j["rows"] = a;
  return j;
}

inline std::string to_text(const std::vector<TwistRow>& rows) {
  std::ostringstream os;
  os << "     m      det  D3  extends  Xi_3      ribbon\n";
  for (const TwistRow& r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%6s %8s  %-3s %-8s ", to_string(r.m).c_str(),
                  to_string(r.determinant).c_str(), r.quotient ? "yes" : "no",
                  r.extends ? (*r.extends ? "yes" : "no") : "-");
    os << buf;
    std::string xi = "-";
    if (r.xi) {
      xi.clear();
      for (const Rational& q : r.xi->candidates()) xi += (xi.empty() ? "" : ",") + rational_text(q);
    }
    xi.resize(std::max<std::size_t>(xi.size() + 1, 10), ' ');
    os << xi << (r.ribbon ? to_string(*r.ribbon) : "-");
    if (!r.criteria_agree) os << "  (CRITERIA DISAGREE)";
    os << "\n";
  }
  return os.str();
}

// Characteristic classes

struct CharKnotListing {
  SeifertMatrix seifert;
  std::int64_t n = 0;
  std::vector<CharKnotSummary> classes;
};

inline CharKnotListing list_char_knots(const SeifertMatrix& v, std::int64_t n,
                                       std::size_t cap = kDefaultEnumerationCap) {
  CharKnotListing out{v, n, {}};
  const LinkingForm form(double_cover_homology(v));
  for (const CharKnotClass& beta : characteristic_knot_classes(v, n, cap))
    out.classes.push_back(detail::summarize(form, beta));
  return out;
}

inline Json to_json(const CharKnotListing& l) {
  Json j;
  j["schema"] = kCharKnotSchema;
  j["tool_version"] = kToolVersion;
  j["seifert"] = render_matrix(l.seifert);
  j["n"] = l.n;
  Json a = Json::array();
  for (const CharKnotSummary& s : l.classes) a.push_back(to_json(s));
  j["classes"] = a;
  return j;
}

inline std::string to_text(const CharKnotListing& l) {
  std::ostringstream os;
  os << "characteristic classes mod " << l.n << " of " << render_matrix(l.seifert) << ": "
     << l.classes.size() << "\n";
  for (const CharKnotSummary& s : l.classes) {
    os << "  beta " << beta_text(s.beta_mod_n) << "  form " << s.form_value << " = "
       << s.form_value_mod_n2 << " mod " << l.n * l.n << "  c = " << element_text(s.character)
       << "  lk(c,c) = " << rational_text(s.self_linking.value()) << "  "
       << (s.criterion ? "0-framed exists" : "obstructed") << "\n";
  }
  return os.str();
}

}  // namespace dihedral
