// Batch analysis of a census file with a small worker pool. Reports are
// emitted in input order regardless of which worker finishes first.
#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dihedral/errors.hpp"
#include "dihedral/io.hpp"
#include "dihedral/report.hpp"

namespace dihedral {

/// The file could not be read at all.
class InputFileError : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFileError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw InputFileError("error reading " + path);
  return ss.str();
}

/// Never throws for a bad record: failures become error reports.
inline Report analyze_isolated(const KnotRecord& rec, const AnalyzeOptions& options) {
  try {
    return analyze(rec, options);
  } catch (const std::exception& e) {
    Report r;
    r.name = rec.name;
    r.source = rec.source;
    r.error_kind = "analysis-error";
    r.error = e.what();
    return r;
  }
}

/// Analyzes every record with up to `jobs` threads and hands each report to
/// `sink` in input order.
inline void scan_records(const std::vector<KnotRecord>& records, const AnalyzeOptions& options,
                         std::size_t jobs, const std::function<void(const Report&)>& sink) {
  const std::size_t total = records.size();
  if (total == 0) return;
  jobs = std::clamp<std::size_t>(jobs, 1, total);
  if (jobs == 1) {
    for (const KnotRecord& rec : records) sink(analyze_isolated(rec, options));
    return;
  }
  std::vector<std::optional<Report>> done(total);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      Report r = analyze_isolated(records[i], options);
      {
        std::lock_guard<std::mutex> lock(mu);
        done[i] = std::move(r);
      }
      ready.notify_all();
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(work);
  for (std::size_t i = 0; i < total; ++i) {
    std::optional<Report> r;
    {
      std::unique_lock<std::mutex> lock(mu);
      ready.wait(lock, [&] { return done[i].has_value(); });
      r = std::move(done[i]);
      done[i].reset();
    }
    sink(*r);
  }
}

inline void scan(const std::string& path, const AnalyzeOptions& options, std::size_t jobs,
                 const std::function<void(const Report&)>& sink) {
  scan_records(read_records(read_file(path), path), options, jobs, sink);
}

}  // namespace dihedral
