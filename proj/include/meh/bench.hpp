#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace meh {

struct BenchOptions {
  std::size_t jobs = 1;
  std::chrono::milliseconds timeout{10'000};
  bool transforms = true;
};

struct BenchRow {
  std::string file;            // path relative to the bench directory
  std::string verdict;         // sat, unsat, budget or error
  double seconds = 0;
  std::size_t nodes = 0;
  std::string classification;  // empty when the solver did not classify
  std::string error;
};

struct BenchReport {
  std::vector<BenchRow> rows;  // sorted by file

  std::size_t count(const std::string& verdict) const;
  /// `file,verdict,seconds,nodes,classification` with a header line.
  std::string csv() const;
  /// Verdict counts, then solved instances by time with the running count
  /// and cumulative time.
  std::string summary() const;
};

/// Solves every *.smt2 file under `dir` (recursively) on `jobs` worker
/// threads. A file that fails to parse becomes an error row.
BenchReport bench(const std::filesystem::path& dir, const BenchOptions& opt);

}  // namespace meh
