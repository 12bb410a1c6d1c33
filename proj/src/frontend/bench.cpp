#include "meh/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

#include "meh/mixed_solver.hpp"
#include "meh/smtlib.hpp"

namespace meh {

namespace {

BenchRow run_one(const std::filesystem::path& dir, const std::filesystem::path& file,
                 const BenchOptions& opt) {
  BenchRow row;
  row.file = std::filesystem::relative(file, dir).generic_string();
  const auto start = std::chrono::steady_clock::now();
  try {
    const Problem p = parse_file(file);
    SolveOptions so;
    so.transforms_enabled = opt.transforms;
    so.time_budget = opt.timeout;
    const SolveResult r = solve(p.system, so);
    row.verdict = r.is_sat() ? "sat" : r.is_unsat() ? "unsat" : "budget";
    row.nodes = r.stats.nodes;
    if (r.stats.verdict) row.classification = to_string(*r.stats.verdict);
  } catch (const std::exception& e) {
    row.verdict = "error";
    row.error = e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string seconds_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

}  // namespace

std::size_t BenchReport::count(const std::string& verdict) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [&](const BenchRow& r) { return r.verdict == verdict; }));
}

std::string BenchReport::csv() const {
  std::ostringstream out;
  out << "file,verdict,seconds,nodes,classification\n";
  for (const BenchRow& r : rows) {
    out << r.file << ',' << r.verdict << ',' << seconds_text(r.seconds) << ',' << r.nodes << ','
        << r.classification << '\n';
  }
  return out.str();
}

std::string BenchReport::summary() const {
  std::ostringstream out;
  out << "instances " << rows.size() << "\n";
  for (const char* v : {"sat", "unsat", "budget", "error"}) out << v << ' ' << count(v) << "\n";
  for (const BenchRow& r : rows) {
    if (r.verdict == "error") out << "error " << r.file << ": " << r.error << "\n";
  }
  std::vector<double> times;
  for (const BenchRow& r : rows) {
    if (r.verdict == "sat" || r.verdict == "unsat") times.push_back(r.seconds);
  }
  std::sort(times.begin(), times.end());
  out << "solved,seconds,cumulative\n";
  double total = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    total += times[k];
    out << k + 1 << ',' << seconds_text(times[k]) << ',' << seconds_text(total) << "\n";
  }
  return out.str();
}

BenchReport bench(const std::filesystem::path& dir, const BenchOptions& opt) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::invalid_argument("bench: not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".smt2") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  BenchReport report;
  report.rows.resize(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < files.size(); k = next++) report.rows[k] = run_one(dir, files[k], opt);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, files.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return report;
}

}  // namespace meh
