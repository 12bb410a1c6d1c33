#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "meh/model.hpp"

namespace meh {

/// std::mt19937_64 with hand-written distributions. The engine's output is
/// fixed by the C++ standard but the library distributions are not, so every
/// draw goes through the helpers below to keep corpora reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi] by rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// True with probability p, from the top 53 bits of one draw.
  bool bernoulli(double p);
  /// Fresh generator seeded from this one.
  Rng split() { return Rng(next()); }

 private:
  std::mt19937_64 engine_;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// x -> x+ - x- with x+, x- >= 0. The pair for x is named `x+`, `x-` and keeps
/// x's type; the non-negativity rows follow the original rows.
ConstraintSystem gen_slack(const ConstraintSystem& sys);

/// Each integer variable independently becomes rational with probability p.
ConstraintSystem gen_flip(const ConstraintSystem& sys, double p, std::uint64_t seed);

struct GenParams {
  std::size_t vars = 6;
  std::size_t bounded_dirs = 2;   // k, 1 <= k < vars
  std::size_t unbounded_rows = 3;
  std::int64_t coef = 5;          // coefficient magnitude bound
  double flip = 0.2;
  std::uint64_t seed = 1;
};

/// A satisfiable, partially unbounded system: two-sided bounds around an
/// integer point along k random directions, plus rows that all decrease along
/// one direction orthogonal to those k. Every candidate is classified and
/// solved before it is returned; GenerationError after 100 failed attempts.
ConstraintSystem gen_random_unbounded(const GenParams& params);

}  // namespace meh
