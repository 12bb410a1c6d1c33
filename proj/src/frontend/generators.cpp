#include "meh/generators.hpp"

#include <algorithm>
#include <limits>

#include "meh/analysis.hpp"
#include "meh/mixed_solver.hpp"

namespace meh {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("Rng::uniform: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % range + 1) % range;
  std::uint64_t x;
  do {
    x = next();
  } while (x > limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
}

bool Rng::bernoulli(double p) {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return u < p;
}

namespace {

// Declared variables in user order.
std::vector<VarInfo> declared(const ConstraintSystem& sys) {
  std::vector<VarInfo> out;
  for (std::size_t col : sys.user_perm()) out.push_back(sys.vars()[col]);
  return out;
}

Vector user_row(const ConstraintSystem& sys, std::size_t i) {
  Vector out;
  for (std::size_t col : sys.user_perm()) out.push_back(sys.A()(i, col));
  return out;
}

}  // namespace

ConstraintSystem gen_slack(const ConstraintSystem& sys) {
  std::vector<VarInfo> vars;
  for (const VarInfo& v : declared(sys)) {
    vars.push_back({v.name + "+", v.kind});
    vars.push_back({v.name + "-", v.kind});
  }
  const std::size_t k = sys.num_vars();
  ConstraintSystem out(std::move(vars));
  for (std::size_t i = 0; i < sys.num_rows(); ++i) {
    const Vector a = user_row(sys, i);
    Vector row(2 * k);
    for (std::size_t j = 0; j < k; ++j) {
      row[2 * j] = a[j];
      row[2 * j + 1] = -a[j];
    }
    out.add_row_user_order(row, sys.b()[i], sys.row_tags()[i]);
  }
  for (std::size_t j = 0; j < 2 * k; ++j) {
    Vector row(2 * k);
    row[j] = -1;
    out.add_row_user_order(row, 0, RowTag{"slack " + out.vars()[out.user_perm()[j]].name, std::nullopt});
  }
  return out;
}

ConstraintSystem gen_flip(const ConstraintSystem& sys, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gen_flip: probability outside [0, 1]");
  Rng rng(seed);
  std::vector<VarInfo> vars = declared(sys);
  for (VarInfo& v : vars) {
    if (v.kind == VarKind::Integer && rng.bernoulli(p)) v.kind = VarKind::Rational;
  }
  ConstraintSystem out(std::move(vars));
  for (std::size_t i = 0; i < sys.num_rows(); ++i) {
    out.add_row_user_order(user_row(sys, i), sys.b()[i], sys.row_tags()[i]);
  }
  return out;
}

namespace {

Vector random_vector(Rng& rng, std::size_t n, std::int64_t c) {
  Vector v(n);
  for (Rational& x : v) x = rng.uniform(-c, c);
  return v;
}

std::optional<ConstraintSystem> random_unbounded_attempt(const GenParams& p, Rng& rng) {
  const std::size_t n = p.vars;
  const Vector x0 = random_vector(rng, n, p.coef);

  // Recession direction r with one to three entries +-1.
  Vector r(n);
  std::vector<std::size_t> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = j;
  const std::size_t support = static_cast<std::size_t>(rng.uniform(1, std::min<std::int64_t>(3, static_cast<std::int64_t>(n))));
  for (std::size_t s = 0; s < support; ++s) {
    const std::size_t pick = s + static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n - s - 1)));
    std::swap(cols[s], cols[pick]);
    r[cols[s]] = rng.bernoulli(0.5) ? 1 : -1;
  }
  const Rational rr = dot(r, r);

  std::vector<VarInfo> vars;
  for (std::size_t j = 0; j < n; ++j) {
    vars.push_back({"x" + std::to_string(j + 1),
                    rng.bernoulli(p.flip) ? VarKind::Rational : VarKind::Integer});
  }
  ConstraintSystem sys(std::move(vars));

  for (std::size_t i = 0; i < p.bounded_dirs; ++i) {
    Vector d = random_vector(rng, n, p.coef);
    const Rational dr = dot(d, r);
    for (std::size_t j = 0; j < n; ++j) d[j] = rr * d[j] - dr * r[j];
    d = primitive_integer_vector(d);
    if (is_zero(d)) return std::nullopt;
    const Rational centre = dot(d, x0);
    const Rational hi = centre + rng.uniform(0, p.coef);
    const Rational lo = centre - rng.uniform(0, p.coef);
    const std::size_t up = sys.add_row_user_order(d, hi, RowTag{"bounded", std::nullopt});
    Vector neg = d;
    for (Rational& x : neg) x = -x;
    const std::size_t down = sys.add_row_user_order(neg, -lo, RowTag{"bounded", std::nullopt});
    sys.set_partner(up, down);
  }
  for (std::size_t added = 0; added < p.unbounded_rows;) {
    Vector a = random_vector(rng, n, p.coef);
    const int s = sgn(dot(a, r));
    if (s == 0) continue;
    if (s > 0) {
      for (Rational& x : a) x = -x;
    }
    sys.add_row_user_order(a, dot(a, x0) + rng.uniform(0, p.coef), RowTag{"unbounded", std::nullopt});
    ++added;
  }
  return sys;
}

}  // namespace

ConstraintSystem gen_random_unbounded(const GenParams& params) {
  if (params.bounded_dirs == 0) {
    throw std::invalid_argument("gen_random_unbounded: at least one bounded direction is required");
  }
  if (params.bounded_dirs >= params.vars) {
    throw std::invalid_argument("gen_random_unbounded: bounded directions must be fewer than variables");
  }
  if (params.coef < 1) throw std::invalid_argument("gen_random_unbounded: coefficient bound must be positive");
  if (!(params.flip >= 0.0 && params.flip <= 1.0)) {
    throw std::invalid_argument("gen_random_unbounded: flip probability outside [0, 1]");
  }
  Rng rng(params.seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Rng local = rng.split();
    std::optional<ConstraintSystem> sys = random_unbounded_attempt(params, local);
    if (!sys) continue;
    if (classify(*sys).verdict != Verdict::PartiallyUnbounded) continue;
    SolveOptions opt;
    opt.time_budget = std::chrono::milliseconds(10'000);
    if (!solve(*sys, opt).is_sat()) continue;
    return *sys;
  }
  throw GenerationError("gen_random_unbounded: no valid instance after 100 attempts");
}

}  // namespace meh
