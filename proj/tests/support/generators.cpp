#include "support/generators.hpp"

#include <algorithm>

namespace meh::testing {

Vector random_vector(Rng& rng, std::size_t n, std::int64_t c) {
  Vector v(n);
  for (Rational& x : v) x = rng.uniform(-c, c);
  return v;
}

Vector random_nonzero_vector(Rng& rng, std::size_t n, std::int64_t c) {
  for (;;) {
    Vector v = random_vector(rng, n, c);
    if (!is_zero(v)) return v;
  }
}

Matrix random_matrix(Rng& rng, std::size_t m, std::size_t n, std::int64_t c) {
  Matrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-c, c);
  }
  return a;
}

std::vector<VarInfo> random_vars(Rng& rng, std::size_t n, double p_rational) {
  std::vector<VarInfo> vars;
  for (std::size_t j = 0; j < n; ++j) {
    vars.push_back({"x" + std::to_string(j + 1), rng.bernoulli(p_rational) ? VarKind::Rational : VarKind::Integer});
  }
  return vars;
}

namespace {

Vector negated(Vector v) {
  for (Rational& x : v) x = -x;
  return v;
}

// Direction with one to three entries +-1 on the given columns.
Vector sparse_direction(Rng& rng, std::size_t n, std::vector<std::size_t> cols) {
  Vector r(n);
  const std::size_t support = static_cast<std::size_t>(
      rng.uniform(1, std::min<std::int64_t>(3, static_cast<std::int64_t>(cols.size()))));
  for (std::size_t s = 0; s < support; ++s) {
    const std::size_t pick = s + static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(cols.size() - s - 1)));
    std::swap(cols[s], cols[pick]);
    r[cols[s]] = rng.bernoulli(0.5) ? 1 : -1;
  }
  return r;
}

std::vector<std::size_t> iota(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> out;
  for (std::size_t j = begin; j < end; ++j) out.push_back(j);
  return out;
}

}  // namespace

BoxedInstance bounded_box_instance(Rng& rng, std::size_t n, std::size_t m, std::int64_t coef,
                                   std::int64_t radius, double p_rational) {
  ConstraintSystem sys(random_vars(rng, n, p_rational));
  VarBounds box(n);
  for (std::size_t j = 0; j < n; ++j) {
    sys.add_row(negated(unit_vector(n, j)), radius, RowTag{"box", std::nullopt});
    sys.add_row(unit_vector(n, j), radius, RowTag{"box", std::nullopt});
    box.lower[j] = Rational(-radius);
    box.upper[j] = Rational(radius);
  }
  const Vector centre = random_vector(rng, n, radius);
  for (std::size_t i = 0; i < m; ++i) {
    const Vector a = random_nonzero_vector(rng, n, coef);
    sys.add_row(a, dot(a, centre) + rng.uniform(-coef, coef));
  }
  return {std::move(sys), std::move(box)};
}

BoxedInstance rational_tail_instance(Rng& rng, std::size_t n_int, std::size_t n_rat, std::size_t m,
                                     std::int64_t coef, std::int64_t radius) {
  std::vector<VarInfo> vars;
  for (std::size_t j = 0; j < n_rat; ++j) vars.push_back({"q" + std::to_string(j + 1), VarKind::Rational});
  for (std::size_t j = 0; j < n_int; ++j) vars.push_back({"z" + std::to_string(j + 1), VarKind::Integer});
  const std::size_t n = n_rat + n_int;
  ConstraintSystem sys(std::move(vars));
  VarBounds box(n);
  for (std::size_t j = n_rat; j < n; ++j) {
    sys.add_row(negated(unit_vector(n, j)), radius, RowTag{"box", std::nullopt});
    sys.add_row(unit_vector(n, j), radius, RowTag{"box", std::nullopt});
    box.lower[j] = Rational(-radius);
    box.upper[j] = Rational(radius);
  }
  const Vector r = sparse_direction(rng, n, iota(0, n_rat));
  const Vector centre = random_vector(rng, n, radius);
  for (std::size_t i = 0; i < m; ++i) {
    Vector a = random_nonzero_vector(rng, n, coef);
    if (sgn(dot(a, r)) > 0) {
      for (std::size_t j = 0; j < n_rat; ++j) a[j] = -a[j];
    }
    sys.add_row(a, dot(a, centre) + rng.uniform(-coef, coef));
  }
  return {std::move(sys), std::move(box)};
}

ConstraintSystem absolutely_unbounded_instance(Rng& rng, std::size_t n, std::size_t m, std::int64_t coef,
                                               double p_rational) {
  ConstraintSystem sys(random_vars(rng, n, p_rational));
  const Vector r = random_nonzero_vector(rng, n, 2);
  for (std::size_t added = 0; added < m;) {
    Vector a = random_vector(rng, n, coef);
    const int s = sgn(dot(a, r));
    if (s == 0) continue;
    if (s > 0) a = negated(std::move(a));
    sys.add_row(a, rng.uniform(-coef * coef, coef * coef));
    ++added;
  }
  return sys;
}

ConstraintSystem unsat_slab_instance(Rng& rng, std::size_t n, std::size_t extra, std::int64_t coef) {
  std::vector<VarInfo> vars;
  for (std::size_t j = 0; j < n; ++j) vars.push_back({"x" + std::to_string(j + 1), VarKind::Integer});
  ConstraintSystem sys(std::move(vars));
  const Vector w = primitive_integer_vector(random_nonzero_vector(rng, n, coef));
  const std::int64_t g = rng.uniform(2, std::max<std::int64_t>(2, coef + 1));
  const std::int64_t r1 = rng.uniform(1, g - 1);
  const std::int64_t r2 = rng.uniform(r1, g - 1);
  const Vector x0 = random_vector(rng, n, coef);
  const Rational t = dot(w, x0);
  Vector gw = w;
  for (Rational& x : gw) x *= g;
  sys.add_row(gw, g * t + r2, RowTag{"slab", std::nullopt});
  sys.add_row(negated(gw), -(g * t + r1), RowTag{"slab", std::nullopt});
  sys.set_partner(0, 1);

  Vector point = x0;
  std::size_t j = 0;
  while (sgn(w[j]) == 0) ++j;
  point[j] += make_rational(r1, g) / w[j];
  for (std::size_t i = 0; i < extra; ++i) {
    const Vector a = random_nonzero_vector(rng, n, coef);
    sys.add_row(a, dot(a, point) + rng.uniform(0, coef));
  }
  return sys;
}

namespace {

ConstraintSystem partially_unbounded_instance(Rng& rng, std::size_t n, std::int64_t coef) {
  ConstraintSystem sys(random_vars(rng, n, 0.3));
  const Vector r = sparse_direction(rng, n, iota(0, n));
  const Rational rr = dot(r, r);
  const Vector centre = random_vector(rng, n, coef);
  const std::size_t dirs = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(n - 1)));
  for (std::size_t k = 0; k < dirs; ++k) {
    Vector d = random_vector(rng, n, coef);
    const Rational dr = dot(d, r);
    for (std::size_t j = 0; j < n; ++j) d[j] = rr * d[j] - dr * r[j];
    d = primitive_integer_vector(d);
    if (is_zero(d)) continue;
    const Rational c = dot(d, centre);
    // Occasionally an empty or integer-free window.
    const std::size_t up = sys.add_row(d, c + rng.uniform(-1, coef));
    const std::size_t down = sys.add_row(negated(d), -(c - rng.uniform(-1, coef)));
    sys.set_partner(up, down);
  }
  const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 4));
  for (std::size_t added = 0; added < m;) {
    Vector a = random_vector(rng, n, coef);
    const int s = sgn(dot(a, r));
    if (s == 0) continue;
    if (s > 0) a = negated(std::move(a));
    sys.add_row(a, dot(a, centre) + rng.uniform(-coef, coef));
    ++added;
  }
  return sys;
}

}  // namespace

ConstraintSystem mixed_random_instance(Rng& rng, std::size_t max_vars) {
  const std::size_t n = static_cast<std::size_t>(rng.uniform(2, static_cast<std::int64_t>(max_vars)));
  switch (rng.uniform(0, 3)) {
    case 0: {
      const std::int64_t radius = n <= 6 ? 4 : 2;
      return bounded_box_instance(rng, n, static_cast<std::size_t>(rng.uniform(1, 4)), 5, radius, 0.3).sys;
    }
    case 1:
      return absolutely_unbounded_instance(rng, n, static_cast<std::size_t>(rng.uniform(1, 2 * static_cast<std::int64_t>(n))), 6, 0.3);
    case 2:
      return gen_flip(unsat_slab_instance(rng, n, static_cast<std::size_t>(rng.uniform(0, 3)), 5), 0.2, rng.next());
    default:
      return partially_unbounded_instance(rng, n, 5);
  }
}

}  // namespace meh::testing
