#include "meh/simplex.hpp"

#include <stdexcept>

namespace meh {

Simplex::Simplex(std::size_t num_structural) : n_(num_structural), vars_(num_structural) {}

bool Simplex::below_lower(std::size_t v) const {
  const Var& x = vars_[v];
  return x.lower && x.value < x.lower->value;
}

bool Simplex::above_upper(std::size_t v) const {
  const Var& x = vars_[v];
  return x.upper && x.value > x.upper->value;
}

void Simplex::update_nonbasic(std::size_t k, const Rational& value) {
  const Rational delta = value - vars_[k].value;
  if (sgn(delta) == 0) return;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational& a = rows_[r][k];
    if (sgn(a) != 0) vars_[basic_[r]].value += a * delta;
  }
  vars_[k].value = value;
}

void Simplex::pivot(std::size_t row, std::size_t entering) {
  const std::size_t leaving = basic_[row];
  Vector& pr = rows_[row];
  const Rational a = pr[entering];
  const Rational inv = 1 / a;
  for (Rational& x : pr) {
    if (sgn(x) != 0) x = -x * inv;
  }
  pr[entering] = 0;
  pr[leaving] = inv;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (r == row) continue;
    Vector& other = rows_[r];
    if (sgn(other[entering]) == 0) continue;
    const Rational c = other[entering];
    other[entering] = 0;
    for (std::size_t j = 0; j < pr.size(); ++j) {
      if (sgn(pr[j]) != 0) other[j] += c * pr[j];
    }
  }
  basic_[row] = entering;
  vars_[entering].basic_row = static_cast<std::ptrdiff_t>(row);
  vars_[leaving].basic_row = -1;
  ++pivots_;
}

void Simplex::pivot_and_update(std::size_t row, std::size_t entering, const Rational& value) {
  const std::size_t leaving = basic_[row];
  const Rational theta = (value - vars_[leaving].value) / rows_[row][entering];
  vars_[leaving].value = value;
  vars_[entering].value += theta;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (r == row) continue;
    const Rational& a = rows_[r][entering];
    if (sgn(a) != 0) vars_[basic_[r]].value += a * theta;
  }
  pivot(row, entering);
}

void Simplex::push_row(std::span<const Rational> a, const Rational& b) {
  if (a.size() != n_) throw DimensionMismatch("push_row: wrong number of coefficients");
  const std::size_t slack = vars_.size();
  for (Vector& r : rows_) r.emplace_back(0);
  Vector row(slack + 1);
  Rational value;
  for (std::size_t j = 0; j < n_; ++j) {
    if (sgn(a[j]) == 0) continue;
    value += a[j] * vars_[j].value;
    if (vars_[j].basic_row < 0) {
      row[j] += a[j];
    } else {
      const Vector& def = rows_[static_cast<std::size_t>(vars_[j].basic_row)];
      for (std::size_t k = 0; k < def.size(); ++k) {
        if (sgn(def[k]) != 0) row[k] += a[j] * def[k];
      }
    }
  }
  Var v;
  v.upper = Bound{b, Reason{Reason::Kind::Row, num_rows()}};
  v.value = value;
  v.basic_row = static_cast<std::ptrdiff_t>(rows_.size());
  vars_.push_back(std::move(v));
  rows_.push_back(std::move(row));
  basic_.push_back(slack);
}

void Simplex::pop_row() {
  if (num_rows() == 0) throw std::logic_error("pop_row on an empty simplex");
  const std::size_t slack = vars_.size() - 1;
  std::optional<std::size_t> left;
  if (vars_[slack].basic_row < 0) {
    std::size_t best = rows_.size();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (sgn(rows_[r][slack]) == 0) continue;
      if (best == rows_.size() || basic_[r] < basic_[best]) best = r;
    }
    if (best == rows_.size()) throw std::logic_error("pop_row: slack column vanished");
    left = basic_[best];
    pivot(best, slack);
  }
  const std::size_t row = static_cast<std::size_t>(vars_[slack].basic_row);
  rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(row));
  basic_.erase(basic_.begin() + static_cast<std::ptrdiff_t>(row));
  for (std::size_t r = row; r < rows_.size(); ++r) {
    vars_[basic_[r]].basic_row = static_cast<std::ptrdiff_t>(r);
  }
  for (Vector& r : rows_) r.pop_back();
  vars_.pop_back();
  if (left) {
    if (below_lower(*left)) update_nonbasic(*left, vars_[*left].lower->value);
    if (above_upper(*left)) update_nonbasic(*left, vars_[*left].upper->value);
  }
}

void Simplex::push_bound_scope() { scopes_.push_back(trail_.size()); }

void Simplex::pop_bound_scope() {
  if (scopes_.empty()) throw std::logic_error("pop_bound_scope without a matching push");
  const std::size_t mark = scopes_.back();
  scopes_.pop_back();
  while (trail_.size() > mark) {
    TrailEntry e = std::move(trail_.back());
    trail_.pop_back();
    Var& v = vars_[e.var];
    (e.upper ? v.upper : v.lower) = std::move(e.previous);
    if (v.basic_row < 0) {
      if (below_lower(e.var)) update_nonbasic(e.var, v.lower->value);
      if (above_upper(e.var)) update_nonbasic(e.var, v.upper->value);
    }
  }
}

void Simplex::assign_bound(std::size_t v, bool upper, std::optional<Bound> bound) {
  Var& x = vars_[v];
  std::optional<Bound>& slot = upper ? x.upper : x.lower;
  trail_.push_back(TrailEntry{v, upper, slot});
  slot = std::move(bound);
  if (x.basic_row >= 0) return;
  // Keep non-basic values inside their bounds unless the bounds crossed.
  if (x.lower && x.upper && x.lower->value > x.upper->value) return;
  if (below_lower(v)) update_nonbasic(v, x.lower->value);
  if (above_upper(v)) update_nonbasic(v, x.upper->value);
}

void Simplex::set_lower(std::size_t j, const Rational& value, std::size_t tag) {
  if (j >= n_) throw std::out_of_range("set_lower: not a structural variable");
  const Var& x = vars_[j];
  if (x.lower && x.lower->value >= value) return;
  assign_bound(j, false, Bound{value, Reason{Reason::Kind::Bound, tag}});
}

void Simplex::set_upper(std::size_t j, const Rational& value, std::size_t tag) {
  if (j >= n_) throw std::out_of_range("set_upper: not a structural variable");
  const Var& x = vars_[j];
  if (x.upper && x.upper->value <= value) return;
  assign_bound(j, true, Bound{value, Reason{Reason::Kind::Bound, tag}});
}

std::optional<LpInfeasible> Simplex::crossed_bounds() const {
  for (std::size_t j = 0; j < n_; ++j) {
    const Var& x = vars_[j];
    if (x.lower && x.upper && x.lower->value > x.upper->value) {
      return LpInfeasible{{{x.upper->reason, true, Rational(1)},
                           {x.lower->reason, false, Rational(1)}}};
    }
  }
  return std::nullopt;
}

Explanation Simplex::row_explanation(std::size_t row, bool raise) const {
  const Var& b = vars_[basic_[row]];
  Explanation why;
  why.push_back(raise ? ExplanationTerm{b.lower->reason, false, Rational(1)}
                      : ExplanationTerm{b.upper->reason, true, Rational(1)});
  const Vector& r = rows_[row];
  for (std::size_t k = 0; k < r.size(); ++k) {
    const int s = sgn(r[k]);
    if (s == 0) continue;
    const Var& x = vars_[k];
    // raise: the row's maximum sits at upper bounds for a > 0, lower for a < 0.
    const bool use_upper = (s > 0) == raise;
    const Bound& bound = use_upper ? *x.upper : *x.lower;
    why.push_back({bound.reason, use_upper, s > 0 ? r[k] : Rational(-r[k])});
  }
  return why;
}

CheckOutcome Simplex::check() {
  if (auto crossed = crossed_bounds()) return *crossed;
  for (;;) {
    std::size_t row = rows_.size();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t b = basic_[r];
      if ((below_lower(b) || above_upper(b)) && (row == rows_.size() || b < basic_[row])) row = r;
    }
    if (row == rows_.size()) return LpFeasible{};
    const std::size_t b = basic_[row];
    const bool raise = below_lower(b);
    const Vector& r = rows_[row];
    std::size_t entering = vars_.size();
    for (std::size_t k = 0; k < r.size(); ++k) {
      const int s = sgn(r[k]);
      if (s == 0) continue;
      const Var& x = vars_[k];
      const bool increase = (s > 0) == raise;
      const bool can = increase ? (!x.upper || x.value < x.upper->value)
                                : (!x.lower || x.value > x.lower->value);
      if (can) {
        entering = k;
        break;
      }
    }
    if (entering == vars_.size()) return LpInfeasible{row_explanation(row, raise)};
    const Rational target = raise ? vars_[b].lower->value : vars_[b].upper->value;
    pivot_and_update(row, entering, target);
  }
}

Vector Simplex::point() const {
  Vector p(n_);
  for (std::size_t j = 0; j < n_; ++j) p[j] = vars_[j].value;
  return p;
}

Vector Simplex::objective_row(std::span<const Rational> c) const {
  Vector d(vars_.size());
  for (std::size_t j = 0; j < n_; ++j) {
    if (sgn(c[j]) == 0) continue;
    if (vars_[j].basic_row < 0) {
      d[j] += c[j];
    } else {
      const Vector& def = rows_[static_cast<std::size_t>(vars_[j].basic_row)];
      for (std::size_t k = 0; k < def.size(); ++k) {
        if (sgn(def[k]) != 0) d[k] += c[j] * def[k];
      }
    }
  }
  return d;
}

LpOutcome Simplex::optimize(std::span<const Rational> c, Sense sense) {
  if (c.size() != n_) throw DimensionMismatch("optimize: objective length");
  Vector cc(c.begin(), c.end());
  if (sense == Sense::Min) {
    for (Rational& x : cc) x = -x;
  }
  if (auto out = check(); std::holds_alternative<LpInfeasible>(out)) {
    return std::get<LpInfeasible>(std::move(out));
  }
  for (;;) {
    const Vector d = objective_row(cc);
    std::size_t k = vars_.size();
    int dir = 0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      const int s = sgn(d[j]);
      if (s == 0) continue;
      const Var& x = vars_[j];
      const bool can = s > 0 ? (!x.upper || x.value < x.upper->value)
                             : (!x.lower || x.value > x.lower->value);
      if (can) {
        k = j;
        dir = s;
        break;
      }
    }
    if (k == vars_.size()) {
      LpOptimal opt;
      opt.point = point();
      for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(cc[j]) != 0) opt.value += cc[j] * vars_[j].value;
      }
      for (std::size_t j = 0; j < d.size(); ++j) {
        const int s = sgn(d[j]);
        if (s > 0) opt.proof.push_back({vars_[j].upper->reason, true, d[j]});
        if (s < 0) opt.proof.push_back({vars_[j].lower->reason, false, Rational(-d[j])});
      }
      if (sense == Sense::Min) opt.value = -opt.value;
      return opt;
    }

    // Ratio test. A bound flip of the entering variable wins ties.
    const Var& xk = vars_[k];
    std::optional<Rational> best;
    std::size_t best_row = rows_.size();
    if (dir > 0 && xk.upper) best = xk.upper->value - xk.value;
    if (dir < 0 && xk.lower) best = xk.value - xk.lower->value;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const int s = sgn(rows_[r][k]) * dir;
      if (s == 0) continue;
      const Var& b = vars_[basic_[r]];
      std::optional<Rational> limit;
      if (s > 0 && b.upper) limit = (b.upper->value - b.value) / abs(rows_[r][k]);
      if (s < 0 && b.lower) limit = (b.value - b.lower->value) / abs(rows_[r][k]);
      if (!limit) continue;
      if (!best || *limit < *best ||
          (*limit == *best && best_row != rows_.size() && basic_[r] < basic_[best_row])) {
        best = *limit;
        best_row = r;
      }
    }
    if (!best) {
      Vector ray(n_);
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == k) {
          ray[j] = dir;
        } else if (vars_[j].basic_row >= 0) {
          ray[j] = rows_[static_cast<std::size_t>(vars_[j].basic_row)][k] * dir;
        }
      }
      return LpUnbounded{primitive_integer_vector(ray)};
    }
    if (best_row == rows_.size()) {
      update_nonbasic(k, dir > 0 ? xk.upper->value : xk.lower->value);
    } else {
      const Var& b = vars_[basic_[best_row]];
      const int s = sgn(rows_[best_row][k]) * dir;
      const Rational target = s > 0 ? b.upper->value : b.lower->value;
      pivot_and_update(best_row, k, target);
    }
  }
}

Vector explanation_multipliers(const Explanation& why, std::size_t num_rows, std::size_t num_tags) {
  Vector y(num_rows + num_tags);
  for (const ExplanationTerm& t : why) {
    const std::size_t at = t.reason.kind == Reason::Kind::Row ? t.reason.index : num_rows + t.reason.index;
    if (at >= y.size()) throw std::out_of_range("explanation refers to an unknown constraint");
    y[at] += t.multiplier;
  }
  return y;
}

namespace {

Simplex load(const ConstraintSystem& sys) {
  Simplex s(sys.num_vars());
  for (std::size_t i = 0; i < sys.num_rows(); ++i) s.push_row(sys.A().row(i), sys.b()[i]);
  return s;
}

Infeasible verified_certificate(const ConstraintSystem& sys, const Explanation& why) {
  FarkasCertificate cert{explanation_multipliers(why, sys.num_rows(), 0), {}};
  if (!check_certificate(sys, cert)) throw std::logic_error("simplex produced an invalid certificate");
  return Infeasible{std::move(cert)};
}

}  // namespace

FeasibilityResult check_feasible(const ConstraintSystem& sys) {
  Simplex s = load(sys);
  CheckOutcome out = s.check();
  if (auto* bad = std::get_if<LpInfeasible>(&out)) return verified_certificate(sys, bad->why);
  Vector p = s.point();
  if (!check_rational_model(sys, p)) throw std::logic_error("simplex produced an infeasible point");
  return Feasible{std::move(p)};
}

LpSession::LpSession(const ConstraintSystem& sys) : sys_(sys), simplex_(load(sys)) {}

OptOutcome LpSession::optimize(std::span<const Rational> h, Sense sense) {
  LpOutcome out = simplex_.optimize(h, sense);
  if (auto* bad = std::get_if<LpInfeasible>(&out)) return verified_certificate(sys_, bad->why);
  const int s = sense == Sense::Max ? 1 : -1;
  if (auto* ray = std::get_if<LpUnbounded>(&out)) {
    const Vector ar = sys_.A() * ray->ray;
    for (const Rational& x : ar) {
      if (sgn(x) > 0) throw std::logic_error("simplex ray leaves the recession cone");
    }
    if (sgn(dot(h, ray->ray)) * s <= 0) throw std::logic_error("simplex ray does not improve");
    return UnboundedDirection{std::move(ray->ray)};
  }
  auto& opt = std::get<LpOptimal>(out);
  Optimal result{opt.value, std::move(opt.point), explanation_multipliers(opt.proof, sys_.num_rows(), 0)};
  const Vector combo = row_times(result.y, sys_.A());
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (combo[j] != s * h[j]) throw std::logic_error("simplex optimality proof does not match");
  }
  if (dot(result.y, sys_.b()) != s * result.value || dot(h, result.point) != result.value ||
      !check_rational_model(sys_, result.point)) {
    throw std::logic_error("simplex optimality proof does not match");
  }
  return result;
}

OptOutcome optimize(const ConstraintSystem& sys, std::span<const Rational> h, Sense sense) {
  LpSession session(sys);
  return session.optimize(h, sense);
}

}  // namespace meh
