// Trust anchor: nothing here may call into the simplex or the solver.

#include <sstream>

#include "meh/model.hpp"

namespace meh {

namespace {

struct PathRow {
  const Vector* normal;
  Rational bound;
  bool negated;  // -normal^T x <= bound
};

// sum_k y_k * row(row_map[k]) where indices past the system address path rows.
bool farkas_holds(const ConstraintSystem& sys, const std::vector<PathRow>& path,
                  const FarkasCertificate& cert) {
  const std::size_t m = sys.num_rows();
  const std::size_t n = sys.num_vars();
  const std::size_t total = m + path.size();
  const std::size_t len = cert.row_map.empty() ? total : cert.row_map.size();
  if (cert.y.size() != len) throw DimensionMismatch("certificate length does not match the system");
  Vector combo(n);
  Rational rhs;
  for (std::size_t k = 0; k < len; ++k) {
    const Rational& y = cert.y[k];
    if (sgn(y) < 0) return false;
    if (sgn(y) == 0) continue;
    const std::size_t row = cert.row_map.empty() ? k : cert.row_map[k];
    if (row >= total) throw DimensionMismatch("certificate references a missing row");
    if (row < m) {
      auto a = sys.A().row(row);
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(a[j]) != 0) combo[j] += y * a[j];
      }
      rhs += y * sys.b()[row];
    } else {
      const PathRow& p = path[row - m];
      for (std::size_t j = 0; j < n; ++j) {
        const Rational& c = (*p.normal)[j];
        if (sgn(c) == 0) continue;
        if (p.negated) {
          combo[j] -= y * c;
        } else {
          combo[j] += y * c;
        }
      }
      rhs += y * p.bound;
    }
  }
  return is_zero(combo) && sgn(rhs) < 0;
}

}  // namespace

bool check_rational_model(const ConstraintSystem& sys, std::span<const Rational> s) {
  if (s.size() != sys.num_vars()) throw DimensionMismatch("model length does not match the system");
  for (std::size_t i = 0; i < sys.num_rows(); ++i) {
    if (dot(sys.A().row(i), s) > sys.b()[i]) return false;
  }
  return true;
}

bool check_model(const ConstraintSystem& sys, const Model& s) {
  if (s.values.size() != sys.num_vars()) {
    throw DimensionMismatch("model length does not match the system");
  }
  for (std::size_t j = sys.num_rational(); j < sys.num_vars(); ++j) {
    if (!is_integral(s.values[j])) return false;
  }
  return check_rational_model(sys, s.values);
}

bool check_certificate(const ConstraintSystem& sys, const FarkasCertificate& cert) {
  if (cert.row_map.empty() && cert.y.size() != sys.num_rows()) {
    throw DimensionMismatch("certificate length does not match the system");
  }
  if (!cert.row_map.empty() && cert.row_map.size() != cert.y.size()) {
    throw DimensionMismatch("certificate row map does not match its multipliers");
  }
  return farkas_holds(sys, {}, cert);
}

bool check_refutation(const ConstraintSystem& sys, const UnsatCertificate& cert) {
  if (cert.nodes.empty()) return false;
  const std::size_t n = sys.num_vars();
  std::vector<bool> visited(cert.nodes.size(), false);
  std::vector<std::pair<std::size_t, std::vector<PathRow>>> work;
  work.emplace_back(0, std::vector<PathRow>{});
  while (!work.empty()) {
    auto [id, rows] = std::move(work.back());
    work.pop_back();
    if (id >= cert.nodes.size() || visited[id]) return false;
    visited[id] = true;
    const UnsatCertificate::Node& node = cert.nodes[id];
    if (!node.split) {
      try {
        if (!farkas_holds(sys, rows, node.leaf)) return false;
      } catch (const DimensionMismatch&) {
        return false;
      }
      continue;
    }
    const SplitInequality& s = *node.split;
    if (s.normal.size() != n || is_zero(s.normal)) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (sys.is_integer_column(j) ? !is_integral(s.normal[j]) : sgn(s.normal[j]) != 0) {
        return false;
      }
    }
    std::vector<PathRow> low = rows;
    low.push_back(PathRow{&s.normal, Rational(s.bound), false});
    std::vector<PathRow> high = std::move(rows);
    high.push_back(PathRow{&s.normal, Rational(-(s.bound + 1)), true});
    work.emplace_back(node.high, std::move(high));
    work.emplace_back(node.low, std::move(low));
  }
  return true;
}

std::string format_model(const ConstraintSystem& sys, const Model& s) {
  std::ostringstream out;
  for (std::size_t k = 0; k < sys.user_perm().size(); ++k) {
    const std::size_t col = sys.user_perm()[k];
    out << sys.vars()[col].name << " = " << to_string(s.values.at(col)) << '\n';
  }
  return out.str();
}

std::string format_certificate(const ConstraintSystem& sys, const UnsatCertificate& cert) {
  std::ostringstream out;
  if (cert.is_farkas()) {
    const FarkasCertificate c = cert.farkas().compacted();
    for (std::size_t k = 0; k < c.y.size(); ++k) out << c.row_map[k] << ' ' << to_string(c.y[k]) << '\n';
    return out.str();
  }
  const std::size_t m = sys.num_rows();
  auto term_list = [&](const Vector& normal) {
    std::string s;
    for (std::size_t j = 0; j < normal.size(); ++j) {
      if (sgn(normal[j]) == 0) continue;
      if (!s.empty()) s += " + ";
      s += to_string(normal[j]) + "*" + sys.vars()[j].name;
    }
    return s;
  };
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    const std::string indent(2 * depth, ' ');
    const UnsatCertificate::Node& node = cert.nodes.at(id);
    if (node.split) {
      out << indent << "split " << term_list(node.split->normal) << " <= "
          << node.split->bound.get_str() << " | >= " << Integer(node.split->bound + 1).get_str()
          << '\n';
      stack.emplace_back(node.high, depth + 1);
      stack.emplace_back(node.low, depth + 1);
      continue;
    }
    const FarkasCertificate c = node.leaf.compacted();
    out << indent << "leaf";
    for (std::size_t k = 0; k < c.y.size(); ++k) {
      out << ' ';
      if (c.row_map[k] >= m) {
        out << "path" << (c.row_map[k] - m);
      } else {
        out << c.row_map[k];
      }
      out << ':' << to_string(c.y[k]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace meh
