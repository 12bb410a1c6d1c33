#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "meh/model.hpp"
#include "meh/normal_form.hpp"

namespace meh {

ConstraintSystem::ConstraintSystem(std::vector<VarInfo> declared) {
  std::unordered_set<std::string> seen;
  for (const VarInfo& v : declared) {
    if (!seen.insert(v.name).second) {
      throw std::invalid_argument("duplicate variable name `" + v.name + "`");
    }
  }
  user_perm_.resize(declared.size());
  for (std::size_t k = 0; k < declared.size(); ++k) {
    if (declared[k].kind == VarKind::Rational) {
      user_perm_[k] = vars_.size();
      vars_.push_back(declared[k]);
    }
  }
  n_rational_ = vars_.size();
  for (std::size_t k = 0; k < declared.size(); ++k) {
    if (declared[k].kind == VarKind::Integer) {
      user_perm_[k] = vars_.size();
      vars_.push_back(declared[k]);
    }
  }
  a_ = Matrix(0, vars_.size());
}

std::size_t ConstraintSystem::add_row(std::span<const Rational> coeffs, const Rational& bound,
                                      RowTag tag) {
  if (coeffs.size() != vars_.size()) throw DimensionMismatch("add_row: wrong number of coefficients");
  a_.append_row(coeffs);
  b_.push_back(bound);
  row_tags_.push_back(std::move(tag));
  return b_.size() - 1;
}

std::size_t ConstraintSystem::add_row_user_order(std::span<const Rational> coeffs,
                                                 const Rational& bound, RowTag tag) {
  if (coeffs.size() != vars_.size()) throw DimensionMismatch("add_row: wrong number of coefficients");
  Vector internal(vars_.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) internal[user_perm_[k]] = coeffs[k];
  return add_row(internal, bound, std::move(tag));
}

void ConstraintSystem::pop_row() {
  if (b_.empty()) throw std::logic_error("pop_row on an empty system");
  a_.erase_last_row();
  b_.pop_back();
  row_tags_.pop_back();
}

void ConstraintSystem::set_partner(std::size_t row, std::size_t partner) {
  row_tags_.at(row).partner = partner;
  row_tags_.at(partner).partner = row;
}

ConstraintSystem ConstraintSystem::empty_copy() const {
  ConstraintSystem out;
  out.a_ = Matrix(0, vars_.size());
  out.vars_ = vars_;
  out.user_perm_ = user_perm_;
  out.n_rational_ = n_rational_;
  return out;
}

ConstraintSystem ConstraintSystem::subsystem(std::span<const std::size_t> indices) const {
  ConstraintSystem out = empty_copy();
  for (std::size_t i : indices) {
    RowTag tag = row_tags_.at(i);
    tag.partner.reset();
    out.add_row(a_.row(i), b_[i], std::move(tag));
  }
  return out;
}

FarkasCertificate FarkasCertificate::compacted() const {
  std::vector<std::pair<std::size_t, Rational>> entries;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (sgn(y[k]) == 0) continue;
    entries.emplace_back(row_map.empty() ? k : row_map.at(k), y[k]);
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  FarkasCertificate out;
  for (auto& [row, value] : entries) {
    if (!out.row_map.empty() && out.row_map.back() == row) {
      out.y.back() += value;
    } else {
      out.row_map.push_back(row);
      out.y.push_back(value);
    }
  }
  return out;
}

UnsatCertificate UnsatCertificate::from_farkas(FarkasCertificate cert) {
  UnsatCertificate out;
  out.nodes.push_back(Node{std::nullopt, 0, 0, std::move(cert)});
  return out;
}

std::size_t UnsatCertificate::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return !n.split; }));
}

std::variant<Normalized, TriviallyUnsat> normalize(const ConstraintSystem& sys) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < sys.num_rows(); ++i) {
    if (!sys.A().is_zero_row(i)) {
      keep.push_back(i);
    } else if (sgn(sys.b()[i]) < 0) {
      return TriviallyUnsat{FarkasCertificate{{Rational(1)}, {i}}};
    }
  }
  return Normalized{sys.subsystem(keep), keep};
}

ConstraintSystem apply_column_transform(const ConstraintSystem& sys, const Matrix& v) {
  if (!is_mctm(v, sys.num_rational(), sys.num_integer())) throw MctmViolation();
  std::vector<VarInfo> fresh;
  for (std::size_t j = 0; j < sys.num_vars(); ++j) {
    fresh.push_back({"y" + std::to_string(j + 1), sys.vars()[j].kind});
  }
  ConstraintSystem out(std::move(fresh));
  const Matrix av = sys.A() * v;
  for (std::size_t i = 0; i < sys.num_rows(); ++i) out.add_row(av.row(i), sys.b()[i], sys.row_tags()[i]);
  return out;
}

Model convert_model(const Matrix& v, const Model& t) { return Model{v * t.values}; }

}  // namespace meh
