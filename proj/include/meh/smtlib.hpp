#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "meh/model.hpp"

namespace meh {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Input that is well-formed SMT-LIB but outside the linear conjunctive
/// subset. The message names the construct.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Problem {
  std::string logic;  // QF_LIA, QF_LRA or QF_LIRA; empty without set-logic
  ConstraintSystem system;
};

/// Reads declare-fun/declare-const (Int, Real) and assert over linear atoms
/// <=, >=, =, <, > joined by `and`. Each atom becomes one row (two rows,
/// marked as partners, for =) labelled "atom k", k counting atoms from 1.
/// Strict atoms are tightened by one on the scaled integer form and are
/// rejected when a rational variable occurs in them.
Problem parse_problem(std::string_view text);
ConstraintSystem parse(std::string_view text);
Problem parse_file(const std::filesystem::path& path);

/// One assert per row; partner rows that are exact opposites are written as
/// one equality. parse(emit_smtlib(s)) reproduces A, b and the variables of
/// s, and the partner links of those equality pairs.
std::string emit_smtlib(const ConstraintSystem& sys);

}  // namespace meh
