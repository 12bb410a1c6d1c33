#include "meh/smtlib.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <unordered_map>

namespace meh {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Sexp {
  std::string atom;  // empty for lists
  bool quoted = false;
  std::vector<Sexp> items;
  std::size_t line = 0;
  std::size_t column = 0;

  bool is_list() const { return atom.empty() && !quoted; }
  bool is(std::string_view s) const { return !is_list() && !quoted && atom == s; }
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  // Next top-level expression, or nullopt at end of input.
  std::optional<Sexp> next() {
    skip_blank();
    if (pos_ >= text_.size()) return std::nullopt;
    return read();
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, column_, what); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  Sexp read() {
    Sexp out;
    out.line = line_;
    out.column = column_;
    const char c = text_[pos_];
    if (c == '(') {
      advance();
      for (;;) {
        skip_blank();
        if (pos_ >= text_.size()) throw ParseError(out.line, out.column, "unclosed '('");
        if (text_[pos_] == ')') {
          advance();
          return out;
        }
        out.items.push_back(read());
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '|') {
      advance();
      while (pos_ < text_.size() && text_[pos_] != '|') {
        out.atom += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) throw ParseError(out.line, out.column, "unterminated quoted symbol");
      advance();
      out.quoted = true;
      return out;
    }
    if (c == '"') {
      advance();
      for (;;) {
        if (pos_ >= text_.size()) throw ParseError(out.line, out.column, "unterminated string");
        if (text_[pos_] == '"') {
          advance();
          // "" is an escaped quote inside a string literal.
          if (pos_ < text_.size() && text_[pos_] == '"') {
            advance();
            continue;
          }
          break;
        }
        advance();
      }
      out.atom = "\"\"";
      return out;
    }
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';' || d == '|' ||
          d == '"') {
        break;
      }
      out.atom += d;
      advance();
    }
    return out;
  }
};

[[noreturn]] void fail_at(const Sexp& e, const std::string& what) {
  throw ParseError(e.line, e.column, what);
}

bool is_numeral(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty() || !std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  bool dot = false;
  for (char c : s) {
    if (c == '.') {
      if (dot) return false;
      dot = true;
    } else if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return s.back() != '.';
}

// sum coeffs[k] * var_k + constant, k a declaration index.
struct Linear {
  std::map<std::size_t, Rational> coeffs;
  Rational constant;

  bool is_constant() const { return coeffs.empty(); }

  void add(const Linear& o, const Rational& scale) {
    for (const auto& [k, c] : o.coeffs) {
      Rational& slot = coeffs[k];
      slot += scale * c;
      if (sgn(slot) == 0) coeffs.erase(k);
    }
    constant += scale * o.constant;
  }
  void scale(const Rational& s) {
    if (sgn(s) == 0) {
      coeffs.clear();
    } else {
      for (auto& [k, c] : coeffs) c *= s;
    }
    constant *= s;
  }
};

class Builder {
 public:
  Problem finish() {
    ConstraintSystem sys(declared_);
    for (const PendingRow& r : rows_) {
      Vector coeffs(declared_.size());
      for (const auto& [k, c] : r.coeffs) coeffs[k] = c;
      sys.add_row_user_order(coeffs, r.bound, RowTag{"atom " + std::to_string(r.atom), std::nullopt});
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].partner_next) sys.set_partner(i, i + 1);
    }
    return Problem{logic_, std::move(sys)};
  }

  void command(const Sexp& e) {
    if (!e.is_list() || e.items.empty() || e.items[0].is_list()) fail_at(e, "expected a command");
    const std::string& head = e.items[0].atom;
    if (head == "set-logic") {
      expect_arity(e, 2);
      logic_ = e.items[1].atom;
      if (logic_ != "QF_LIA" && logic_ != "QF_LRA" && logic_ != "QF_LIRA") {
        throw UnsupportedError("logic " + logic_ + " (supported: QF_LIA, QF_LRA, QF_LIRA)");
      }
    } else if (head == "declare-fun") {
      expect_arity(e, 4);
      if (!e.items[2].is_list() || !e.items[2].items.empty()) {
        throw UnsupportedError("declare-fun with arguments (" + e.items[1].atom + ")");
      }
      declare(e.items[1], e.items[3]);
    } else if (head == "declare-const") {
      expect_arity(e, 3);
      declare(e.items[1], e.items[2]);
    } else if (head == "assert") {
      expect_arity(e, 2);
      formula(e.items[1]);
    } else if (head == "set-info" || head == "set-option" || head == "check-sat" || head == "exit" ||
               head == "get-model" || head == "get-info" || head == "get-value") {
      // No effect on the constraint system.
    } else {
      throw UnsupportedError("command " + head);
    }
  }

 private:
  struct PendingRow {
    std::map<std::size_t, Rational> coeffs;
    Rational bound;
    std::size_t atom;
    bool partner_next = false;
  };

  std::string logic_;
  std::vector<VarInfo> declared_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<PendingRow> rows_;
  std::size_t atoms_ = 0;

  static void expect_arity(const Sexp& e, std::size_t n) {
    if (e.items.size() != n) {
      fail_at(e, e.items[0].atom + " expects " + std::to_string(n - 1) + " argument(s)");
    }
  }

  void declare(const Sexp& name, const Sexp& sort) {
    if (name.is_list()) fail_at(name, "expected a symbol");
    VarKind kind;
    if (sort.is("Int")) {
      kind = VarKind::Integer;
    } else if (sort.is("Real")) {
      kind = VarKind::Rational;
    } else {
      throw UnsupportedError("sort " + (sort.is_list() ? std::string("(...)") : sort.atom));
    }
    if (index_.count(name.atom)) fail_at(name, "duplicate declaration of " + name.atom);
    index_.emplace(name.atom, declared_.size());
    declared_.push_back({name.atom, kind});
  }

  void formula(const Sexp& e) {
    if (e.is("true")) return;
    if (e.is("false")) {
      rows_.push_back({{}, Rational(-1), ++atoms_});
      return;
    }
    if (!e.is_list() || e.items.empty() || e.items[0].is_list()) fail_at(e, "expected a formula");
    const std::string& head = e.items[0].atom;
    if (head == "and") {
      for (std::size_t k = 1; k < e.items.size(); ++k) formula(e.items[k]);
      return;
    }
    if (head == "<=" || head == ">=" || head == "=" || head == "<" || head == ">") {
      atom(e, head);
      return;
    }
    throw UnsupportedError("formula " + head);
  }

  // Emits rows for  lhs - rhs  (op)  0.
  void atom(const Sexp& e, const std::string& op) {
    if (e.items.size() != 3) fail_at(e, op + " expects 2 arguments");
    Linear diff = term(e.items[1]);
    diff.add(term(e.items[2]), Rational(-1));
    if (op == ">=" || op == ">") diff.scale(Rational(-1));
    const std::size_t id = ++atoms_;
    // diff.coeffs . x <= -diff.constant
    if (op == "<" || op == ">") {
      Vector cs;
      for (const auto& [k, c] : diff.coeffs) {
        if (declared_[k].kind != VarKind::Integer) {
          throw UnsupportedError("strict inequality over rational variable " + declared_[k].name +
                                 " (would need delta-rationals, not implemented)");
        }
        cs.push_back(c);
      }
      const Rational l(lcm_of_denominators(cs));
      diff.scale(l);
      rows_.push_back({diff.coeffs, Rational(ceil_of(-diff.constant) - 1), id});
      return;
    }
    rows_.push_back({diff.coeffs, -diff.constant, id});
    if (op == "=") {
      rows_.back().partner_next = true;
      Linear neg = diff;
      neg.scale(Rational(-1));
      rows_.push_back({neg.coeffs, -neg.constant, id});
    }
  }

  Linear term(const Sexp& e) {
    Linear out;
    if (!e.is_list()) {
      if (!e.quoted && is_numeral(e.atom)) {
        out.constant = parse_rational(e.atom);
        return out;
      }
      auto it = index_.find(e.atom);
      if (it == index_.end()) fail_at(e, "undeclared symbol " + e.atom);
      out.coeffs[it->second] = 1;
      return out;
    }
    if (e.items.empty() || e.items[0].is_list()) fail_at(e, "expected a term");
    const std::string& head = e.items[0].atom;
    const std::size_t argc = e.items.size() - 1;
    if (head == "+") {
      for (std::size_t k = 1; k < e.items.size(); ++k) out.add(term(e.items[k]), Rational(1));
      return out;
    }
    if (head == "-") {
      if (argc == 0) fail_at(e, "- expects arguments");
      out = term(e.items[1]);
      if (argc == 1) {
        out.scale(Rational(-1));
        return out;
      }
      for (std::size_t k = 2; k < e.items.size(); ++k) out.add(term(e.items[k]), Rational(-1));
      return out;
    }
    if (head == "*") {
      if (argc == 0) fail_at(e, "* expects arguments");
      out = term(e.items[1]);
      for (std::size_t k = 2; k < e.items.size(); ++k) {
        Linear f = term(e.items[k]);
        if (f.is_constant()) {
          out.scale(f.constant);
        } else if (out.is_constant()) {
          f.scale(out.constant);
          out = std::move(f);
        } else {
          throw UnsupportedError("non-linear product");
        }
      }
      return out;
    }
    if (head == "/") {
      if (argc != 2) fail_at(e, "/ expects 2 arguments");
      out = term(e.items[1]);
      const Linear d = term(e.items[2]);
      if (!d.is_constant()) throw UnsupportedError("division by a variable");
      if (sgn(d.constant) == 0) fail_at(e.items[2], "division by zero");
      out.scale(1 / d.constant);
      return out;
    }
    if (head == "to_real") {
      if (argc != 1) fail_at(e, "to_real expects 1 argument");
      return term(e.items[1]);
    }
    throw UnsupportedError("term " + head);
  }
};

bool is_simple_symbol(const std::string& s) {
  static const std::string extra = "~!@$%^&*_-+=<>.?/";
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && extra.find(c) == std::string::npos) return false;
  }
  return !is_numeral(s);
}

std::string symbol(const std::string& s) { return is_simple_symbol(s) ? s : "|" + s + "|"; }

std::string constant(const Rational& q) {
  const Integer num = abs(q.get_num());
  std::string body = q.get_den() == 1 ? num.get_str() : "(/ " + num.get_str() + " " + q.get_den().get_str() + ")";
  return sgn(q) < 0 ? "(- " + body + ")" : body;
}

std::string linear_term(const ConstraintSystem& sys, std::size_t row) {
  std::vector<std::string> parts;
  for (std::size_t col : sys.user_perm()) {
    const Rational& c = sys.A()(row, col);
    if (sgn(c) == 0) continue;
    const std::string name = symbol(sys.vars()[col].name);
    parts.push_back(c == 1 ? name : "(* " + constant(c) + " " + name + ")");
  }
  if (parts.empty()) return "0";
  if (parts.size() == 1) return parts[0];
  std::string out = "(+";
  for (const std::string& p : parts) out += " " + p;
  return out + ")";
}

bool opposite_rows(const ConstraintSystem& sys, std::size_t i, std::size_t k) {
  if (sys.b()[i] != -sys.b()[k]) return false;
  for (std::size_t j = 0; j < sys.num_vars(); ++j) {
    if (sys.A()(i, j) != -sys.A()(k, j)) return false;
  }
  return true;
}

}  // namespace

Problem parse_problem(std::string_view text) {
  Reader reader(text);
  Builder builder;
  while (std::optional<Sexp> e = reader.next()) builder.command(*e);
  return builder.finish();
}

ConstraintSystem parse(std::string_view text) { return parse_problem(text).system; }

Problem parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string emit_smtlib(const ConstraintSystem& sys) {
  std::ostringstream out;
  const char* logic = sys.num_rational() == 0 ? "QF_LIA" : sys.num_integer() == 0 ? "QF_LRA" : "QF_LIRA";
  out << "(set-logic " << logic << ")\n";
  for (std::size_t col : sys.user_perm()) {
    const VarInfo& v = sys.vars()[col];
    out << "(declare-fun " << symbol(v.name) << " () " << (v.kind == VarKind::Integer ? "Int" : "Real")
        << ")\n";
  }
  for (std::size_t i = 0; i < sys.num_rows(); ++i) {
    const std::optional<std::size_t>& p = sys.row_tags()[i].partner;
    if (p && *p == i + 1 && opposite_rows(sys, i, i + 1)) {
      out << "(assert (= " << linear_term(sys, i) << " " << constant(sys.b()[i]) << "))\n";
      ++i;
      continue;
    }
    out << "(assert (<= " << linear_term(sys, i) << " " << constant(sys.b()[i]) << "))\n";
  }
  out << "(check-sat)\n(exit)\n";
  return out.str();
}

}  // namespace meh
