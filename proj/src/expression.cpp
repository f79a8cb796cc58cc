#include "henselium/expression.hpp"

#include <cctype>
#include <optional>
#include <set>

#include "henselium/error.hpp"

namespace henselium {

namespace {

bool is_identifier(std::string_view name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
    return false;
  }
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

bool is_reserved(std::string_view name) { return name == "X" || name == "Y" || name == "O"; }

using Key = std::pair<unsigned, unsigned>;

void add_into(Expression& acc, const Key& key, const Series& value) {
  auto [it, inserted] = acc.try_emplace(key, value);
  if (!inserted) it->second += value;
  if (it->second.is_exact_zero()) acc.erase(it);
}

Expression add(const Expression& a, const Expression& b) {
  Expression out = a;
  for (const auto& [k, v] : b) add_into(out, k, v);
  return out;
}

Expression negate(const Expression& a) {
  Expression out;
  for (const auto& [k, v] : a) out.emplace(k, -v);
  return out;
}

Expression multiply(const Expression& a, const Expression& b) {
  Expression out;
  for (const auto& [ka, va] : a) {
    for (const auto& [kb, vb] : b) {
      add_into(out, {ka.first + kb.first, ka.second + kb.second}, va * vb);
    }
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Session& session, bool allow_x, bool allow_y)
      : text_(text), session_(session), allow_x_(allow_x), allow_y_(allow_y) {}

  Expression parse() {
    Expression e = expr();
    skip_space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& message) const {
    fail(ErrorCode::SyntaxError, message + " at column " + std::to_string(pos_ + 1) + " of '" +
                                     std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  Expression constant(const Coefficient& c) const {
    Expression e;
    if (!c.is_zero()) e.emplace(Key{0, 0}, Series::constant(session_.field, session_.rank(), c));
    return e;
  }

  Expression expr() {
    Expression acc;
    bool negative = accept('-');
    if (!negative) accept('+');
    for (;;) {
      Expression t = term();
      acc = add(acc, negative ? negate(t) : t);
      if (accept('+')) {
        negative = false;
      } else if (accept('-')) {
        negative = true;
      } else {
        return acc;
      }
    }
  }

  Expression term() {
    Expression acc = factor();
    while (accept('*')) acc = multiply(acc, factor());
    return acc;
  }

  std::string digits() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  Coord integer() {
    const bool negative = accept('-');
    const std::string d = digits();
    if (d.size() > 15) error("exponent " + d + " is too large");
    const Coord value = std::stoll(d);
    return negative ? -value : value;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Expression factor() {
    std::optional<std::size_t> variable;
    Expression base = primary(variable);
    if (!accept('^')) return base;
    const Coord k = integer();
    if (variable) {
      const Exponent e = Exponent::unit(session_.rank(), *variable).scaled(k);
      Expression out;
      out.emplace(Key{0, 0}, Series::monomial(session_.field, e));
      return out;
    }
    if (k < 0) error("negative powers apply to session variables only");
    Expression acc = constant(Coefficient::one(session_.field));
    for (Coord i = 0; i < k; ++i) acc = multiply(acc, base);
    return acc;
  }

  Expression primary(std::optional<std::size_t>& variable) {
    skip_space();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class value{mpz_class(digits())};
      if (accept('/')) {
        const mpz_class den{digits()};
        if (den == 0) error("zero denominator");
        value /= den;
      }
      return constant(Coefficient::from_rational(session_.field, value));
    }
    if (accept('(')) {
      Expression inner = expr();
      expect(')');
      return inner;
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) {
      error("unexpected '" + std::string(1, c) + "'");
    }
    const std::size_t start = pos_;
    const std::string name = identifier();
    if (name == "O") {
      if (!accept('(')) error("expected '(' after O");
      return big_o();
    }
    if (name == "X" || name == "Y") {
      if ((name == "X" && !allow_x_) || (name == "Y" && !allow_y_)) {
        pos_ = start;
        error("the indeterminate " + name + " is not allowed here");
      }
      Expression out;
      out.emplace(name == "X" ? Key{1, 0} : Key{0, 1},
                  Series::integer(session_.field, session_.rank(), 1));
      return out;
    }
    for (std::size_t i = 0; i < session_.variables.size(); ++i) {
      if (session_.variables[i] == name) {
        variable = i;
        Expression out;
        out.emplace(Key{0, 0}, Series::monomial(session_.field, Exponent::unit(session_.rank(), i)));
        return out;
      }
    }
    pos_ = start;
    fail(ErrorCode::UnknownVariable, "unknown variable '" + name + "' at column " +
                                         std::to_string(start + 1) + " of '" + std::string(text_) + "'");
  }

  Expression big_o() {
    const Expression inner = expr();
    expect(')');
    const auto it = inner.find(Key{0, 0});
    if (inner.size() != 1 || it == inner.end() || !it->second.is_monomial()) {
      error("O(...) takes a single monomial");
    }
    Expression out;
    out.emplace(Key{0, 0}, Series::zero(session_.field, session_.rank(),
                                        it->second.terms().front().exponent));
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const Session& session_;
  bool allow_x_;
  bool allow_y_;
};

std::string join_signed(const std::vector<std::string>& pieces) {
  std::string out;
  for (const std::string& p : pieces) {
    if (out.empty()) {
      out = p;
    } else if (p.starts_with('-')) {
      out += " - " + p.substr(1);
    } else {
      out += " + " + p;
    }
  }
  return out;
}

std::string format_term(const Term& t, const std::vector<std::string>& variables) {
  const std::string mono = format_monomial(t.exponent, variables);
  const std::string coeff = t.coeff.str();
  if (mono == "1") return coeff;
  if (t.coeff.is_one()) return mono;
  if (coeff == "-1") return "-" + mono;
  return coeff + "*" + mono;
}

}  // namespace

Session Session::make(std::vector<std::string> variables, Field field, std::string_view precision,
                      std::string_view horizon) {
  if (variables.empty()) fail(ErrorCode::InvalidArgument, "a session needs at least one variable");
  std::set<std::string> seen;
  for (const std::string& v : variables) {
    if (!is_identifier(v)) fail(ErrorCode::InvalidArgument, "'" + v + "' is not a variable name");
    if (is_reserved(v)) fail(ErrorCode::InvalidArgument, "'" + v + "' is reserved");
    if (!seen.insert(v).second) fail(ErrorCode::InvalidArgument, "variable '" + v + "' repeated");
  }
  Session s{.variables = std::move(variables), .field = field};
  const Exponent step = Exponent::least_positive(s.rank());
  s.precision = precision.empty() ? step.scaled(64) : s.parse_exponent(precision);
  s.horizon = horizon.empty() ? step.scaled(50) : s.parse_exponent(horizon);
  if (s.precision < s.horizon && !precision.empty() && !horizon.empty()) {
    fail(ErrorCode::InvalidArgument, "precision " + s.precision.str() + " lies below the horizon " +
                                         s.horizon.str());
  }
  if (s.precision < s.horizon) {
    if (precision.empty()) {
      s.precision = s.horizon + step.scaled(14);
    } else {
      s.horizon = s.precision;
    }
  }
  return s;
}

std::vector<std::string> Session::split_variables(std::string_view text) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = text.find(',');
    std::string item(text.substr(0, comma));
    std::erase_if(item, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    out.push_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

Exponent Session::parse_exponent(std::string_view text) const {
  return Exponent::parse(text, rank());
}

Expression parse_expression(std::string_view text, const Session& session, bool allow_x,
                            bool allow_y) {
  return Parser(text, session, allow_x, allow_y).parse();
}

Series parse_series(std::string_view text, const Session& session) {
  const Expression e = parse_expression(text, session, false, false);
  if (e.empty()) return Series(session.field, session.rank());
  return e.begin()->second;
}

ValPolynomial parse_polynomial(std::string_view text, const Session& session) {
  const Expression e = parse_expression(text, session, true, false);
  std::vector<Series> coeffs;
  for (const auto& [key, value] : e) {
    if (coeffs.size() <= key.first) coeffs.resize(key.first + 1, Series(session.field, session.rank()));
    coeffs[key.first] = value;
  }
  return ValPolynomial::from_coefficients(session.field, session.rank(), std::move(coeffs));
}

std::vector<ValPolynomial> parse_tower_polynomial(std::string_view text, const Session& session) {
  const Expression e = parse_expression(text, session, true, true);
  std::vector<std::vector<Series>> grid;
  for (const auto& [key, value] : e) {
    if (grid.size() <= key.first) grid.resize(key.first + 1);
    auto& row = grid[key.first];
    if (row.size() <= key.second) row.resize(key.second + 1, Series(session.field, session.rank()));
    row[key.second] = value;
  }
  std::vector<ValPolynomial> out;
  for (auto& row : grid) {
    out.push_back(ValPolynomial::from_coefficients(session.field, session.rank(), std::move(row)));
  }
  return out;
}

std::string format_monomial(const Exponent& e, const std::vector<std::string>& variables) {
  std::vector<std::string> parts;
  const auto coords = e.coords();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    const std::string& name = i < variables.size() ? variables[i] : "v" + std::to_string(i);
    parts.push_back(coords[i] == 1 ? name : name + "^" + std::to_string(coords[i]));
  }
  if (parts.empty()) return "1";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
  return out;
}

std::string format_series(const Series& x, const std::vector<std::string>& variables) {
  std::vector<std::string> pieces;
  for (const Term& t : x.terms()) pieces.push_back(format_term(t, variables));
  if (!x.is_exact()) pieces.push_back("O(" + format_monomial(x.precision(), variables) + ")");
  if (pieces.empty()) return "0";
  return join_signed(pieces);
}

std::string format_polynomial(const ValPolynomial& f, const std::vector<std::string>& variables) {
  std::vector<std::string> pieces;
  const auto coeffs = f.coefficients();
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const Series& c = coeffs[k];
    if (c.is_exact_zero()) continue;
    const std::string xs = k == 0 ? "" : k == 1 ? "X" : "X^" + std::to_string(k);
    if (c.is_monomial()) {
      const std::string term = format_term(c.terms().front(), variables);
      if (xs.empty()) {
        pieces.push_back(term);
      } else if (term == "1") {
        pieces.push_back(xs);
      } else if (term == "-1") {
        pieces.push_back("-" + xs);
      } else {
        pieces.push_back(term + "*" + xs);
      }
    } else {
      const std::string body = "(" + format_series(c, variables) + ")";
      pieces.push_back(xs.empty() ? body : body + "*" + xs);
    }
  }
  if (pieces.empty()) return "0";
  return join_signed(pieces);
}

}  // namespace henselium
