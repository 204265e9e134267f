#include "ordgraph/ordinal.hpp"

#include <cctype>

namespace ordgraph {

Ordinal::Ordinal(unsigned long n) {
  if (n != 0) terms_.push_back(OrdTerm{Ordinal(), mpz_class(n)});
}

Ordinal Ordinal::natural(const mpz_class& n) {
  if (n < 0) throw std::domain_error("negative natural");
  Ordinal r;
  if (n != 0) r.terms_.push_back(OrdTerm{Ordinal(), n});
  return r;
}

Ordinal Ordinal::from_terms(std::vector<OrdTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coef <= 0) throw std::domain_error("coefficient must be positive");
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
      throw std::domain_error("exponents must strictly decrease");
  }
  Ordinal r;
  r.terms_ = std::move(terms);
  return r;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::optional<mpz_class> Ordinal::finite_value() const {
  if (terms_.empty()) return mpz_class(0);
  if (!is_finite()) return std::nullopt;
  return terms_[0].coef;
}

Ordinal Ordinal::leading_exponent() const {
  if (terms_.empty()) return Ordinal();
  return terms_[0].exponent;
}

std::optional<long> Ordinal::leading_level() const {
  if (terms_.empty()) return std::nullopt;
  auto v = terms_[0].exponent.finite_value();
  if (!v || !v->fits_slong_p()) return std::nullopt;
  return v->get_si();
}

std::strong_ordering cmp(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = cmp(x[i].exponent, y[i].exponent);
    if (c != std::strong_ordering::equal) return c;
    int d = ::cmp(x[i].coef, y[i].coef);
    if (d < 0) return std::strong_ordering::less;
    if (d > 0) return std::strong_ordering::greater;
  }
  return x.size() <=> y.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return cmp(a, b) == std::strong_ordering::equal; }
std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) { return cmp(a, b); }

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const auto& bt = b.terms();
  const Ordinal& lead = bt[0].exponent;
  std::vector<OrdTerm> out;
  for (const auto& t : a.terms()) {
    auto c = cmp(t.exponent, lead);
    if (c == std::strong_ordering::greater) {
      out.push_back(t);
    } else {
      if (c == std::strong_ordering::equal) {
        out.push_back(OrdTerm{lead, t.coef + bt[0].coef});
        out.insert(out.end(), bt.begin() + 1, bt.end());
        return Ordinal::from_terms(std::move(out));
      }
      break;
    }
  }
  out.insert(out.end(), bt.begin(), bt.end());
  return Ordinal::from_terms(std::move(out));
}

Ordinal left_sub(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  std::size_t i = 0;
  while (i < x.size() && i < y.size() && x[i].exponent == y[i].exponent && x[i].coef == y[i].coef) ++i;
  if (i == x.size()) return Ordinal::from_terms({y.begin() + static_cast<long>(i), y.end()});
  if (i == y.size()) throw OrdinalUnderflow("left_sub: " + format(a) + " > " + format(b));
  auto c = cmp(x[i].exponent, y[i].exponent);
  if (c == std::strong_ordering::less) return Ordinal::from_terms({y.begin() + static_cast<long>(i), y.end()});
  if (c == std::strong_ordering::equal && x[i].coef < y[i].coef) {
    std::vector<OrdTerm> out{OrdTerm{y[i].exponent, y[i].coef - x[i].coef}};
    out.insert(out.end(), y.begin() + static_cast<long>(i) + 1, y.end());
    return Ordinal::from_terms(std::move(out));
  }
  throw OrdinalUnderflow("left_sub: " + format(a) + " > " + format(b));
}

Ordinal mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  const auto& at = a.terms();
  Ordinal result;
  for (const auto& t : b.terms()) {
    std::vector<OrdTerm> part;
    if (t.exponent.is_zero()) {
      part.push_back(OrdTerm{at[0].exponent, at[0].coef * t.coef});
      part.insert(part.end(), at.begin() + 1, at.end());
    } else {
      part.push_back(OrdTerm{add(at[0].exponent, t.exponent), t.coef});
    }
    result = add(result, Ordinal::from_terms(std::move(part)));
  }
  return result;
}

Ordinal omega_pow(const Ordinal& a) { return Ordinal::from_terms({OrdTerm{a, 1}}); }

Ordinal omega_term(const Ordinal& k, const mpz_class& n) {
  if (n == 0) return Ordinal();
  return Ordinal::from_terms({OrdTerm{k, n}});
}

DivMod divmod_omega(const Ordinal& a, const Ordinal& k) {
  if (a.is_zero()) return DivMod{mpz_class(0), Ordinal()};
  const auto& t = a.terms();
  auto c = cmp(t[0].exponent, k);
  if (c == std::strong_ordering::greater) return DivMod{std::nullopt, Ordinal()};
  if (c == std::strong_ordering::less) return DivMod{mpz_class(0), a};
  return DivMod{t[0].coef, Ordinal::from_terms({t.begin() + 1, t.end()})};
}

const Ordinal& omega() {
  static const Ordinal w = omega_pow(Ordinal(1));
  return w;
}

// ---- notation ----

OrdinalParseError::OrdinalParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Ordinal parse_all() {
    Ordinal v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw OrdinalParseError(msg, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  bool at_digit() {
    skip();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }

  mpz_class nat() {
    if (!at_digit()) fail("expected natural number");
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    return mpz_class(std::string(s_.substr(start, i_ - start)));
  }

  Ordinal expr() {
    Ordinal v = term();
    while (eat('+')) v = add(v, term());
    return v;
  }

  Ordinal term() {
    if (at_digit()) return Ordinal::natural(nat());
    if (!eat('w')) fail("expected term");
    Ordinal exponent(1);
    if (eat('^')) exponent = base();
    mpz_class c = 1;
    if (eat('*')) {
      std::size_t at = (skip(), i_);
      c = nat();
      if (c == 0) throw OrdinalParseError("coefficient 0 not allowed", at);
    }
    return omega_term(exponent, c);
  }

  Ordinal base() {
    if (at_digit()) return Ordinal::natural(nat());
    if (eat('w')) return omega();
    if (eat('(')) {
      Ordinal v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    fail("expected exponent");
  }
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) {
  Parser p(text);
  return p.parse_all();
}

std::string format(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& t : a.terms()) {
    if (!out.empty()) out += "+";
    if (t.exponent.is_zero()) {
      out += t.coef.get_str();
      continue;
    }
    out += "w";
    if (t.exponent != Ordinal(1)) {
      if (t.exponent.is_finite() || t.exponent == omega())
        out += "^" + format(t.exponent);
      else
        out += "^(" + format(t.exponent) + ")";
    }
    if (t.coef != 1) out += "*" + t.coef.get_str();
  }
  return out;
}

}  // namespace ordgraph
