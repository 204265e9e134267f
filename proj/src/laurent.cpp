#include "ordgraph/laurent.hpp"

#include <cctype>
#include <sstream>

namespace ordgraph {

GaussRat GaussRat::inverse() const {
  mpq_class n = norm2();
  if (n == 0) throw LaurentError("division by zero");
  return {re / n, -im / n};
}

namespace {

std::string rat(const mpq_class& q) { return q.get_str(); }

void strip(LaurentScalar::Exps& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

}  // namespace

std::string format(const GaussRat& c) {
  if (c.im == 0) return rat(c.re);
  std::string im = (c.im == 1 ? "" : c.im == -1 ? "-" : rat(c.im)) + "i";
  if (c.re == 0) return im;
  return rat(c.re) + (c.im > 0 ? "+" : "") + im;
}

LaurentScalar::LaurentScalar(const GaussRat& c) {
  if (!c.is_zero()) terms_[{}] = c;
}

LaurentScalar LaurentScalar::monomial(const GaussRat& c, Exps exps) {
  LaurentScalar s;
  strip(exps);
  s.add_term(exps, c);
  return s;
}

LaurentScalar LaurentScalar::variable(std::size_t i, int power) {
  Exps e(i + 1, 0);
  e[i] = power;
  return monomial(GaussRat(1), std::move(e));
}

void LaurentScalar::add_term(const Exps& e, const GaussRat& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

LaurentScalar LaurentScalar::star() const {
  LaurentScalar s;
  for (const auto& [e, c] : terms_) {
    Exps n = e;
    for (auto& x : n) x = -x;
    s.add_term(n, c.conj());
  }
  return s;
}

namespace {

GaussRat power(const GaussRat& z, int k) {
  GaussRat base = k < 0 ? z.inverse() : z;
  GaussRat out(1);
  for (int i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
  return out;
}

}  // namespace

LaurentScalar LaurentScalar::evaluate(const std::map<std::size_t, GaussRat>& point) const {
  for (const auto& [i, z] : point)
    if (z.norm2() != 1) throw LaurentError("evaluation point for z" + std::to_string(i) + " is not of unit modulus");
  LaurentScalar s;
  for (const auto& [e, c] : terms_) {
    Exps rest = e;
    GaussRat coef = c;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      auto it = point.find(i);
      if (it == point.end() || rest[i] == 0) continue;
      coef = coef * power(it->second, rest[i]);
      rest[i] = 0;
    }
    strip(rest);
    s.add_term(rest, coef);
  }
  return s;
}

LaurentScalar operator+(const LaurentScalar& a, const LaurentScalar& b) {
  LaurentScalar s = a;
  for (const auto& [e, c] : b.terms_) s.add_term(e, c);
  return s;
}

LaurentScalar operator-(const LaurentScalar& a) {
  LaurentScalar s;
  for (const auto& [e, c] : a.terms_) s.terms_.emplace(e, -c);
  return s;
}

LaurentScalar operator-(const LaurentScalar& a, const LaurentScalar& b) { return a + (-b); }

LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
  LaurentScalar s;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      LaurentScalar::Exps e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      strip(e);
      s.add_term(e, ca * cb);
    }
  }
  return s;
}

std::string format(const LaurentScalar& s, const std::vector<std::string>& vars) {
  if (s.is_zero()) return "0";
  std::string out;
  auto emit = [&](const mpq_class& q, bool imag, const std::string& mono) {
    if (q == 0) return;
    mpq_class mag = abs(q);
    std::string body;
    if (imag) body = (mag == 1 ? std::string() : rat(mag) + " ") + "i";
    else if (mag != 1 || mono.empty()) body = rat(mag);
    if (!mono.empty()) body += (body.empty() ? "" : "*") + mono;
    if (out.empty()) out = (q < 0 ? "-" : "") + body;
    else out += (q < 0 ? " - " : " + ") + body;
  };
  for (const auto& [e, c] : s.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < vars.size() ? vars[i] : "z" + std::to_string(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    emit(c.re, false, mono);
    emit(c.im, true, mono);
  }
  return out;
}

namespace {

class EntryParser {
 public:
  EntryParser(const std::string& t, const std::vector<std::string>& vars) : t_(t), vars_(vars) {}

  LaurentScalar parse() {
    skip();
    if (pos_ == t_.size()) fail("empty entry");
    LaurentScalar s;
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (pos_ < t_.size() && (t_[pos_] == '+' || t_[pos_] == '-')) {
        sign = t_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      s += LaurentScalar(GaussRat(sign)) * term();
      skip();
      if (pos_ == t_.size()) break;
    }
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& m) const {
    throw LaurentError("bad entry '" + t_ + "' at " + std::to_string(pos_) + ": " + m);
  }

  void skip() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }

  bool ident_char(std::size_t i) const {
    return i < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[i])) || t_[i] == '_');
  }

  // A lone "i" (not the start of a longer identifier).
  bool at_imag_unit() const { return pos_ < t_.size() && t_[pos_] == 'i' && !ident_char(pos_ + 1); }

  mpz_class integer() {
    std::size_t b = pos_;
    while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    if (b == pos_) fail("expected digits");
    return mpz_class(t_.substr(b, pos_ - b));
  }

  LaurentScalar term() {
    skip();
    GaussRat coef(1);
    bool have_coef = false;
    if (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) {
      mpq_class q(integer());
      if (pos_ < t_.size() && t_[pos_] == '/') {
        ++pos_;
        mpz_class d = integer();
        if (d == 0) fail("zero denominator");
        q = mpq_class(q.get_num(), d);
        q.canonicalize();
      }
      std::size_t save = pos_;
      skip();
      if (at_imag_unit()) {
        ++pos_;
        coef = GaussRat(0, q);
      } else {
        pos_ = save;
        coef = GaussRat(q, 0);
      }
      have_coef = true;
    } else if (at_imag_unit()) {
      ++pos_;
      coef = GaussRat(0, 1);
      have_coef = true;
    }
    skip();
    if (have_coef) {
      if (pos_ < t_.size() && t_[pos_] == '*') {
        ++pos_;
        return LaurentScalar(coef) * monomial();
      }
      return LaurentScalar(coef);
    }
    return monomial();
  }

  LaurentScalar monomial() {
    LaurentScalar m(1);
    while (true) {
      skip();
      std::size_t b = pos_;
      while (ident_char(pos_)) ++pos_;
      std::string name = t_.substr(b, pos_ - b);
      std::size_t idx = 0;
      while (idx < vars_.size() && vars_[idx] != name) ++idx;
      if (name.empty() || idx == vars_.size()) fail("unknown variable '" + name + "'");
      int pw = 1;
      skip();
      if (pos_ < t_.size() && t_[pos_] == '^') {
        ++pos_;
        skip();
        int sign = 1;
        if (pos_ < t_.size() && (t_[pos_] == '-' || t_[pos_] == '+')) sign = t_[pos_++] == '-' ? -1 : 1;
        mpz_class e = integer();
        if (!e.fits_sint_p()) fail("exponent too large");
        pw = sign * static_cast<int>(e.get_si());
      }
      m = m * LaurentScalar::variable(idx, pw);
      skip();
      if (pos_ < t_.size() && t_[pos_] == '*') {
        ++pos_;
        continue;
      }
      return m;
    }
  }

  const std::string& t_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentScalar parse_laurent(const std::string& text, const std::vector<std::string>& vars) {
  return EntryParser(text, vars).parse();
}

GaussRat parse_gauss(const std::string& text) {
  LaurentScalar s = parse_laurent(text, {});
  if (s.is_zero()) return GaussRat();
  if (s.terms().size() != 1 || !s.terms().begin()->first.empty()) throw LaurentError("not a constant: '" + text + "'");
  return s.terms().begin()->second;
}

LaurentMatrix LaurentMatrix::identity(std::size_t n) {
  LaurentMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = LaurentScalar(1);
  return m;
}

LaurentMatrix LaurentMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  LaurentMatrix m(n);
  m.at(i, j) = LaurentScalar(1);
  return m;
}

bool LaurentMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

LaurentMatrix LaurentMatrix::adjoint() const {
  LaurentMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m.at(j, i) = at(i, j).star();
  return m;
}

LaurentMatrix LaurentMatrix::evaluate(const std::map<std::size_t, GaussRat>& point) const {
  LaurentMatrix m(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i].evaluate(point);
  return m;
}

namespace {

void same_size(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.size() != b.size())
    throw LaurentError("matrix size mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

}  // namespace

LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
  same_size(a, b);
  LaurentMatrix m(a.n_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = a.a_[i] + b.a_[i];
  return m;
}

LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b) {
  same_size(a, b);
  LaurentMatrix m(a.n_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = a.a_[i] - b.a_[i];
  return m;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  same_size(a, b);
  std::size_t n = a.n_;
  LaurentMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const auto& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b.at(k, j).is_zero()) m.at(i, j) += x * b.at(k, j);
    }
  return m;
}

LaurentMatrix operator*(const LaurentScalar& c, const LaurentMatrix& a) {
  LaurentMatrix m(a.n_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = c * a.a_[i];
  return m;
}

LaurentMatrix star_product(const LaurentMatrix& a, const LaurentMatrix& b) { return a * b; }
LaurentMatrix adjoint(const LaurentMatrix& a) { return a.adjoint(); }
LaurentMatrix evaluate(const LaurentMatrix& a, const std::map<std::size_t, GaussRat>& point) { return a.evaluate(point); }

std::string format(const LaurentMatrix& m, const std::vector<std::string>& vars) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.size(); ++j) os << (j ? ", " : "") << format(m.at(i, j), vars);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace ordgraph
