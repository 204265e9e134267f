#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ordgraph {

// a + b i with a, b rational.
struct GaussRat {
  mpq_class re, im;

  GaussRat() = default;
  GaussRat(long n) : re(n), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat conj() const { return {re, -im}; }
  mpq_class norm2() const { return re * re + im * im; }
  GaussRat inverse() const;

  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

std::string format(const GaussRat& c);
GaussRat parse_gauss(const std::string& text);

class LaurentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Finite sum of c * z_0^e0 * z_1^e1 ...; exponent vectors carry no trailing zeros.
class LaurentScalar {
 public:
  using Exps = std::vector<int>;

  LaurentScalar() = default;
  LaurentScalar(long c) : LaurentScalar(GaussRat(c)) {}  // NOLINT(google-explicit-constructor)
  LaurentScalar(const GaussRat& c);                      // NOLINT(google-explicit-constructor)
  static LaurentScalar monomial(const GaussRat& c, Exps exps);
  static LaurentScalar variable(std::size_t i, int power = 1);

  const std::map<Exps, GaussRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Conjugate coefficients, negate exponents (z* = z^-1 on the circle).
  LaurentScalar star() const;
  // Substitute values for some variables; the rest stay symbolic.
  LaurentScalar evaluate(const std::map<std::size_t, GaussRat>& point) const;

  friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) { return a.terms_ == b.terms_; }
  friend LaurentScalar operator+(const LaurentScalar& a, const LaurentScalar& b);
  friend LaurentScalar operator-(const LaurentScalar& a, const LaurentScalar& b);
  friend LaurentScalar operator-(const LaurentScalar& a);
  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b);
  LaurentScalar& operator+=(const LaurentScalar& b) { return *this = *this + b; }

 private:
  void add_term(const Exps& e, const GaussRat& c);
  std::map<Exps, GaussRat> terms_;
};

std::string format(const LaurentScalar& s, const std::vector<std::string>& vars);
// Grammar: sum of terms "c", "c*z0^k", "z0^k", "c*z0*z1^-2"; c is "a", "a/b", "ai", "a/b i", "i".
LaurentScalar parse_laurent(const std::string& text, const std::vector<std::string>& vars);

class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  explicit LaurentMatrix(std::size_t n) : n_(n), a_(n * n) {}
  static LaurentMatrix identity(std::size_t n);
  // n x n with a single 1 at (i, j).
  static LaurentMatrix unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t size() const { return n_; }
  LaurentScalar& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const LaurentScalar& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  bool is_zero() const;

  LaurentMatrix adjoint() const;
  LaurentMatrix evaluate(const std::map<std::size_t, GaussRat>& point) const;

  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }
  friend LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b);
  friend LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b);
  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  friend LaurentMatrix operator*(const LaurentScalar& c, const LaurentMatrix& a);

 private:
  std::size_t n_ = 0;
  std::vector<LaurentScalar> a_;
};

LaurentMatrix star_product(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix adjoint(const LaurentMatrix& a);
LaurentMatrix evaluate(const LaurentMatrix& a, const std::map<std::size_t, GaussRat>& point);

// "[[a, b], [c, d]]" with entries formatted as in the representation files.
std::string format(const LaurentMatrix& m, const std::vector<std::string>& vars);

}  // namespace ordgraph
