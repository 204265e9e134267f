#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace ordgraph {

struct OrdTerm;

// Ordinal below epsilon_0 in hereditary Cantor normal form.
class Ordinal {
 public:
  Ordinal() = default;
  Ordinal(unsigned long n);  // NOLINT(google-explicit-constructor)
  static Ordinal natural(const mpz_class& n);
  static Ordinal from_terms(std::vector<OrdTerm> terms);

  const std::vector<OrdTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  // Value when finite.
  std::optional<mpz_class> finite_value() const;
  // Exponent of the leading term; zero for 0.
  Ordinal leading_exponent() const;
  // Finite exponent of the leading term when that exponent is finite and small.
  std::optional<long> leading_level() const;

  friend bool operator==(const Ordinal& a, const Ordinal& b);
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<OrdTerm> terms_;
};

struct OrdTerm {
  Ordinal exponent;
  mpz_class coef;
};

class OrdinalParseError : public std::runtime_error {
 public:
  OrdinalParseError(const std::string& msg, std::size_t pos);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class OrdinalUnderflow : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

Ordinal parse_ordinal(std::string_view text);
std::string format(const Ordinal& a);

std::strong_ordering cmp(const Ordinal& a, const Ordinal& b);
Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal mul(const Ordinal& a, const Ordinal& b);
Ordinal omega_pow(const Ordinal& a);
// omega^k * n
Ordinal omega_term(const Ordinal& k, const mpz_class& n);
// The unique x with a + x = b; throws OrdinalUnderflow when a > b.
Ordinal left_sub(const Ordinal& a, const Ordinal& b);

struct DivMod {
  std::optional<mpz_class> quotient;  // empty on overflow
  Ordinal remainder;
  bool overflow() const { return !quotient.has_value(); }
};

// For a < omega^(k+1): a = omega^k * n + r with r < omega^k.
DivMod divmod_omega(const Ordinal& a, const Ordinal& k);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }
inline Ordinal operator*(const Ordinal& a, const Ordinal& b) { return mul(a, b); }

const Ordinal& omega();

}  // namespace ordgraph
