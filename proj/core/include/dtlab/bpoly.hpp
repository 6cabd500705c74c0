#pragma once

// Exact polynomial elements of the commutative algebra C([0,1]).
//
// A BElem is a polynomial with rational coefficients, stored in canonical
// form (no trailing zero coefficients, so the zero polynomial has an empty
// coefficient list).  Nothing in this module rounds.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace dtlab {

using Rational = mpq_class;

/// Parses "p/q" or "p" (optional leading sign) into a canonical rational.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms with the sign on the numerator, or "p" when q = 1.
std::string rational_to_string(const Rational& value);

class BElem {
 public:
  BElem() = default;
  explicit BElem(std::vector<Rational> coeffs);

  static BElem constant(const Rational& value);
  static BElem one() { return constant(1); }
  /// The identity function x on [0,1].
  static BElem identity();
  static BElem monomial(const Rational& coeff, std::size_t power);

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  Rational operator()(const Rational& x) const;
  double evaluate(double x) const;

  /// Composition with x -> 1 - x.
  BElem reflected() const;
  /// Antiderivative vanishing at 0.
  BElem primitive() const;

  BElem& operator+=(const BElem& rhs);
  BElem& operator-=(const BElem& rhs);
  BElem& operator*=(const BElem& rhs);
  BElem& operator*=(const Rational& scalar);

  friend BElem operator+(BElem lhs, const BElem& rhs) { return lhs += rhs; }
  friend BElem operator-(BElem lhs, const BElem& rhs) { return lhs -= rhs; }
  friend BElem operator*(const BElem& lhs, const BElem& rhs);
  friend BElem operator*(BElem lhs, const Rational& rhs) { return lhs *= rhs; }
  friend BElem operator*(const Rational& lhs, BElem rhs) { return rhs *= lhs; }
  BElem operator-() const;

  friend bool operator==(const BElem& lhs, const BElem& rhs) { return lhs.coeffs_ == rhs.coeffs_; }

  /// Human-readable form, e.g. "1/2 - 1/2*x^2".
  std::string to_string() const;
  /// Canonical key: coefficient strings joined by ','.
  std::string key() const;

 private:
  void normalize();

  std::vector<Rational> coeffs_;
};

/// x -> integral of f over [x, 1].
BElem alpha12(const BElem& f);
/// x -> integral of f over [0, x].
BElem alpha21(const BElem& f);
/// Integral of f over [0, 1].
Rational trace(const BElem& f);
/// f(j / (grid_size - 1)) for j = 0..grid_size-1; grid_size must be >= 2.
std::vector<Rational> eval_grid(const BElem& f, int grid_size);
/// max |f| over the same grid as eval_grid.
Rational grid_sup_abs(const BElem& f, int grid_size);

/// JSON array of coefficient strings, lowest degree first.
nlohmann::json to_json(const BElem& f);
BElem belem_from_json(const nlohmann::json& j);

}  // namespace dtlab
