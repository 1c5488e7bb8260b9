#pragma once

#include "linfty/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace linfty {

/// Truncated formal power series c_0 + c_1 p + ... + c_N p^N with exact
/// rational coefficients. The order N records how far the coefficients are
/// known exactly; operations that lose precision (differentiation, division
/// by a derivative) lower it, and reading past it throws TruncationError.
class Series {
 public:
  explicit Series(std::size_t order = 0);
  explicit Series(std::vector<Rational> coefficients);

  static Series constant(const Rational& c, std::size_t order);
  /// The series p.
  static Series variable(std::size_t order);
  static Series from_strings(const std::vector<std::string>& coefficients);

  std::size_t order() const { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t k) const;
  void set(std::size_t k, const Rational& c);
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  std::vector<std::string> to_strings() const;

  Series truncated(std::size_t order) const;
  bool is_zero() const;

  Series& operator+=(const Series& other);
  Series& operator-=(const Series& other);
  Series& operator*=(const Rational& s);
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(Series a, const Rational& s) { return a *= s; }
  friend Series operator*(const Rational& s, Series a) { return a *= s; }
  Series operator-() const { return Series(*this) *= Rational(-1); }

  /// Same order and coefficients.
  bool operator==(const Series& other) const { return coeffs_ == other.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

/// Agreement of the first order+1 coefficients; both must be known that far.
bool equal_to_order(const Series& a, const Series& b, std::size_t order);

Series derivative(const Series& s);
Series integral(const Series& s, const Rational& constant = 0);
/// Multiplicative inverse; requires a nonzero constant term.
Series inverse(const Series& s);
/// Natural logarithm of a series with constant term 1.
Series ln(const Series& s);
/// ln(1 + s) for a series with zero constant term.
Series ln1p(const Series& s);
/// Exponential of a series with zero constant term.
Series exp(const Series& s);
/// outer(inner(p)); requires inner(0) == 0.
Series compose(const Series& outer, const Series& inner);
/// Compositional inverse R with f(R(p)) == p; requires f(0) == 0, f'(0) != 0.
Series revert(const Series& f);

/// g1' g2 - g1 g2'.
Series wronskian(const Series& g1, const Series& g2);

/// g1 f1 + g2 f2 + W(g1, g2): the one-boson nilpotency residual.
Series nilcheck_one_boson(const Series& f1, const Series& f2, const Series& g1, const Series& g2);

/// f1 = -W(g1, g2) / g1, which with f2 = 0 zeroes the one-boson residual.
Series solve_f1(const Series& g1, const Series& g2);

/// g2 = g1 (ratio_at_zero + int_0^p f1 / g1), which with f2 = 0 zeroes the
/// one-boson residual.
Series solve_g2(const Series& g1, const Series& f1, const Rational& ratio_at_zero = 1);

/// Lambert W to the given order, obtained by inverting W e^W = P term by term.
Series lambert_w_series(std::size_t order);

/// Solution of G'(P)(G(P) + P) = G(P) with G(0) = 1, solved term by term.
Series g_series(std::size_t order);

}  // namespace linfty
