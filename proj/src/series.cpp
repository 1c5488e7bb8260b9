#include "linfty/series.hpp"

#include "linfty/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace linfty {

Series::Series(std::size_t order) : coeffs_(order + 1, Rational(0)) {}

Series::Series(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw std::invalid_argument("series needs at least one coefficient");
}

Series Series::constant(const Rational& c, std::size_t order) {
  Series s(order);
  s.coeffs_[0] = c;
  return s;
}

Series Series::variable(std::size_t order) {
  Series s(order);
  if (order >= 1) s.coeffs_[1] = 1;
  return s;
}

Series Series::from_strings(const std::vector<std::string>& coefficients) {
  std::vector<Rational> c;
  c.reserve(coefficients.size());
  for (const auto& t : coefficients) c.push_back(parse_rational(t));
  return Series(std::move(c));
}

const Rational& Series::operator[](std::size_t k) const {
  if (k >= coeffs_.size())
    throw TruncationError("series coefficient " + std::to_string(k) + " requested beyond order " +
                          std::to_string(order()));
  return coeffs_[k];
}

void Series::set(std::size_t k, const Rational& c) {
  if (k >= coeffs_.size()) throw TruncationError("series coefficient index beyond order");
  coeffs_[k] = c;
}

std::vector<std::string> Series::to_strings() const {
  std::vector<std::string> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(format_rational(c));
  return out;
}

Series Series::truncated(std::size_t order) const {
  if (order > this->order()) throw TruncationError("cannot extend a series beyond its known order");
  return Series(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(order + 1)));
}

bool Series::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

Series& Series::operator+=(const Series& other) {
  coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Series& Series::operator-=(const Series& other) {
  coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

Series& Series::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Series operator+(const Series& a, const Series& b) {
  Series r = a;
  return r += b;
}

Series operator-(const Series& a, const Series& b) {
  Series r = a;
  return r -= b;
}

Series operator*(const Series& a, const Series& b) {
  const std::size_t order = std::min(a.order(), b.order());
  Series r(order);
  for (std::size_t i = 0; i <= order; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= order; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return r;
}

bool equal_to_order(const Series& a, const Series& b, std::size_t order) {
  for (std::size_t k = 0; k <= order; ++k)
    if (a[k] != b[k]) return false;
  return true;
}

Series derivative(const Series& s) {
  if (s.order() == 0) throw TruncationError("derivative of an order-0 series is unknown");
  Series r(s.order() - 1);
  for (std::size_t k = 1; k <= s.order(); ++k) r.set(k - 1, s[k] * Rational(static_cast<long>(k)));
  return r;
}

Series integral(const Series& s, const Rational& constant) {
  Series r(s.order() + 1);
  r.set(0, constant);
  for (std::size_t k = 0; k <= s.order(); ++k) r.set(k + 1, s[k] / Rational(static_cast<long>(k + 1)));
  return r;
}

Series inverse(const Series& s) {
  if (s[0] == 0) throw std::invalid_argument("inverse of a series with zero constant term");
  Series r(s.order());
  const Rational inv0 = 1 / s[0];
  r.set(0, inv0);
  for (std::size_t n = 1; n <= s.order(); ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += s[k] * r[n - k];
    r.set(n, -acc * inv0);
  }
  return r;
}

Series ln(const Series& s) {
  if (s[0] != 1) throw std::invalid_argument("ln expects a series with constant term 1");
  if (s.order() == 0) return Series(0);
  return integral(derivative(s) * inverse(s), 0);
}

Series ln1p(const Series& s) {
  if (s[0] != 0) throw std::invalid_argument("ln1p expects a series with zero constant term");
  return ln(Series::constant(1, s.order()) + s);
}

Series exp(const Series& s) {
  if (s[0] != 0) throw std::invalid_argument("exp expects a series with zero constant term");
  // E' = s' E  =>  n e_n = sum_{k=1}^n k s_k e_{n-k}
  Series e(s.order());
  e.set(0, 1);
  for (std::size_t n = 1; n <= s.order(); ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += Rational(static_cast<long>(k)) * s[k] * e[n - k];
    e.set(n, acc / Rational(static_cast<long>(n)));
  }
  return e;
}

Series compose(const Series& outer, const Series& inner) {
  if (inner[0] != 0) throw std::invalid_argument("compose expects an inner series with zero constant term");
  const std::size_t order = std::min(outer.order(), inner.order());
  Series r = Series::constant(outer[order], order);
  for (std::size_t k = order; k-- > 0;) {
    r = r * inner.truncated(order);
    r.set(0, r[0] + outer[k]);
  }
  return r;
}

Series revert(const Series& f) {
  if (f[0] != 0) throw std::invalid_argument("revert expects f(0) == 0");
  if (f.order() == 0 || f[1] == 0) throw std::invalid_argument("revert expects f'(0) != 0");
  const std::size_t order = f.order();
  Series r(order);
  r.set(1, 1 / f[1]);
  for (std::size_t n = 2; n <= order; ++n) {
    Series partial = compose(f, r);
    r.set(n, -partial[n] / f[1]);
  }
  return r;
}

Series wronskian(const Series& g1, const Series& g2) {
  return derivative(g1) * g2 - g1 * derivative(g2);
}

Series nilcheck_one_boson(const Series& f1, const Series& f2, const Series& g1, const Series& g2) {
  return g1 * f1 + g2 * f2 + wronskian(g1, g2);
}

Series solve_f1(const Series& g1, const Series& g2) {
  if (g1[0] == 0) throw std::invalid_argument("solve_f1 needs g1(0) != 0");
  return -(wronskian(g1, g2) * inverse(g1));
}

Series solve_g2(const Series& g1, const Series& f1, const Rational& ratio_at_zero) {
  if (g1[0] == 0) throw std::invalid_argument("solve_g2 needs g1(0) != 0");
  return g1 * integral(f1 * inverse(g1), ratio_at_zero);
}

Series lambert_w_series(std::size_t order) {
  if (order < 1) throw std::invalid_argument("lambert_w_series needs order >= 1");
  // Unknowns w_n, with E = exp(W) maintained alongside. [P^n](W E) involves
  // w_n only through w_n e_0, so w_n = delta_{n1} - sum_{k<n} w_k e_{n-k}.
  Series w(order);
  Series e(order);
  e.set(0, 1);
  for (std::size_t n = 1; n <= order; ++n) {
    Rational acc = (n == 1) ? Rational(1) : Rational(0);
    for (std::size_t k = 1; k < n; ++k) acc -= w[k] * e[n - k];
    w.set(n, acc);
    Rational en = 0;
    for (std::size_t k = 1; k <= n; ++k) en += Rational(static_cast<long>(k)) * w[k] * e[n - k];
    e.set(n, en / Rational(static_cast<long>(n)));
  }
  return w;
}

Series g_series(std::size_t order) {
  // [P^n] of G'(G + P) - G = 0 determines g_{n+1} from g_0..g_n:
  // (n+1) g_{n+1} g_0 = (1 - n) g_n - sum_{k<n} (k+1) g_{k+1} g_{n-k}.
  Series g(order);
  g.set(0, 1);
  for (std::size_t n = 0; n + 1 <= order; ++n) {
    Rational acc = Rational(1 - static_cast<long>(n)) * g[n];
    for (std::size_t k = 0; k < n; ++k) acc -= Rational(static_cast<long>(k + 1)) * g[k + 1] * g[n - k];
    g.set(n + 1, acc / (Rational(static_cast<long>(n + 1)) * g[0]));
  }
  return g;
}

}  // namespace linfty
