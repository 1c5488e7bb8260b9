#include "linfty/errors.hpp"
#include "linfty/series.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace linfty;

namespace {

constexpr std::size_t N = 32;

Series p(std::size_t order = N) { return Series::variable(order); }
Series one(std::size_t order = N) { return Series::constant(1, order); }

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

Series random_series(std::mt19937& rng, std::size_t order, bool unit_constant) {
  Series s(order);
  for (std::size_t k = 0; k <= order; ++k) s.set(k, random_rational(rng));
  if (unit_constant) {
    Rational c = random_rational(rng);
    s.set(0, c == 0 ? Rational(1) : c);
  }
  return s;
}

}  // namespace

TEST_CASE("construction and access") {
  auto s = Series::from_strings({"1", "-1/2", "3"});
  CHECK(s.order() == 2);
  CHECK(s[1] == Rational(-1, 2));
  CHECK_THROWS_AS(s[3], TruncationError);
  CHECK(s.to_strings() == std::vector<std::string>{"1", "-1/2", "3"});
  CHECK_THROWS_AS(Series::from_strings({"1/0"}), std::invalid_argument);
  CHECK(s.truncated(1) == Series::from_strings({"1", "-1/2"}));
}

TEST_CASE("ring operations") {
  auto a = one() + p();
  auto b = one() - p();
  auto prod = a * b;
  CHECK(prod[0] == 1);
  CHECK(prod[1] == 0);
  CHECK(prod[2] == -1);
  CHECK((a - a).is_zero());
  CHECK((a * Rational(3))[1] == 3);
}

TEST_CASE("precision tracking") {
  CHECK(derivative(p(10)).order() == 9);
  CHECK(integral(p(10)).order() == 11);
  CHECK((p(10) + p(5)).order() == 5);
  CHECK(equal_to_order(p(10), p(5), 5));
}

TEST_CASE("inverse, ln1p and exp") {
  auto inv = inverse(one() + p());
  for (std::size_t n = 0; n <= N; ++n) CHECK(inv[n] == Rational(n % 2 ? -1 : 1));
  CHECK(exp(ln1p(p())) == one() + p());
  CHECK(ln(one() + p()) == ln1p(p()));
  CHECK(ln1p(p())[3] == Rational(1, 3));
  CHECK_THROWS_AS(inverse(p()), std::invalid_argument);
  CHECK_THROWS_AS(ln(p()), std::invalid_argument);
  CHECK_THROWS_AS(exp(one()), std::invalid_argument);
}

TEST_CASE("integral and derivative") {
  std::mt19937 rng(7);
  auto f = random_series(rng, 12, false);
  CHECK(derivative(integral(f, 0)) == f);
  CHECK(integral(f, 5)[0] == 5);
}

TEST_CASE("composition and reversion") {
  // exp(ln(1 + p)) via composition with the exponential series.
  Series e(N);
  Rational fact = 1;
  for (std::size_t k = 0; k <= N; ++k) {
    if (k > 0) fact *= Rational(static_cast<long>(k));
    e.set(k, 1 / fact);
  }
  CHECK(compose(e, ln1p(p())) == one() + p());
  CHECK_THROWS_AS(compose(e, one()), std::invalid_argument);
  auto f = p() + p() * p();
  CHECK(compose(f, revert(f)) == p());
}

TEST_CASE("wronskian") {
  auto g1 = one() + p();
  auto g2 = g1 * (one() - ln1p(p()));
  CHECK(wronskian(g1, g1).is_zero());
  CHECK(wronskian(g1, g2) == (one() + p()).truncated(N - 1));
  CHECK(wronskian(one(), p()) == Series::constant(-1, N - 1));
}

TEST_CASE("one-boson nilpotency residual") {
  auto g1 = one(N + 1) + p(N + 1);
  auto g2 = g1 * (one(N + 1) - ln1p(p(N + 1)));
  auto f1 = Series::constant(-1, N + 1);
  auto f2 = Series(N + 1);
  auto r = nilcheck_one_boson(f1, f2, g1, g2);
  CHECK(r.order() == N);
  CHECK(r.is_zero());
  CHECK(nilcheck_one_boson(Series(N), Series(N), Series(N), Series(N)).is_zero());
  auto bad = nilcheck_one_boson(Series::constant(-1, N), Series(N), one() + p(), one());
  CHECK(bad == (Rational(-1) * p()).truncated(N - 1));
}

TEST_CASE("special-case solvers") {
  auto g1 = one() + p();
  auto g2 = g1 * (one() - ln1p(p()));
  auto f1 = solve_f1(g1, g2);
  CHECK(f1 == Series::constant(-1, N - 1));
  CHECK(solve_f1(g1, g1).is_zero());
  CHECK(solve_f1(one(), p()) == Series::constant(1, N - 1));
  CHECK_THROWS_AS(solve_f1(p(), one()), std::invalid_argument);

  CHECK(solve_g2(g1, Series::constant(-1, N), 1) == g2.truncated(solve_g2(g1, Series::constant(-1, N), 1).order()));
  CHECK(solve_g2(g1, Series(N), Rational(3)) == (g1 * Rational(3)).truncated(N));
  CHECK_THROWS_AS(solve_g2(p(), one()), std::invalid_argument);
}

TEST_CASE("solver outputs zero the residual on random specs") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t order = 1 + static_cast<std::size_t>(trial % 8);
    auto g1 = random_series(rng, order, true);
    auto g2 = random_series(rng, order, false);
    auto f1 = solve_f1(g1, g2);
    CHECK(nilcheck_one_boson(f1, Series(f1.order()), g1, g2).is_zero());
    auto h1 = random_series(rng, order, false);
    auto g2b = solve_g2(g1, h1, Rational(trial % 3));
    CHECK(nilcheck_one_boson(h1, Series(order), g1, g2b).is_zero());
  }
}

TEST_CASE("Lambert W series") {
  auto w = lambert_w_series(20);
  CHECK(w.order() == 20);
  CHECK(w[0] == 0);
  CHECK(w[1] == 1);
  CHECK(w[2] == -1);
  CHECK(w[3] == Rational(3, 2));
  Rational fact = 1;
  for (long n = 1; n <= 20; ++n) {
    fact *= Rational(n);
    CHECK(w[static_cast<std::size_t>(n)] * fact == Rational(ipow(Integer(-n), static_cast<unsigned long>(n - 1))));
  }
  CHECK(w * exp(w) == Series::variable(20));
}

TEST_CASE("G series from its differential equation") {
  auto g = g_series(20);
  const std::vector<long> b{1, 1, -1, 4, -27};
  Rational fact = 1;
  for (long n = 0; n <= 20; ++n) {
    if (n > 0) fact *= Rational(n);
    const Rational expected = n == 0 ? Rational(1) : Rational(ipow(Integer(1 - n), static_cast<unsigned long>(n - 1)));
    CHECK(g[static_cast<std::size_t>(n)] * fact == expected);
    if (n < 5) CHECK(expected == b[static_cast<std::size_t>(n)]);
  }
  auto w = lambert_w_series(20);
  CHECK(g == exp(w));
  CHECK(w * g == Series::variable(20));
  CHECK(g * ln(g) == Series::variable(20));
  auto P = Series::variable(20);
  CHECK((derivative(g) * (g + P).truncated(19) - g.truncated(19)).is_zero());
}

TEST_CASE("ratio of consecutive Lambert W coefficients approaches e") {
  auto w = lambert_w_series(41);
  const Rational q = w[41] / w[40];
  const double ratio = std::fabs(q.get_d());
  CHECK(std::fabs(ratio - std::exp(1.0)) / std::exp(1.0) < 0.05);
}
