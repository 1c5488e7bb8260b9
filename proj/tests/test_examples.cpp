#include "linfty/examples.hpp"

#include <doctest.h>

#include <array>

using namespace linfty;

namespace {

Integer factorial_of(long n) {
  Integer r = 1;
  for (long k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace

TEST_CASE("Example 1 coefficients") {
  CHECK(c1_closed(3) == 1);
  CHECK(c1_closed(4) == -1);
  CHECK(c1_closed(5) == -2);
  CHECK(c1_closed(6) == 6);
  for (long n = 3; n <= 20; ++n) CHECK(c1_closed(n) == c1_recursive(n));
  CHECK_THROWS_AS(c1_closed(2), std::invalid_argument);
  CHECK_THROWS_AS(c1_recursive(1), std::invalid_argument);
}

TEST_CASE("Example 2 coefficients") {
  CHECK(c2_daily(3) == 1);
  CHECK(c2_daily(4) == -4);
  CHECK(c2_daily(5) == -27);
  CHECK_THROWS_AS(c2_daily(2), std::invalid_argument);
  const std::array<long, 6> b{1, 1, -1, 4, -27, 256};
  for (long m = 0; m < 6; ++m) CHECK(b_closed(m) == b[static_cast<std::size_t>(m)]);
  CHECK_THROWS_AS(b_closed(-1), std::invalid_argument);
}

TEST_CASE("coefficient sequences and rescaling") {
  auto c = coeff_sequence(CoeffKind::example1_closed, 6);
  CHECK(c.values.size() == 4);
  CHECK(c.values.begin()->first == 3);
  auto bseq = coeff_sequence(CoeffKind::example2_B, 4);
  CHECK(bseq.values.size() == 5);
  CHECK(normalize_scaling(bseq).values == bseq.values);

  CoeffSequence scaled{CoeffKind::example2_B, {{0, 2}, {1, 3}, {2, 5}, {3, 7}}};
  auto normal = normalize_scaling(scaled);
  CHECK(normal.values.at(0) == 1);
  CHECK(normal.values.at(1) == 3);
  CHECK(normal.values.at(2) == 10);
  CHECK(normal.values.at(3) == 28);

  CoeffSequence no_constant{CoeffKind::example2_B, {{1, 1}}};
  CHECK_THROWS_AS(normalize_scaling(no_constant), std::invalid_argument);
  CoeffSequence zero_constant{CoeffKind::example2_B, {{0, 0}, {1, 1}}};
  CHECK_THROWS_AS(normalize_scaling(zero_constant), std::invalid_argument);
}

TEST_CASE("Example 1 in every formulation") {
  auto ex = example1_system(8, 12);
  const auto& w = ex.w.space();
  CHECK(ex.v.space().dimension() == 3);
  CHECK(w.dimension() == 3);
  const std::array<std::size_t, 1> t1{0};
  CHECK(ex.w.eval(t1) == Element::generator(w.index_of("x")));
  REQUIRE(ex.delta.has_value());
  CHECK(ex.delta->g(1, 0).taylor_coefficient({2}) == -1);
  CHECK(ex.delta->g(1, 0).taylor_coefficient({3}) == 1);
  CHECK(ex.delta->g(0, 0).taylor_coefficient({1}) == 1);
  CHECK(ex.delta->f(0).taylor_coefficient({0}) == -1);
  CHECK(ex.delta->f(1).is_zero());
}

TEST_CASE("Example 2 in every formulation") {
  auto ex = example2_system(3, 3, 3, 5, 8);
  CHECK_FALSE(ex.delta.has_value());
  const auto& v = ex.v.space();
  const std::array<std::size_t, 3> l3{0, 3, 4};
  CHECK(ex.v.eval(l3) == Element::generator(v.index_of("w1")));
  const std::array<std::size_t, 4> l4{1, 3, 3, 5};
  CHECK(ex.w.eval(l4) == Element::generator(ex.w.space().index_of("x2"), 4));

  auto with_delta = example2_system(2, 3, 3, 4, 8);
  REQUIRE(with_delta.delta.has_value());
  CHECK(with_delta.delta->g(0, 0).coefficient({0, 0, 0}) == 1);
  CHECK(with_delta.delta->g(1, 1).coefficient({0, 0, 0}) == 1);
  CHECK(with_delta.delta->g(0, 1).coefficient({0, 0, 0}) == 0);
  CHECK(with_delta.delta->g(0, 1).coefficient({0, 1, 0}) == 1);

  CHECK_THROWS_AS(example2_system(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(example2_system(0, 2), std::invalid_argument);
}

TEST_CASE("V brackets, W brackets and generating functions agree for 3 <= n <= 12") {
  auto ex1 = example1_system(12, 12);
  auto g2 = *ex1.delta;
  auto G = g_series(12);
  for (long n = 3; n <= 12; ++n) {
    const auto k = static_cast<unsigned>(n - 1);
    const Rational w1 = desuspended_coefficient(n, c1_closed(n));
    CHECK(w1 == Rational(factorial_of(n - 3)) * Rational(n % 2 ? -1 : 1));
    CHECK(w1 == g2.g(1, 0).taylor_coefficient({k}));

    const Rational w2 = desuspended_coefficient(n, c2_daily(n));
    CHECK(w2 == Rational(ipow(Integer(2 - n), static_cast<unsigned long>(n - 2))));
    CHECK(w2 == b_closed(n - 1));
    CHECK(w2 == G[k] * Rational(factorial_of(n - 1)));
  }
}
