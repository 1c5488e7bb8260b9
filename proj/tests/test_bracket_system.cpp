#include "linfty/bracket_system.hpp"
#include "linfty/errors.hpp"
#include "linfty/examples.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace linfty;

namespace {

std::vector<int> degrees_of(const GradedSpace& space, std::span<const std::size_t> inputs) {
  std::vector<int> d;
  for (auto i : inputs) d.push_back(space.degree(i));
  return d;
}

// Every tuple (with repetition, any order) of length n over dim generators.
void for_each_tuple(std::size_t dim, std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> t(n, 0);
  while (true) {
    f(t);
    std::size_t k = 0;
    while (k < n && ++t[k] == dim) t[k++] = 0;
    if (k == n) return;
  }
}

void check_permutation_rule(const BracketSystem& sys, std::size_t max_n) {
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<Permutation> perms;
    do perms.emplace_back(idx);
    while (std::next_permutation(idx.begin(), idx.end()));
    for_each_tuple(sys.space().dimension(), n, [&](const std::vector<std::size_t>& t) {
      const Element base = sys.eval(t);
      const auto d = degrees_of(sys.space(), t);
      for (const auto& sigma : perms) {
        int sign = koszul_sign(sigma, d);
        if (sys.symmetry() == Symmetry::skew) sign *= perm_sign(sigma);
        const auto moved = permute(sigma, std::span<const std::size_t>(t));
        REQUIRE(sys.eval(moved) == base * Rational(sign));
      }
    });
  }
}

Element gen(const GradedSpace& s, const std::string& name, Rational c = 1) {
  return Element::generator(s.index_of(name), c);
}

}  // namespace

TEST_CASE("evaluation of the first example") {
  auto ex = example1_system();
  const auto& v = ex.v.space();
  const auto& w = ex.w.space();
  CHECK(ex.v.eval({0, 1}) == gen(v, "v1"));
  CHECK(ex.v.eval({1, 0}) == gen(v, "v1", -1));
  CHECK(ex.v.eval({0}) == gen(v, "w"));
  CHECK(ex.v.eval({2, 0}) == gen(v, "w", -1));
  CHECK(ex.w.eval({1, 0}) == gen(w, "theta1", -1));
  CHECK(ex.w.eval({0}) == gen(w, "x"));
  CHECK(ex.w.eval({0, 0}).is_zero());

  std::vector<BasisVector> in{basis_vector(v, 0), basis_vector(v, 1)};
  CHECK(ex.v.eval(std::span<const BasisVector>(in)) == gen(v, "v1"));
  std::vector<BasisVector> foreign{basis_vector(w, 0)};
  CHECK_THROWS_AS(ex.v.eval(std::span<const BasisVector>(foreign)), std::invalid_argument);

  std::vector<std::size_t> too_long(11, 2);
  CHECK_THROWS_AS(ex.v.eval(too_long), TruncationError);
}

TEST_CASE("the degree rule and forced zeros are enforced when setting brackets") {
  auto space = std::make_shared<const GradedSpace>("V", std::vector<Generator>{{"v", 0}, {"w", 1}});
  BracketSystem skew(space, Symmetry::skew);
  CHECK_NOTHROW(skew.set({0}, Element::generator(1)));
  CHECK_THROWS_AS(skew.set({0}, Element::generator(0)), std::invalid_argument);
  CHECK_THROWS_AS(skew.set({0, 0}, Element::generator(0)), std::invalid_argument);  // repeated even input
}

TEST_CASE("degree rule arithmetic") {
  auto space = std::make_shared<const GradedSpace>("V", std::vector<Generator>{{"v", 0}, {"w", 1}});
  BracketSystem skew(space, Symmetry::skew);
  CHECK(skew.bracket_degree(1) == 1);
  CHECK(skew.bracket_degree(3) == -1);
  // l_3(w, w, w) has degree -1 + 3 = 2, which no generator carries.
  CHECK_THROWS_AS(skew.set({1, 1, 1}, Element::generator(1)), std::invalid_argument);
  // l_3(v, w, w) has degree -1 + 2 = 1.
  CHECK_NOTHROW(skew.set({0, 1, 1}, Element::generator(1)));
  BracketSystem sym(std::make_shared<const GradedSpace>("W", std::vector<Generator>{{"t", -1}, {"x", 0}}),
                    Symmetry::symmetric);
  CHECK(sym.bracket_degree(4) == 1);
  CHECK_THROWS_AS(sym.set({0, 0}, Element::generator(0)), std::invalid_argument);  // repeated odd input
  CHECK_NOTHROW(sym.set({0, 1}, Element::generator(1)));
  CHECK_THROWS_AS(sym.set({1, 1}, Element::generator(0)), std::invalid_argument);
}

TEST_CASE("setting a bracket on a permuted key stores the canonical value") {
  auto ex = example1_system();
  BracketSystem sys(ex.v.space_ptr(), Symmetry::skew, 4);
  sys.set({1, 0}, Element::generator(0, -1));
  CHECK(sys.eval({0, 1}) == Element::generator(0));
  sys.set_by_name({"v1", "v2"}, Element());
  CHECK(sys.entry_count() == 0);
}

TEST_CASE("evaluation respects the permutation sign rule up to arity 4") {
  auto ex1 = example1_system(4);
  check_permutation_rule(ex1.v, 4);
  check_permutation_rule(ex1.w, 4);
  auto ex2 = example2_system(2, 2, 2, 4);
  check_permutation_rule(ex2.v, 4);
  check_permutation_rule(ex2.w, 4);
}

TEST_CASE("every stored entry satisfies the degree rule") {
  auto ex1 = example1_system();
  auto ex2 = example2_system();
  for (const BracketSystem* sys : {&ex1.v, &ex1.w, &ex2.v, &ex2.w})
    for (std::size_t n = 1; n <= sys->max_arity(); ++n)
      for (const auto& [key, value] : sys->table(n)) {
        int expected = sys->bracket_degree(n);
        for (auto i : key) expected += sys->space().degree(i);
        CHECK(value.degree(sys->space()) == expected);
      }
}

TEST_CASE("arity-one defect is l1 applied twice") {
  auto ex = example1_system();
  for (std::size_t g = 0; g < 3; ++g) {
    std::vector<std::size_t> in{g};
    CHECK(jacobi_defect(ex.v, in) == ex.v.eval_with_first(ex.v.eval(in), {}));
  }
}

TEST_CASE("the first example satisfies the identities along (v1, v2, w, ..., w)") {
  auto ex = example1_system();
  for (std::size_t n = 3; n <= 8; ++n) {
    std::vector<std::size_t> in{0, 1};
    in.insert(in.end(), n - 2, 2);
    CHECK(jacobi_defect(ex.v, in).is_zero());
  }
}

TEST_CASE("changing C4 breaks arity 4 at (v1, v2, w, w)") {
  auto ex = example1_system();
  BracketSystem sys = ex.v;
  sys.set({1, 2, 2, 2}, Element::generator(2, 1));
  std::vector<std::size_t> in{0, 1, 2, 2};
  CHECK_FALSE(jacobi_defect(sys, in).is_zero());
  auto report = verify_jacobi(sys, 4);
  CHECK_FALSE(report.passed());
  REQUIRE(report.arities.size() == 4);
  CHECK(report.arities[2].passed());
  REQUIRE(report.arities[3].counterexample);
  CHECK(report.arities[3].counterexample->inputs == BracketKey{0, 1, 2, 2});
}

TEST_CASE("zero systems pass") {
  auto space = std::make_shared<const GradedSpace>("V", std::vector<Generator>{{"a", 0}, {"b", 1}, {"c", 2}});
  BracketSystem zero(space, Symmetry::skew, 6);
  CHECK(verify_jacobi(zero, 6).passed());
  BracketSystem zero_w(space, Symmetry::symmetric, 6);
  CHECK(verify_jacobi(zero_w, 6).passed());
}

TEST_CASE("n_max beyond max_arity is a truncation error") {
  auto ex = example1_system(5);
  CHECK_THROWS_AS(verify_jacobi(ex.v, 6), TruncationError);
}

TEST_CASE("suspension signs") {
  CHECK(suspension_sign(std::vector<int>{-1, -1}) == 1);  // (theta1, theta2)
  CHECK(suspension_sign(std::vector<int>{-1}) == 1);
  CHECK(suspension_sign(std::vector<int>{0}) == 1);
  for (int n = 3; n <= 10; ++n) {
    std::vector<int> d(static_cast<std::size_t>(n), 0);
    d[0] = -1;
    // Maps (-1)^{(n-2)(n-3)/2} (n-3)! to (-1)^n (n-3)!.
    CHECK(suspension_sign(d) * minus_one_pow((n - 2) * (n - 3) / 2) == minus_one_pow(n));
  }
}

TEST_CASE("desuspending the first example reproduces its W tables") {
  auto ex = example1_system();
  std::vector<std::string> names{"theta1", "theta2", "x"};
  auto w = desuspend_system(ex.v, names, "W");
  CHECK(w.space() == ex.w.space());
  CHECK(w == ex.w);
  CHECK(w.eval({0, 1}) == Element::generator(0));
  for (std::size_t n = 3; n <= 10; ++n) {
    BracketKey key{1};
    key.insert(key.end(), n - 1, 2);
    const Rational expected = Rational(minus_one_pow(static_cast<long long>(n))) * Rational(factorial(n - 3));
    CHECK(w.eval(key) == Element::generator(2, expected));
  }
  CHECK(suspend_system(w, std::vector<std::string>{"v1", "v2", "w"}, "V") == ex.v);
}

TEST_CASE("desuspending the second example gives (2-n)^(n-2)") {
  auto ex = example2_system(3, 3, 3);
  std::vector<std::string> names;
  for (const auto& g : ex.w.space().generators()) names.push_back(g.name);
  auto w = desuspend_system(ex.v, names, "W");
  CHECK(!first_difference(w, ex.w, 10));
  CHECK(w == ex.w);
  BracketKey key{1, 3, 4, 5};
  CHECK(w.eval(key) == Element::generator(4, 4));  // 4 x2
  CHECK(suspend_system(w, std::nullopt, "V").entry_count() == ex.v.entry_count());
}

TEST_CASE("first_difference names the differing entry") {
  auto ex = example1_system(4);
  BracketSystem other = ex.v;
  other.set({0, 2}, Element::generator(2, 2));
  auto diff = first_difference(ex.v, other, 4);
  REQUIRE(diff);
  CHECK(diff->find("v1, w") != std::string::npos);
  CHECK_FALSE(first_difference(ex.v, ex.v, 4));
}

TEST_CASE("per-arity aggregates along (v1, v2, w, ..., w) in the first example") {
  // Hand-expanded compositions l_{n-p+1} o l_p, before the sign (-1)^{p(n-p)}.
  auto ex = example1_system();
  for (long n = 4; n <= 9; ++n) {
    std::vector<std::size_t> in{0, 1};
    in.insert(in.end(), static_cast<std::size_t>(n - 2), 2);
    auto terms = jacobi_terms(ex.v, in);
    REQUIRE(terms.size() == static_cast<std::size_t>(n + 1));
    for (long p = 1; p <= n; ++p) {
      Rational c = 0;
      if (p == 1) c = -c1_closed(n);
      if (p == 2) c = Rational(n - 2) * c1_closed(n - 1);
      if (p == n - 1) c = Rational(minus_one_pow(n)) * c1_closed(n - 1);
      CHECK(terms[static_cast<std::size_t>(p)] == Element::generator(2, c));
    }
  }
}

TEST_CASE("per-arity aggregates along (v_i, v_j, w, ..., w) in the second example") {
  auto ex = example2_system(3, 3, 3);
  const std::size_t vi = 0, vj = 2;
  const std::size_t wi = 3 + vi, wj = 3 + vj;
  for (long n = 4; n <= 8; ++n) {
    for (const BracketKey& ws : {BracketKey(static_cast<std::size_t>(n - 2), 4),
                                 [&] {
                                   BracketKey k;
                                   for (long t = 0; t < n - 2; ++t) k.push_back(3 + static_cast<std::size_t>(t % 3));
                                   return k;
                                 }()}) {
      std::vector<std::size_t> in{vi, vj};
      in.insert(in.end(), ws.begin(), ws.end());
      auto terms = jacobi_terms(ex.v, in);
      const Element diff = Element::generator(wi) - Element::generator(wj);
      for (long p = 1; p <= n; ++p) {
        Rational c = 0;
        if (p == 1) c = c2_daily(n);
        if (p == 2) c = Rational(-2 * (n - 2)) * c2_daily(n - 1);
        if (p >= 3 && p <= n - 2)
          c = Rational(minus_one_pow(p + 1)) * Rational(binomial(static_cast<unsigned long>(n - 2),
                                                                 static_cast<unsigned long>(p - 1))) *
              c2_daily(n - p + 1) * c2_daily(p);
        CHECK(terms[static_cast<std::size_t>(p)] == diff * c);
      }
    }
  }
}

TEST_CASE("the second example satisfies the identities for dims (3, 3) to arity 5") {
  auto ex = example2_system(3, 3, 3, 5);
  CHECK(verify_jacobi(ex.v, 5).passed());
  CHECK(verify_jacobi(ex.w, 5).passed());
}
