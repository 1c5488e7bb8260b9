#include "linfty/examples.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace linfty {

namespace {

void require_c_index(long n) {
  if (n < 3) throw std::invalid_argument("C_n is defined for n >= 3");
}

std::vector<std::string> numbered(const std::string& stem, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

SpacePtr make_space(std::string id, const std::vector<std::string>& even, int even_degree,
                    const std::vector<std::string>& odd, int odd_degree) {
  std::vector<Generator> gens;
  for (const auto& n : even) gens.push_back(Generator{n, even_degree});
  for (const auto& n : odd) gens.push_back(Generator{n, odd_degree});
  return std::make_shared<const GradedSpace>(std::move(id), std::move(gens));
}

// Every multiset of `size` indices from [first, first + count), sorted.
void for_each_multiset(std::size_t first, std::size_t count, std::size_t size,
                       const std::function<void(const BracketKey&)>& visit) {
  for_each_canonical_tuple(count, size, [&](const BracketKey& k) {
    BracketKey shifted;
    for (auto i : k) shifted.push_back(first + i);
    visit(shifted);
  });
}

}  // namespace

Series example1_g2(std::size_t order) {
  auto one_plus_p = Series::constant(1, order) + Series::variable(order);
  return one_plus_p * (Series::constant(1, order) - ln(one_plus_p));
}

ExampleSystems example1_system(std::size_t max_arity, std::size_t order) {
  auto v_space = make_space("V", {"v1", "v2"}, 0, {"w"}, 1);
  auto w_space = make_w_space(1);
  const std::size_t v1 = 0, v2 = 1, w = 2;
  const std::size_t t1 = 0, t2 = 1, x = 2;

  BracketSystem sys_v(v_space, Symmetry::skew, max_arity);
  sys_v.set({v1}, Element::generator(w));
  sys_v.set({v2}, Element::generator(w));
  if (max_arity >= 2) {
    sys_v.set({v1, v2}, Element::generator(v1));
    sys_v.set({v1, w}, Element::generator(w));
  }
  for (std::size_t n = 3; n <= max_arity; ++n) {
    BracketKey key{v2};
    key.insert(key.end(), n - 1, w);
    sys_v.set(key, Element::generator(w, c1_closed(static_cast<long>(n))));
  }

  BracketSystem sys_w(w_space, Symmetry::symmetric, max_arity);
  sys_w.set({t1}, Element::generator(x));
  sys_w.set({t2}, Element::generator(x));
  if (max_arity >= 2) {
    sys_w.set({t1, t2}, Element::generator(t1));
    sys_w.set({t1, x}, Element::generator(x));
  }
  for (std::size_t n = 3; n <= max_arity; ++n) {
    BracketKey key{t2};
    key.insert(key.end(), n - 1, x);
    Rational c = Rational(factorial(n - 3)) * Rational(minus_one_pow(static_cast<long long>(n)));
    sys_w.set(key, Element::generator(x, c));
  }

  auto one_plus_p = Series::constant(1, order) + Series::variable(order);
  auto delta = DeltaSpec::one_boson(Series::constant(-1, order), Series(order), one_plus_p, example1_g2(order));
  return ExampleSystems{std::move(sys_v), std::move(sys_w), std::move(delta)};
}

ExampleSystems example2_system(std::size_t dim0, std::size_t dim1, std::size_t bosons, std::size_t max_arity,
                               std::size_t order) {
  if (dim0 == 0) throw std::invalid_argument("example 2 needs dim(V_0) >= 1");
  if (dim1 < dim0) throw std::invalid_argument("example 2 needs dim(V_1) >= dim(V_0)");
  auto v_space = make_space("V", numbered("v", dim0), 0, numbered("w", dim1), 1);
  auto w_names = boson_names(dim1);
  auto w_space = make_space("W", numbered("theta", dim0), -1, w_names, 0);

  BracketSystem sys_v(v_space, Symmetry::skew, max_arity);
  BracketSystem sys_w(w_space, Symmetry::symmetric, max_arity);
  for (std::size_t i = 0; i < dim0; ++i) {
    const std::size_t wi = dim0 + i;
    sys_v.set({i}, Element::generator(wi));
    sys_w.set({i}, Element::generator(wi));
    if (max_arity < 2) continue;
    for (std::size_t j = 0; j < dim1; ++j) {
      const std::size_t wj = dim0 + j;
      Element sum = Element::generator(wi) + Element::generator(wj);
      sys_v.set({i, wj}, sum);
      sys_w.set({i, wj}, sum);
    }
    for (std::size_t n = 3; n <= max_arity; ++n) {
      const long nl = static_cast<long>(n);
      const Rational c_v = c2_daily(nl);
      const Rational c_w(ipow(Integer(2 - nl), static_cast<unsigned long>(n - 2)));
      for_each_multiset(dim0, dim1, n - 1, [&](const BracketKey& ws) {
        BracketKey key{i};
        key.insert(key.end(), ws.begin(), ws.end());
        sys_v.set(key, Element::generator(wi, c_v));
        sys_w.set(key, Element::generator(wi, c_w));
      });
    }
  }

  std::optional<DeltaSpec> delta;
  if (dim0 == fermion_count) delta = DeltaSpec::structural(g_series(order), bosons);
  return ExampleSystems{std::move(sys_v), std::move(sys_w), std::move(delta)};
}

Rational c1_closed(long n) {
  require_c_index(n);
  return Rational(factorial(static_cast<unsigned long>(n - 3))) * Rational(minus_one_pow((n - 2) * (n - 3) / 2));
}

Rational c1_recursive(long n) {
  require_c_index(n);
  Rational c = c1_closed(3);
  for (long k = 4; k <= n; ++k) c = Rational(minus_one_pow(k - 1) * (k - 3)) * c;
  return c;
}

Rational c2_daily(long n) {
  require_c_index(n);
  std::vector<Rational> c(static_cast<std::size_t>(n + 1));
  c[3] = 1;
  for (long k = 4; k <= n; ++k) {
    Rational acc = Rational(-2 * (k - 2)) * c[k - 1];
    for (long p = 3; p <= k - 2; ++p)
      acc += Rational(minus_one_pow(p * k + 1)) * Rational(binomial(k - 2, p - 1)) * c[k - p + 1] * c[p];
    c[k] = Rational(minus_one_pow(k)) * acc;
  }
  return c[n];
}

Rational b_closed(long m) {
  if (m < 0) throw std::invalid_argument("B_M is defined for M >= 0");
  if (m == 0) return Rational(1);  // (1)^{-1}
  return Rational(ipow(Integer(1 - m), static_cast<unsigned long>(m - 1)));
}

Rational desuspended_coefficient(long n, const Rational& c) {
  if (n < 1) throw std::invalid_argument("arity must be positive");
  std::vector<int> degrees(static_cast<std::size_t>(n), 0);
  degrees[0] = -1;
  return Rational(suspension_sign(degrees)) * c;
}

CoeffSequence coeff_sequence(CoeffKind kind, long n_max) {
  CoeffSequence seq{kind, {}};
  const long first = kind == CoeffKind::example2_B ? 0 : 3;
  for (long n = first; n <= n_max; ++n) {
    switch (kind) {
      case CoeffKind::example1_closed: seq.values[n] = c1_closed(n); break;
      case CoeffKind::example1_recursive: seq.values[n] = c1_recursive(n); break;
      case CoeffKind::example2_daily: seq.values[n] = c2_daily(n); break;
      case CoeffKind::example2_B: seq.values[n] = b_closed(n); break;
    }
  }
  return seq;
}

CoeffSequence normalize_scaling(const CoeffSequence& b) {
  auto it = b.values.find(0);
  if (it == b.values.end() || it->second == 0) throw std::invalid_argument("scaling needs B_0 != 0");
  const Rational b0 = it->second;
  CoeffSequence out{b.kind, {}};
  for (const auto& [m, value] : b.values) {
    Rational scale = 1;
    if (m == 0)
      scale = 1 / b0;
    else
      for (long k = 0; k < m - 1; ++k) scale *= b0;
    out.values[m] = scale * value;
  }
  return out;
}

}  // namespace linfty
