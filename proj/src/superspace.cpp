#include "linfty/superspace.hpp"

#include "linfty/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace linfty {

unsigned total_degree(const MultiIndex& m) { return std::accumulate(m.begin(), m.end(), 0u); }

Integer multi_factorial(const MultiIndex& m) {
  Integer r = 1;
  for (auto k : m) r *= factorial(k);
  return r;
}

void for_each_multi_index(std::size_t n, unsigned max_degree, const std::function<void(const MultiIndex&)>& visit) {
  MultiIndex m(n, 0);
  // Compositions of each total degree d into n parts, in lexicographic order.
  std::function<void(std::size_t, unsigned)> fill = [&](std::size_t pos, unsigned remaining) {
    if (pos + 1 == n) {
      m[pos] = remaining;
      visit(m);
      return;
    }
    for (unsigned k = remaining + 1; k-- > 0;) {
      m[pos] = k;
      fill(pos + 1, remaining - k);
    }
  };
  for (unsigned d = 0; d <= max_degree; ++d) {
    if (n == 0) {
      if (d == 0) visit(m);
      continue;
    }
    fill(0, d);
  }
}

// ---------------------------------------------------------------------------

unsigned SuperMonomial::fermion_degree() const {
  return static_cast<unsigned>(std::popcount(fermions));
}

std::string SuperMonomial::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t a = 0; a < fermion_count; ++a) {
    if (!has_fermion(a)) continue;
    os << (any ? "*" : "") << "theta" << a + 1;
    any = true;
  }
  const auto names = boson_names(bosons.size());
  for (std::size_t i = 0; i < bosons.size(); ++i) {
    if (bosons[i] == 0) continue;
    os << (any ? "*" : "") << names[i];
    if (bosons[i] > 1) os << "^" << bosons[i];
    any = true;
  }
  if (!any) os << "1";
  return os.str();
}

SuperPoly SuperPoly::one(std::size_t bosons) {
  return monomial(SuperMonomial{0, MultiIndex(bosons, 0)});
}

SuperPoly SuperPoly::monomial(const SuperMonomial& m, const Rational& c) {
  SuperPoly p(m.bosons.size());
  p.add_term(m, c);
  return p;
}

Rational SuperPoly::coefficient(const SuperMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned SuperPoly::max_boson_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m.bosons));
  return d;
}

void SuperPoly::add_term(const SuperMonomial& m, const Rational& c) {
  if (m.bosons.size() != bosons_) throw std::invalid_argument("monomial boson count mismatch");
  if (m.fermions >= (1u << fermion_count)) throw std::invalid_argument("unknown fermion in monomial");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

SuperPoly& SuperPoly::operator+=(const SuperPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

SuperPoly& SuperPoly::operator-=(const SuperPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

SuperPoly& SuperPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

std::string SuperPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    if (a != 1) os << format_rational(a) << "*";
    os << m.to_string();
    first = false;
  }
  return os.str();
}

namespace {

// Number of fermions standing to the left of theta_{alpha+1} in canonical order.
int fermions_before(unsigned fermions, std::size_t alpha) {
  return std::popcount(fermions & ((1u << alpha) - 1u));
}

}  // namespace

SuperPoly mul_theta(std::size_t alpha, const SuperPoly& p) {
  if (alpha >= fermion_count) throw std::invalid_argument("theta index out of range");
  SuperPoly out(p.bosons());
  for (const auto& [m, c] : p.terms()) {
    if (m.has_fermion(alpha)) continue;
    SuperMonomial r = m;
    r.fermions |= 1u << alpha;
    out.add_term(r, fermions_before(m.fermions, alpha) % 2 ? -c : c);
  }
  return out;
}

SuperPoly mul_x(std::size_t i, const SuperPoly& p) {
  if (i >= p.bosons()) throw std::invalid_argument("boson index out of range");
  SuperPoly out(p.bosons());
  for (const auto& [m, c] : p.terms()) {
    SuperMonomial r = m;
    ++r.bosons[i];
    out.add_term(r, c);
  }
  return out;
}

SuperPoly d_theta(std::size_t alpha, const SuperPoly& p) {
  if (alpha >= fermion_count) throw std::invalid_argument("theta index out of range");
  SuperPoly out(p.bosons());
  for (const auto& [m, c] : p.terms()) {
    if (!m.has_fermion(alpha)) continue;
    SuperMonomial r = m;
    r.fermions &= ~(1u << alpha);
    out.add_term(r, fermions_before(m.fermions, alpha) % 2 ? -c : c);
  }
  return out;
}

// ---------------------------------------------------------------------------

MomentumSeries MomentumSeries::constant(std::size_t bosons, std::size_t order, const Rational& c) {
  MomentumSeries s(bosons, order);
  s.set(MultiIndex(bosons, 0), c);
  return s;
}

MomentumSeries MomentumSeries::momentum(std::size_t bosons, std::size_t order, std::size_t i) {
  if (i >= bosons) throw std::invalid_argument("momentum index out of range");
  MomentumSeries s(bosons, order);
  if (order == 0) return s;
  MultiIndex m(bosons, 0);
  m[i] = 1;
  s.set(m, 1);
  return s;
}

MomentumSeries MomentumSeries::of_total(std::size_t bosons, const Series& s) {
  MomentumSeries out(bosons, s.order());
  // P^M = sum_{|m| = M} M!/m! p^m
  for_each_multi_index(bosons, static_cast<unsigned>(s.order()), [&](const MultiIndex& m) {
    const unsigned big_m = total_degree(m);
    if (s[big_m] == 0) return;
    out.set(m, s[big_m] * Rational(factorial(big_m)) / Rational(multi_factorial(m)));
  });
  return out;
}

Rational MomentumSeries::coefficient(const MultiIndex& m) const {
  if (total_degree(m) > order_)
    throw TruncationError("momentum series coefficient requested beyond order " + std::to_string(order_));
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MomentumSeries::taylor_coefficient(const MultiIndex& m) const {
  return coefficient(m) * Rational(multi_factorial(m));
}

void MomentumSeries::set(const MultiIndex& m, const Rational& c) {
  if (m.size() != bosons_) throw std::invalid_argument("multi-index length does not match boson count");
  if (total_degree(m) > order_) throw TruncationError("momentum series term beyond order");
  if (c == 0)
    terms_.erase(m);
  else
    terms_[m] = c;
}

MomentumSeries MomentumSeries::truncated(std::size_t order) const {
  if (order > order_) throw TruncationError("cannot extend a momentum series beyond its known order");
  MomentumSeries out(bosons_, order);
  for (const auto& [m, c] : terms_)
    if (total_degree(m) <= order) out.terms_.emplace(m, c);
  return out;
}

Series MomentumSeries::to_series() const {
  if (bosons_ != 1) throw std::invalid_argument("to_series needs exactly one boson");
  Series s(order_);
  for (const auto& [m, c] : terms_) s.set(m[0], c);
  return s;
}

MomentumSeries& MomentumSeries::operator+=(const MomentumSeries& other) {
  if (other.bosons_ != bosons_) throw std::invalid_argument("boson count mismatch");
  if (other.order_ < order_) *this = truncated(other.order_);
  for (const auto& [m, c] : other.terms_) {
    if (total_degree(m) > order_) continue;
    Rational v = coefficient(m) + c;
    set(m, v);
  }
  return *this;
}

MomentumSeries& MomentumSeries::operator-=(const MomentumSeries& other) {
  MomentumSeries neg = other;
  neg *= Rational(-1);
  return *this += neg;
}

MomentumSeries& MomentumSeries::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

MomentumSeries operator*(const MomentumSeries& a, const MomentumSeries& b) {
  if (a.bosons_ != b.bosons_) throw std::invalid_argument("boson count mismatch");
  const std::size_t order = std::min(a.order_, b.order_);
  MomentumSeries out(a.bosons_, order);
  MultiIndex m(a.bosons_);
  for (const auto& [ma, ca] : a.terms_) {
    const unsigned da = total_degree(ma);
    if (da > order) continue;
    for (const auto& [mb, cb] : b.terms_) {
      if (da + total_degree(mb) > order) continue;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      auto [it, inserted] = out.terms_.try_emplace(m, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

bool MomentumSeries::operator==(const MomentumSeries& other) const {
  return bosons_ == other.bosons_ && order_ == other.order_ && terms_ == other.terms_;
}

MomentumSeries partial(const MomentumSeries& s, std::size_t i) {
  if (i >= s.bosons()) throw std::invalid_argument("momentum index out of range");
  if (s.order() == 0) throw TruncationError("derivative of an order-0 momentum series is unknown");
  MomentumSeries out(s.bosons(), s.order() - 1);
  for (const auto& [m, c] : s.terms()) {
    if (m[i] == 0) continue;
    MultiIndex r = m;
    --r[i];
    out.set(r, c * Rational(static_cast<long>(m[i])));
  }
  return out;
}

int eps_upper(std::size_t alpha, std::size_t beta) {
  if (alpha == 0 && beta == 1) return 1;
  if (alpha == 1 && beta == 0) return -1;
  return 0;
}

int eps_lower(std::size_t alpha, std::size_t beta) { return -eps_upper(alpha, beta); }

// ---------------------------------------------------------------------------

std::vector<std::string> boson_names(std::size_t bosons) {
  if (bosons == 1) return {"x"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < bosons; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

SpacePtr make_w_space(std::size_t bosons) {
  std::vector<Generator> gens{{"theta1", -1}, {"theta2", -1}};
  for (auto& n : boson_names(bosons)) gens.push_back(Generator{std::move(n), 0});
  return std::make_shared<const GradedSpace>("W", std::move(gens));
}

DeltaSpec::DeltaSpec(std::size_t bosons, std::size_t order, bool selection_rule)
    : bosons_(bosons),
      order_(order),
      selection_rule_(selection_rule),
      f_{MomentumSeries(bosons, order), MomentumSeries(bosons, order)},
      g_{std::vector<MomentumSeries>(bosons, MomentumSeries(bosons, order)),
         std::vector<MomentumSeries>(bosons, MomentumSeries(bosons, order))},
      h_{MomentumSeries(bosons, order), MomentumSeries(bosons, order)} {
  if (bosons == 0) throw std::invalid_argument("a Delta specification needs at least one boson");
}

void DeltaSpec::check_shape(const MomentumSeries& s) const {
  if (s.bosons() != bosons_) throw std::invalid_argument("generating function has the wrong boson count");
  if (s.order() < order_)
    throw TruncationError("generating function known only to order " + std::to_string(s.order()) +
                          ", specification needs " + std::to_string(order_));
}

void DeltaSpec::set_f(std::size_t alpha, MomentumSeries s) {
  check_shape(s);
  f_.at(alpha) = s.truncated(order_);
  structural_G_.reset();
}

void DeltaSpec::set_g(std::size_t alpha, std::size_t i, MomentumSeries s) {
  check_shape(s);
  g_.at(alpha).at(i) = s.truncated(order_);
  structural_G_.reset();
}

void DeltaSpec::set_h(std::size_t alpha, MomentumSeries s) {
  check_shape(s);
  if (selection_rule_ && !s.is_zero())
    throw std::invalid_argument("the degree selection rule forces h to vanish");
  h_.at(alpha) = s.truncated(order_);
  structural_G_.reset();
}

DeltaSpec DeltaSpec::one_boson(const Series& f1, const Series& f2, const Series& g1, const Series& g2) {
  const std::size_t order = std::min({f1.order(), f2.order(), g1.order(), g2.order()});
  DeltaSpec spec(1, order);
  auto lift = [&](const Series& s) { return MomentumSeries::of_total(1, s.truncated(order)); };
  spec.set_f(0, lift(f1));
  spec.set_f(1, lift(f2));
  spec.set_g(0, 0, lift(g1));
  spec.set_g(1, 0, lift(g2));
  return spec;
}

DeltaSpec DeltaSpec::structural(const Series& G, std::size_t bosons) {
  if (bosons < fermion_count) throw std::invalid_argument("the structural form needs at least two bosons");
  DeltaSpec spec(bosons, G.order());
  const auto g_total = MomentumSeries::of_total(bosons, G);
  for (std::size_t alpha = 0; alpha < fermion_count; ++alpha) {
    for (std::size_t i = 0; i < bosons; ++i) {
      auto s = MomentumSeries::momentum(bosons, G.order(), i);
      if (i == alpha) s += g_total;
      spec.set_g(alpha, i, std::move(s));
    }
  }
  spec.structural_G_ = G;
  return spec;
}

SpacePtr DeltaSpec::w_space() const { return make_w_space(bosons_); }

// ---------------------------------------------------------------------------

DeltaOperator::DeltaOperator(const DeltaSpec& spec) : spec_(spec) {}

const DeltaOperator::BosonPoly& DeltaOperator::act(const MomentumSeries& s, std::size_t slot,
                                                   const MultiIndex& k) const {
  auto key = std::make_pair(slot, k);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  if (total_degree(k) > s.order())
    throw TruncationError("boson degree " + std::to_string(total_degree(k)) + " exceeds series order " +
                          std::to_string(s.order()));
  // s(d_x) x^k = sum_{m <= k} s_m k!/(k-m)! x^{k-m}
  BosonPoly out;
  MultiIndex m(k.size(), 0);
  while (true) {
    auto c = s.coefficient(m);
    if (c != 0) {
      MultiIndex rest(k.size());
      Integer falling = 1;
      for (std::size_t i = 0; i < k.size(); ++i) {
        rest[i] = k[i] - m[i];
        falling *= factorial(k[i]) / factorial(rest[i]);
      }
      out.emplace_back(std::move(rest), c * Rational(falling));
    }
    std::size_t pos = 0;
    while (pos < k.size() && m[pos] == k[pos]) m[pos++] = 0;
    if (pos == k.size()) break;
    ++m[pos];
  }
  return cache_.emplace(std::move(key), std::move(out)).first->second;
}

SuperPoly DeltaOperator::operator()(const SuperPoly& p) const {
  const std::size_t n = spec_.bosons();
  if (p.bosons() != n) throw std::invalid_argument("polynomial boson count does not match specification");
  if (p.max_boson_degree() > spec_.order())
    throw TruncationError("polynomial boson degree exceeds the specification order");

  auto apply_series = [&](const MomentumSeries& s, std::size_t slot, const SuperPoly& q) {
    SuperPoly out(n);
    if (s.is_zero()) return out;
    for (const auto& [m, c] : q.terms()) {
      for (const auto& [rest, a] : act(s, slot, m.bosons)) out.add_term(SuperMonomial{m.fermions, rest}, c * a);
    }
    return out;
  };

  const std::size_t g_slot = 2;
  const std::size_t h_slot = 2 + 2 * n;
  SuperPoly result(n);

  // Delta_2
  for (std::size_t a = 0; a < fermion_count; ++a) {
    for (std::size_t b = 0; b < fermion_count; ++b) {
      const int e = eps_lower(a, b);
      if (e == 0) continue;
      SuperPoly dd = d_theta(b, d_theta(a, p));
      if (dd.is_zero()) continue;
      for (std::size_t c = 0; c < fermion_count; ++c)
        result += mul_theta(c, apply_series(spec_.f(c), c, dd)) * Rational(e, 2);
    }
  }
  // Delta_1
  for (std::size_t a = 0; a < fermion_count; ++a) {
    SuperPoly d = d_theta(a, p);
    if (d.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i) result += mul_x(i, apply_series(spec_.g(a, i), g_slot + a * n + i, d));
  }
  // Delta_0
  for (std::size_t a = 0; a < fermion_count; ++a) result += mul_theta(a, apply_series(spec_.h(a), h_slot + a, p));
  return result;
}

SuperPoly apply_delta(const DeltaSpec& spec, const SuperPoly& p) { return DeltaOperator(spec)(p); }

namespace {

SuperPoly left_multiply(std::size_t generator, const SuperPoly& p) {
  return generator < fermion_count ? mul_theta(generator, p) : mul_x(generator - fermion_count, p);
}

int generator_parity(std::size_t generator) { return generator < fermion_count ? 1 : 0; }

// ([..[Delta, L_{z_1}], .., L_{z_k}])(w), with parity of the nested commutator tracked.
SuperPoly nested_commutator(const DeltaOperator& delta, std::span<const std::size_t> z, const SuperPoly& w) {
  if (z.empty()) return delta(w);
  const std::size_t last = z.back();
  auto inner = z.first(z.size() - 1);
  int inner_parity = 1;
  for (auto g : inner) inner_parity ^= generator_parity(g);
  SuperPoly out = nested_commutator(delta, inner, left_multiply(last, w));
  SuperPoly swapped = left_multiply(last, nested_commutator(delta, inner, w));
  if (inner_parity && generator_parity(last))
    out += swapped;
  else
    out -= swapped;
  return out;
}

Element to_linear_element(const SuperPoly& p) {
  Element e;
  for (const auto& [m, c] : p.terms()) {
    const unsigned boson_deg = total_degree(m.bosons);
    if (m.fermion_degree() == 1 && boson_deg == 0) {
      e.add_term(m.has_fermion(0) ? 0 : 1, c);
    } else if (m.fermion_degree() == 0 && boson_deg == 1) {
      auto it = std::find(m.bosons.begin(), m.bosons.end(), 1u);
      e.add_term(fermion_count + static_cast<std::size_t>(it - m.bosons.begin()), c);
    } else {
      throw ConsistencyError("Koszul bracket produced the non-linear term " + m.to_string());
    }
  }
  return e;
}

}  // namespace

Element koszul_bracket(const DeltaOperator& delta, std::span<const std::size_t> inputs) {
  const std::size_t dim = fermion_count + delta.spec().bosons();
  for (auto g : inputs)
    if (g >= dim) throw std::invalid_argument("generator index out of range");
  return to_linear_element(nested_commutator(delta, inputs, SuperPoly::one(delta.spec().bosons())));
}

Element koszul_bracket(const DeltaSpec& spec, std::span<const std::size_t> inputs) {
  return koszul_bracket(DeltaOperator(spec), inputs);
}

BracketSystem brackets_from_delta(const DeltaSpec& spec, std::size_t max_arity) {
  DeltaOperator delta(spec);
  auto space = spec.w_space();
  if (!delta(SuperPoly::one(spec.bosons())).is_zero())
    throw ConsistencyError("Delta(1) != 0: the arity-0 bracket cannot be tabulated");
  BracketSystem sys(space, Symmetry::symmetric, max_arity);
  for (std::size_t n = 1; n <= max_arity; ++n) {
    for_each_canonical_tuple(space->dimension(), n, [&](const BracketKey& key) {
      if (canonicalize(*space, Symmetry::symmetric, key).forced_zero) return;
      Element value = koszul_bracket(delta, key);
      if (!value.is_zero()) sys.set(key, value);
    });
  }
  return sys;
}

DeltaSpec delta_from_brackets(const BracketSystem& sys_w, std::optional<std::size_t> order) {
  const auto& space = sys_w.space();
  if (sys_w.symmetry() != Symmetry::symmetric) throw std::invalid_argument("delta_from_brackets expects a symmetric system");
  if (space.dimension() <= fermion_count || space.degree(0) != -1 || space.degree(1) != -1)
    throw std::invalid_argument("expected generators theta1, theta2 of degree -1 followed by bosons");
  for (std::size_t i = fermion_count; i < space.dimension(); ++i)
    if (space.degree(i) != 0) throw std::invalid_argument("bosonic generators must have degree 0");
  if (sys_w.max_arity() < 2) throw std::invalid_argument("need brackets up to arity 2 at least");
  const std::size_t n = space.dimension() - fermion_count;
  const std::size_t ord = order.value_or(sys_w.max_arity() - 2);
  if (ord + 2 > sys_w.max_arity()) throw TruncationError("requested order needs brackets beyond max_arity");

  DeltaSpec spec(n, ord);
  std::array<MomentumSeries, 2> f{MomentumSeries(n, ord), MomentumSeries(n, ord)};
  std::array<std::vector<MomentumSeries>, 2> g{std::vector<MomentumSeries>(n, MomentumSeries(n, ord)),
                                               std::vector<MomentumSeries>(n, MomentumSeries(n, ord))};
  for_each_multi_index(n, static_cast<unsigned>(ord), [&](const MultiIndex& m) {
    const Rational inv_fact = Rational(1) / Rational(multi_factorial(m));
    BracketKey bosons;
    for (std::size_t i = 0; i < n; ++i) bosons.insert(bosons.end(), m[i], fermion_count + i);
    // Phi^{|m|+1}(theta_a x^m) = b^i_{am} x_i
    for (std::size_t a = 0; a < fermion_count; ++a) {
      BracketKey key{a};
      key.insert(key.end(), bosons.begin(), bosons.end());
      const Element out = sys_w.eval(key);
      for (const auto& [gen, c] : out.terms()) g[a][gen - fermion_count].set(m, c * inv_fact);
    }
    // Phi^{|m|+2}(theta_1 theta_2 x^m) = eps_{12} a^c_m theta_c
    BracketKey key{0, 1};
    key.insert(key.end(), bosons.begin(), bosons.end());
    const Element out = sys_w.eval(key);
    for (const auto& [gen, c] : out.terms())
      f[gen].set(m, c * Rational(eps_lower(0, 1)) * inv_fact);
  });
  for (std::size_t a = 0; a < fermion_count; ++a) {
    spec.set_f(a, std::move(f[a]));
    for (std::size_t i = 0; i < n; ++i) spec.set_g(a, i, std::move(g[a][i]));
  }
  return spec;
}

DeltaSquaredReport delta_squared_check(const DeltaSpec& spec, unsigned degree_bound) {
  if (degree_bound + 1 > spec.order())
    throw TruncationError("delta_squared_check needs degree_bound + 1 <= order");
  DeltaOperator delta(spec);
  DeltaSquaredReport report;
  for_each_multi_index(spec.bosons(), degree_bound, [&](const MultiIndex& k) {
    if (report.witness) return;
    for (unsigned f = 0; f < (1u << fermion_count); ++f) {
      SuperMonomial m{f, k};
      ++report.monomials_checked;
      SuperPoly twice = delta(delta(SuperPoly::monomial(m)));
      if (!twice.is_zero()) {
        report.witness = m;
        report.residue = std::move(twice);
        return;
      }
    }
  });
  return report;
}

namespace {

bool every_zero(const std::vector<MomentumSeries>& v) {
  return std::all_of(v.begin(), v.end(), [](const MomentumSeries& s) { return s.is_zero(); });
}

}  // namespace

bool NilpotencyResiduals::first_zero() const { return every_zero(first); }
bool NilpotencyResiduals::second_zero() const {
  return std::all_of(second.begin(), second.end(), [](const auto& row) { return every_zero(row); });
}
bool NilpotencyResiduals::third_zero() const { return every_zero(third); }

NilpotencyResiduals nilpotency_conditions(const DeltaSpec& spec, std::optional<std::size_t> order) {
  if (spec.order() == 0) throw TruncationError("nilpotency conditions need order >= 1");
  const std::size_t ord = order.value_or(spec.order() - 1);
  if (ord + 1 > spec.order()) throw TruncationError("residual order must be below the specification order");
  const std::size_t n = spec.bosons();
  auto cut = [&](const MomentumSeries& s) { return s.truncated(ord); };
  auto d = [&](const MomentumSeries& s, std::size_t i) { return partial(s.truncated(ord + 1), i); };

  NilpotencyResiduals r;
  r.order = ord;
  for (std::size_t i = 0; i < n; ++i) {
    MomentumSeries acc(n, ord);
    for (std::size_t c = 0; c < fermion_count; ++c) {
      if (spec.f(c).is_zero()) continue;
      acc += cut(spec.g(c, i)) * cut(spec.f(c));
    }
    for (std::size_t a = 0; a < fermion_count; ++a)
      for (std::size_t b = 0; b < fermion_count; ++b) {
        const int e = eps_upper(a, b);
        if (e == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          auto dg = d(spec.g(a, i), j);
          if (dg.is_zero()) continue;
          acc += (dg * cut(spec.g(b, j))) * Rational(e);
        }
      }
    r.first.push_back(std::move(acc));
  }
  r.second.assign(fermion_count, std::vector<MomentumSeries>(fermion_count, MomentumSeries(n, ord)));
  for (std::size_t a = 0; a < fermion_count; ++a)
    for (std::size_t b = 0; b < fermion_count; ++b) {
      MomentumSeries acc(n, ord);
      for (std::size_t c = 0; c < fermion_count; ++c) {
        const int e = eps_lower(c, b);
        if (e == 0 || spec.f(a).is_zero() || spec.h(c).is_zero()) continue;
        acc += (cut(spec.f(a)) * cut(spec.h(c))) * Rational(e);
      }
      if (!spec.h(a).is_zero())
        for (std::size_t i = 0; i < n; ++i) acc += d(spec.h(a), i) * cut(spec.g(b, i));
      r.second[a][b] = std::move(acc);
    }
  for (std::size_t i = 0; i < n; ++i) {
    MomentumSeries acc(n, ord);
    for (std::size_t a = 0; a < fermion_count; ++a)
      if (!spec.h(a).is_zero()) acc += cut(spec.g(a, i)) * cut(spec.h(a));
    r.third.push_back(std::move(acc));
  }
  return r;
}

Series structural_ode_residual(const Series& G) {
  const auto p = Series::variable(G.order());
  return derivative(G) * (G + p) - G;
}

}  // namespace linfty
