#pragma once

#include "linfty/bracket_system.hpp"
#include "linfty/rational.hpp"
#include "linfty/series.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace linfty {

/// Exponents (m_1, ..., m_N) of the bosonic variables.
using MultiIndex = std::vector<unsigned>;

unsigned total_degree(const MultiIndex& m);
/// m! = prod m_i!
Integer multi_factorial(const MultiIndex& m);
/// Calls visit on every multi-index of N entries with |m| <= max_degree, in
/// order of increasing |m|.
void for_each_multi_index(std::size_t n, unsigned max_degree, const std::function<void(const MultiIndex&)>& visit);

/// Number of fermionic generators theta_1, theta_2.
inline constexpr std::size_t fermion_count = 2;

/// theta-subset times x^m, with the fermions in canonical order theta_1 theta_2.
struct SuperMonomial {
  unsigned fermions = 0;  // bit a set <=> theta_{a+1} present
  MultiIndex bosons;

  bool has_fermion(std::size_t alpha) const { return (fermions >> alpha) & 1u; }
  unsigned fermion_degree() const;
  /// Grassmann parity.
  int parity() const { return static_cast<int>(fermion_degree() % 2); }
  std::string to_string() const;

  auto operator<=>(const SuperMonomial&) const = default;
};

/// Element of the super-symmetric algebra on W = span(theta_1, theta_2, x_1..x_N).
class SuperPoly {
 public:
  explicit SuperPoly(std::size_t bosons) : bosons_(bosons) {}
  static SuperPoly one(std::size_t bosons);
  static SuperPoly monomial(const SuperMonomial& m, const Rational& c = 1);

  std::size_t bosons() const { return bosons_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<SuperMonomial, Rational>& terms() const { return terms_; }
  Rational coefficient(const SuperMonomial& m) const;
  unsigned max_boson_degree() const;

  void add_term(const SuperMonomial& m, const Rational& c);
  SuperPoly& operator+=(const SuperPoly& other);
  SuperPoly& operator-=(const SuperPoly& other);
  SuperPoly& operator*=(const Rational& s);
  friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
  friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
  friend SuperPoly operator*(SuperPoly a, const Rational& s) { return a *= s; }
  friend SuperPoly operator*(const Rational& s, SuperPoly a) { return a *= s; }
  bool operator==(const SuperPoly& other) const { return bosons_ == other.bosons_ && terms_ == other.terms_; }

  std::string to_string() const;

 private:
  std::size_t bosons_;
  std::map<SuperMonomial, Rational> terms_;
};

/// Left multiplication by theta_{alpha+1}.
SuperPoly mul_theta(std::size_t alpha, const SuperPoly& p);
/// Left multiplication by x_{i+1}.
SuperPoly mul_x(std::size_t i, const SuperPoly& p);
/// Left derivative d/d theta_{alpha+1}.
SuperPoly d_theta(std::size_t alpha, const SuperPoly& p);

/// Truncated power series in the momenta p_1..p_N, known exactly up to total
/// degree order(). Coefficients are those of p^m (not Taylor coefficients).
class MomentumSeries {
 public:
  MomentumSeries(std::size_t bosons, std::size_t order) : bosons_(bosons), order_(order) {}

  static MomentumSeries constant(std::size_t bosons, std::size_t order, const Rational& c);
  /// The series p^{i+1}.
  static MomentumSeries momentum(std::size_t bosons, std::size_t order, std::size_t i);
  /// S(P) with P = p^1 + ... + p^N.
  static MomentumSeries of_total(std::size_t bosons, const Series& s);

  std::size_t bosons() const { return bosons_; }
  std::size_t order() const { return order_; }
  const std::map<MultiIndex, Rational>& terms() const { return terms_; }
  Rational coefficient(const MultiIndex& m) const;
  /// b_m = m! * coefficient: the bracket coefficient this series generates.
  Rational taylor_coefficient(const MultiIndex& m) const;
  void set(const MultiIndex& m, const Rational& c);
  bool is_zero() const { return terms_.empty(); }

  MomentumSeries truncated(std::size_t order) const;
  /// Univariate view for a single boson.
  Series to_series() const;

  MomentumSeries& operator+=(const MomentumSeries& other);
  MomentumSeries& operator-=(const MomentumSeries& other);
  MomentumSeries& operator*=(const Rational& s);
  friend MomentumSeries operator+(MomentumSeries a, const MomentumSeries& b) { return a += b; }
  friend MomentumSeries operator-(MomentumSeries a, const MomentumSeries& b) { return a -= b; }
  friend MomentumSeries operator*(const MomentumSeries& a, const MomentumSeries& b);
  friend MomentumSeries operator*(MomentumSeries a, const Rational& s) { return a *= s; }
  bool operator==(const MomentumSeries& other) const;

 private:
  std::size_t bosons_;
  std::size_t order_;
  std::map<MultiIndex, Rational> terms_;
};

/// d/dp^{i+1}; lowers the order by one.
MomentumSeries partial(const MomentumSeries& s, std::size_t i);

/// eps^{12} = 1 = eps_{21}, antisymmetric; indices are 0-based.
int eps_upper(std::size_t alpha, std::size_t beta);
int eps_lower(std::size_t alpha, std::size_t beta);

/// Generating-function data of Delta = Delta_2 + Delta_1 + Delta_0:
///   Delta_2 = 1/2 theta_c f^c(d_x) eps_{ab} d_{theta_b} d_{theta_a}
///   Delta_1 = x_i g^i_a(d_x) d_{theta_a}
///   Delta_0 = theta_a h^a(d_x)
class DeltaSpec {
 public:
  DeltaSpec(std::size_t bosons, std::size_t order, bool selection_rule = true);

  /// One boson: f = (f1, f2), g = (g1, g2) as univariate series; h = 0.
  static DeltaSpec one_boson(const Series& f1, const Series& f2, const Series& g1, const Series& g2);
  /// f = 0, h = 0, g^i_a(p) = delta^i_a G(P) + p^i, N >= 2.
  static DeltaSpec structural(const Series& G, std::size_t bosons);

  std::size_t bosons() const { return bosons_; }
  std::size_t order() const { return order_; }
  bool selection_rule() const { return selection_rule_; }

  const MomentumSeries& f(std::size_t alpha) const { return f_.at(alpha); }
  const MomentumSeries& g(std::size_t alpha, std::size_t i) const { return g_.at(alpha).at(i); }
  const MomentumSeries& h(std::size_t alpha) const { return h_.at(alpha); }
  const std::optional<Series>& structural_G() const { return structural_G_; }

  void set_f(std::size_t alpha, MomentumSeries s);
  void set_g(std::size_t alpha, std::size_t i, MomentumSeries s);
  /// Throws std::invalid_argument for nonzero h when the selection rule holds.
  void set_h(std::size_t alpha, MomentumSeries s);

  /// The W space theta1, theta2 (degree -1) then x or x1..xN (degree 0).
  SpacePtr w_space() const;

 private:
  void check_shape(const MomentumSeries& s) const;

  std::size_t bosons_;
  std::size_t order_;
  bool selection_rule_;
  std::array<MomentumSeries, 2> f_;
  std::array<std::vector<MomentumSeries>, 2> g_;
  std::array<MomentumSeries, 2> h_;
  std::optional<Series> structural_G_;
};

std::vector<std::string> boson_names(std::size_t bosons);
SpacePtr make_w_space(std::size_t bosons);

/// Applies Delta with cached actions of the generating functions on boson
/// monomials. Not safe for concurrent use; create one per thread.
class DeltaOperator {
 public:
  explicit DeltaOperator(const DeltaSpec& spec);

  /// Throws TruncationError if the input's boson degree exceeds the series order.
  SuperPoly operator()(const SuperPoly& p) const;
  const DeltaSpec& spec() const { return spec_; }

 private:
  using BosonPoly = std::vector<std::pair<MultiIndex, Rational>>;
  const BosonPoly& act(const MomentumSeries& s, std::size_t slot, const MultiIndex& k) const;

  DeltaSpec spec_;
  mutable std::map<std::pair<std::size_t, MultiIndex>, BosonPoly> cache_;
};

SuperPoly apply_delta(const DeltaSpec& spec, const SuperPoly& p);

/// Phi^n_Delta(z_1..z_n) = [[..[Delta, L_{z_1}], ..], L_{z_n}] 1, inputs given as
/// indices into spec.w_space(). Throws ConsistencyError if the result is not
/// linear in the generators.
Element koszul_bracket(const DeltaSpec& spec, std::span<const std::size_t> inputs);
Element koszul_bracket(const DeltaOperator& delta, std::span<const std::size_t> inputs);

/// Tabulates the Koszul brackets on every canonical tuple up to max_arity.
/// Throws ConsistencyError if Delta(1) != 0 (no arity-0 slot is available).
BracketSystem brackets_from_delta(const DeltaSpec& spec, std::size_t max_arity);

/// Reads the generating functions back off a symmetric system on
/// theta1, theta2, x_1..x_N. The order defaults to max_arity - 2, the largest
/// order for which every coefficient is determined by the table.
DeltaSpec delta_from_brackets(const BracketSystem& sys_w, std::optional<std::size_t> order = std::nullopt);

struct DeltaSquaredReport {
  std::size_t monomials_checked = 0;
  std::optional<SuperMonomial> witness;
  std::optional<SuperPoly> residue;
  bool passed() const { return !witness; }
};

/// Applies Delta twice to every monomial of boson degree <= degree_bound.
DeltaSquaredReport delta_squared_check(const DeltaSpec& spec, unsigned degree_bound);

struct NilpotencyResiduals {
  std::size_t order = 0;
  /// g^i_c f^c + g^i_{a,j} eps^{ab} g^j_b, one per boson i.
  std::vector<MomentumSeries> first;
  /// f^a h^c eps_{cb} + h^a_{,i} g^i_b, indexed [a][b].
  std::vector<std::vector<MomentumSeries>> second;
  /// g^i_a h^a, one per boson i.
  std::vector<MomentumSeries> third;

  bool first_zero() const;
  bool second_zero() const;
  bool third_zero() const;
  bool all_zero() const { return first_zero() && second_zero() && third_zero(); }
};

/// Series-level nilpotency conditions to the given order (default order() - 1).
NilpotencyResiduals nilpotency_conditions(const DeltaSpec& spec, std::optional<std::size_t> order = std::nullopt);

/// G'(P)(G(P) + P) - G(P), the reduction of the first condition for the
/// structural form g^i_a = delta^i_a G(P) + p^i.
Series structural_ode_residual(const Series& G);

}  // namespace linfty
