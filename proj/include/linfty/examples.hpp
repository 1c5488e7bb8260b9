#pragma once

#include "linfty/bracket_system.hpp"
#include "linfty/rational.hpp"
#include "linfty/superspace.hpp"

#include <cstddef>
#include <map>
#include <optional>

namespace linfty {

/// One example in all three formulations.
struct ExampleSystems {
  BracketSystem v;                  // skew brackets l_n on V = V_0 + V_1
  BracketSystem w;                  // symmetric brackets on W, tabulated directly
  std::optional<DeltaSpec> delta;   // generating functions, when a two-fermion frame exists
};

/// V_0 = <v1, v2>, V_1 = <w>:
///   l1(v1) = l1(v2) = w, l2(v1, v2) = v1, l2(v1, w) = w,
///   l_n(v2, w, ..., w) = C_n w for n >= 3.
/// Delta: f1 = -1, f2 = 0, g1 = 1 + p, g2 = (1 + p)(1 - ln(1 + p)), h = 0.
ExampleSystems example1_system(std::size_t max_arity = BracketSystem::default_max_arity,
                               std::size_t order = 32);

/// V_0 = <v_1..v_dim0>, V_1 = <w_1..w_dim1>, dim1 >= dim0:
///   l1(v_i) = w_i, l2(v_i, w_j) = w_i + w_j, l_n(v_i, w, ..., w) = C_n w_i.
/// The Delta form g^i_a = delta^i_a G(P) + p^i is attached when dim0 == 2.
ExampleSystems example2_system(std::size_t dim0 = 3, std::size_t dim1 = 3, std::size_t bosons = 3,
                               std::size_t max_arity = BracketSystem::default_max_arity,
                               std::size_t order = 32);

/// The series g2 = (1 + p)(1 - ln(1 + p)).
Series example1_g2(std::size_t order);

/// (-1)^{(n-2)(n-3)/2} (n-3)!, n >= 3.
Rational c1_closed(long n);
/// C_3 = 1, C_n = (-1)^{n-1} (n-3) C_{n-1}.
Rational c1_recursive(long n);
/// C_3 = 1, C_n = (-1)^n [-2(n-2) C_{n-1} + sum_{p=3}^{n-2} (-1)^{pn+1} binom(n-2, p-1) C_{n-p+1} C_p].
Rational c2_daily(long n);
/// (1 - M)^{M-1}, with 0^0 = 1.
Rational b_closed(long m);
/// The W-side coefficient of a bracket l_n(v, w, ..., w) = c w with v even
/// and w odd: c times the suspension sign for W-degrees (-1, 0, ..., 0).
Rational desuspended_coefficient(long n, const Rational& c);

enum class CoeffKind { example1_closed, example1_recursive, example2_daily, example2_B };

struct CoeffSequence {
  CoeffKind kind;
  std::map<long, Rational> values;
};

/// Values for every valid index up to n_max (n >= 3 for C sequences, M >= 0 for B).
CoeffSequence coeff_sequence(CoeffKind kind, long n_max);

/// Rescales x -> B_0 x: B'_M = B_0^{M-1} B_M, so that B'_0 = 1.
CoeffSequence normalize_scaling(const CoeffSequence& b);

}  // namespace linfty
