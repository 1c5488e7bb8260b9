#pragma once

#include "linfty/graded.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace linfty {

/// skew: maps l_n on V of degree 2 - n, graded skew-symmetric.
/// symmetric: maps on the desuspended space W of degree +1, graded symmetric.
enum class Symmetry { skew, symmetric };

/// Sorted (non-decreasing) generator indices.
using BracketKey = std::vector<std::size_t>;

struct CanonicalForm {
  BracketKey key;
  int sign = 1;
  /// Graded (skew-)symmetry forces the bracket to vanish on this input.
  bool forced_zero = false;
};

/// Sorts inputs into canonical order, accumulating the sign of every adjacent
/// transposition: (-1)^{ab} (symmetric) or -(-1)^{ab} (skew) for degrees a, b.
CanonicalForm canonicalize(const GradedSpace& space, Symmetry symmetry,
                           std::span<const std::size_t> inputs);

/// Sparse tables of n-ary brackets on a finite graded space, 1 <= n <= max_arity.
class BracketSystem {
 public:
  static constexpr std::size_t default_max_arity = 10;

  BracketSystem(SpacePtr space, Symmetry symmetry, std::size_t max_arity = default_max_arity);

  const GradedSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  Symmetry symmetry() const { return symmetry_; }
  std::size_t max_arity() const { return max_arity_; }

  /// Degree of the n-ary bracket: 2 - n (skew) or +1 (symmetric).
  int bracket_degree(std::size_t n) const;

  /// Defines the bracket on the given inputs (any order). The value is stored
  /// against the canonical key with the appropriate sign. Throws
  /// std::invalid_argument when the value violates the degree rule or when
  /// symmetry forces the bracket to vanish on these inputs.
  void set(std::span<const std::size_t> inputs, const Element& value);
  void set(std::initializer_list<std::size_t> inputs, const Element& value) {
    set(std::span<const std::size_t>(inputs.begin(), inputs.size()), value);
  }
  void set_by_name(const std::vector<std::string>& inputs, const Element& value);

  /// l_n on basis inputs. Throws TruncationError above max_arity.
  Element eval(std::span<const std::size_t> inputs) const;
  Element eval(std::initializer_list<std::size_t> inputs) const {
    return eval(std::span<const std::size_t>(inputs.begin(), inputs.size()));
  }
  /// Same, with inputs checked to belong to this system's space.
  Element eval(std::span<const BasisVector> inputs) const;
  /// l_n(first, rest...) extended linearly in the first slot.
  Element eval_with_first(const Element& first, std::span<const std::size_t> rest) const;

  const std::map<BracketKey, Element>& table(std::size_t n) const;
  std::size_t entry_count() const;

  /// Copy restricted to arities <= max_arity.
  BracketSystem truncated(std::size_t max_arity) const;

  bool operator==(const BracketSystem& other) const;

 private:
  SpacePtr space_;
  Symmetry symmetry_;
  std::size_t max_arity_;
  std::vector<std::map<BracketKey, Element>> tables_;  // index = arity
};

/// Describes the first entry (by arity, then key) where two systems on
/// identically named spaces differ, up to the given arity. nullopt if equal.
std::optional<std::string> first_difference(const BracketSystem& a, const BracketSystem& b,
                                            std::size_t max_arity);

std::string format_key(const GradedSpace& space, std::span<const std::size_t> key);

/// Visits every non-decreasing tuple of n indices below dim, lexicographically.
void for_each_canonical_tuple(std::size_t dim, std::size_t n,
                              const std::function<void(const BracketKey&)>& visit);

// ---------------------------------------------------------------------------
// Generalized Jacobi identities

/// Per-i aggregates of the Jacobi expression on a fixed input tuple:
/// terms[i] = sum over (i, n-i) unshuffles s of e(s) (-1)^s l_j(l_i(...), ...),
/// with j = n + 1 - i. terms[0] is unused.
std::vector<Element> jacobi_terms(const BracketSystem& sys, std::span<const std::size_t> inputs);

/// Left-hand side of the n-th generalized Jacobi identity, n = inputs.size().
/// Requires a skew system.
Element jacobi_defect(const BracketSystem& sys, std::span<const std::size_t> inputs);

struct JacobiCounterexample {
  BracketKey inputs;
  Element defect;
};

struct ArityReport {
  std::size_t arity = 0;
  std::size_t tuples_checked = 0;
  std::optional<JacobiCounterexample> counterexample;
  bool passed() const { return !counterexample; }
};

struct JacobiReport {
  SpacePtr space;  // space the counterexample indices refer to
  std::vector<ArityReport> arities;
  bool passed() const;
};

/// Checks every canonical basis tuple of every arity 1..n_max. Symmetric
/// systems are suspended first; the report then refers to the suspended space.
JacobiReport verify_jacobi(const BracketSystem& sys, std::size_t n_max);

// ---------------------------------------------------------------------------
// Desuspension

/// Sign relating l_n on V and its desuspended image on W for the canonical
/// inputs with the given W-degrees: (-1)^{n(n-1)/2} times the Koszul sign of
/// pushing the n suspensions through the inputs.
int suspension_sign(std::span<const int> w_degrees);

/// l^_n = (-1)^{n(n-1)/2} down o l_n o up^{(x)n}. Generator names of W default
/// to the V names prefixed with a down-arrow.
BracketSystem desuspend_system(const BracketSystem& sys_v,
                               std::optional<std::vector<std::string>> w_names = std::nullopt,
                               std::string w_id = "W");

/// Inverse of desuspend_system.
BracketSystem suspend_system(const BracketSystem& sys_w,
                             std::optional<std::vector<std::string>> v_names = std::nullopt,
                             std::string v_id = "V");

}  // namespace linfty
