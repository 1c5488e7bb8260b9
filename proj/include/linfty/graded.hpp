#pragma once

#include "linfty/rational.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace linfty {

inline int parity(int degree) { return ((degree % 2) + 2) % 2; }

/// W_n = V_{n+1}: an element of V of degree d lands in W at degree d - 1.
inline int desuspend_degree(int d) { return d - 1; }
inline int suspend_degree(int d) { return d + 1; }

struct Generator {
  std::string name;
  int degree = 0;

  int parity() const { return linfty::parity(degree); }
};

/// A finite graded vector space given by an ordered list of generators.
/// The list order is the canonical order used for bracket keys.
class GradedSpace {
 public:
  GradedSpace(std::string id, std::vector<Generator> generators);

  const std::string& id() const { return id_; }
  std::size_t dimension() const { return generators_.size(); }
  const Generator& generator(std::size_t i) const { return generators_.at(i); }
  const std::vector<Generator>& generators() const { return generators_; }
  int degree(std::size_t i) const { return generators_.at(i).degree; }

  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws std::invalid_argument if the name is not a generator of this space.
  std::size_t index_of(const std::string& name) const;

  bool operator==(const GradedSpace& other) const;

 private:
  std::string id_;
  std::vector<Generator> generators_;
  std::map<std::string, std::size_t> by_name_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

/// A generator viewed as a vector of a particular space.
struct BasisVector {
  std::string space_id;
  std::size_t index = 0;
  std::string name;
  int degree = 0;

  int parity() const { return linfty::parity(degree); }
};

BasisVector basis_vector(const GradedSpace& space, std::size_t index);

/// Finite linear combination of generators of one space, with no stored zeros.
class Element {
 public:
  Element() = default;
  static Element generator(std::size_t index, Rational coeff = 1);

  bool is_zero() const { return terms_.empty(); }
  const std::map<std::size_t, Rational>& terms() const { return terms_; }
  Rational coefficient(std::size_t index) const;

  void add_term(std::size_t index, const Rational& coeff);
  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Rational& s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Rational& s) { return a *= s; }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }
  Element operator-() const { return Element(*this) *= Rational(-1); }

  bool operator==(const Element& other) const { return terms_ == other.terms_; }

  /// Common degree of all terms; nullopt for the zero element. Throws
  /// std::logic_error if the element mixes degrees.
  std::optional<int> degree(const GradedSpace& space) const;

  std::string to_string(const GradedSpace& space) const;

 private:
  std::map<std::size_t, Rational> terms_;
};

/// A permutation of {0, ..., n-1}. images()[k] is the index of the input
/// placed at position k, i.e. permute(sigma, v)[k] == v[sigma(k)].
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> images);
  static Permutation identity(std::size_t n);
  /// Builds from 1-based images such as (2 3 1).
  static Permutation from_one_based(const std::vector<std::size_t>& images);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t k) const { return images_[k]; }
  const std::vector<std::size_t>& images() const { return images_; }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> images_;
};

/// (sigma o tau)(k) = sigma(tau(k)); permute(compose(s, t), v) == permute(t, permute(s, v)).
Permutation compose(const Permutation& sigma, const Permutation& tau);

template <typename T>
std::vector<T> permute(const Permutation& sigma, std::span<const T> values) {
  std::vector<T> out;
  out.reserve(sigma.size());
  for (std::size_t k = 0; k < sigma.size(); ++k) out.push_back(values[sigma(k)]);
  return out;
}

int perm_sign(const Permutation& sigma);

/// Sign picked up by rearranging graded inputs with the given degrees into the
/// order prescribed by sigma: (-1)^{d_a d_b} for every pair that changes order.
/// Throws std::invalid_argument on a length mismatch.
int koszul_sign(const Permutation& sigma, std::span<const int> degrees);

/// All (i, n-i) unshuffles in lexicographic order of their first block.
/// Throws std::invalid_argument if i > n.
std::vector<Permutation> unshuffles(std::size_t i, std::size_t n);

}  // namespace linfty
