#include "linfty/graded.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace linfty {

GradedSpace::GradedSpace(std::string id, std::vector<Generator> generators)
    : id_(std::move(id)), generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name.empty())
      throw std::invalid_argument("generator names must be non-empty");
    if (!by_name_.emplace(generators_[i].name, i).second)
      throw std::invalid_argument("duplicate generator name '" + generators_[i].name + "'");
  }
}

std::optional<std::size_t> GradedSpace::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t GradedSpace::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw std::invalid_argument("'" + name + "' is not a generator of space " + id_);
  return *i;
}

bool GradedSpace::operator==(const GradedSpace& other) const {
  if (id_ != other.id_ || generators_.size() != other.generators_.size()) return false;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name != other.generators_[i].name ||
        generators_[i].degree != other.generators_[i].degree)
      return false;
  }
  return true;
}

BasisVector basis_vector(const GradedSpace& space, std::size_t index) {
  const auto& g = space.generator(index);
  return BasisVector{space.id(), index, g.name, g.degree};
}

Element Element::generator(std::size_t index, Rational coeff) {
  Element e;
  e.add_term(index, coeff);
  return e;
}

Rational Element::coefficient(std::size_t index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(std::size_t index, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(index, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

Element& Element::operator+=(const Element& other) {
  for (const auto& [i, c] : other.terms_) add_term(i, c);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  for (const auto& [i, c] : other.terms_) add_term(i, -c);
  return *this;
}

Element& Element::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [i, c] : terms_) c *= s;
  return *this;
}

std::optional<int> Element::degree(const GradedSpace& space) const {
  std::optional<int> deg;
  for (const auto& [i, c] : terms_) {
    int d = space.degree(i);
    if (deg && *deg != d) throw std::logic_error("element mixes degrees");
    deg = d;
  }
  return deg;
}

std::string Element::to_string(const GradedSpace& space) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : terms_) {
    Rational a = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    if (a != 1) os << format_rational(a) << "*";
    os << space.generator(i).name;
    first = false;
  }
  return os.str();
}

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto k : images_) {
    if (k >= images_.size() || seen[k]) throw std::invalid_argument("not a permutation");
    seen[k] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return Permutation(std::move(v));
}

Permutation Permutation::from_one_based(const std::vector<std::size_t>& images) {
  std::vector<std::size_t> v;
  v.reserve(images.size());
  for (auto k : images) {
    if (k == 0) throw std::invalid_argument("one-based permutation contains 0");
    v.push_back(k - 1);
  }
  return Permutation(std::move(v));
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size()) throw std::invalid_argument("composing permutations of different size");
  std::vector<std::size_t> v(sigma.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = sigma(tau(k));
  return Permutation(std::move(v));
}

int perm_sign(const Permutation& sigma) {
  int sign = 1;
  for (std::size_t a = 0; a < sigma.size(); ++a)
    for (std::size_t b = a + 1; b < sigma.size(); ++b)
      if (sigma(a) > sigma(b)) sign = -sign;
  return sign;
}

int koszul_sign(const Permutation& sigma, std::span<const int> degrees) {
  if (degrees.size() != sigma.size())
    throw std::invalid_argument("koszul_sign: degree count does not match permutation size");
  int sign = 1;
  for (std::size_t a = 0; a < sigma.size(); ++a)
    for (std::size_t b = a + 1; b < sigma.size(); ++b)
      if (sigma(a) > sigma(b) && parity(degrees[sigma(a)]) && parity(degrees[sigma(b)])) sign = -sign;
  return sign;
}

std::vector<Permutation> unshuffles(std::size_t i, std::size_t n) {
  if (i > n) throw std::invalid_argument("unshuffles: i exceeds n");
  std::vector<Permutation> out;
  // Each unshuffle is determined by the subset filling the first block.
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(i), true);
  do {
    std::vector<std::size_t> images;
    images.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
      if (pick[k]) images.push_back(k);
    for (std::size_t k = 0; k < n; ++k)
      if (!pick[k]) images.push_back(k);
    out.emplace_back(std::move(images));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

}  // namespace linfty
