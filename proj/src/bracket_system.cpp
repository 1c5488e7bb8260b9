#include "linfty/bracket_system.hpp"

#include "linfty/errors.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace linfty {

namespace {

int swap_sign(Symmetry symmetry, int deg_a, int deg_b) {
  int s = (parity(deg_a) && parity(deg_b)) ? -1 : 1;
  return symmetry == Symmetry::skew ? -s : s;
}

std::vector<int> degrees_of(const GradedSpace& space, std::span<const std::size_t> inputs) {
  std::vector<int> d;
  d.reserve(inputs.size());
  for (auto i : inputs) d.push_back(space.degree(i));
  return d;
}

std::vector<std::string> prefixed_names(const GradedSpace& space, const std::string& prefix) {
  std::vector<std::string> names;
  for (const auto& g : space.generators()) names.push_back(prefix + g.name);
  return names;
}

BracketSystem shift_system(const BracketSystem& src, std::vector<std::string> names, std::string id,
                           int degree_shift, Symmetry target) {
  if (names.size() != src.space().dimension())
    throw std::invalid_argument("generator name count does not match space dimension");
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < names.size(); ++i)
    gens.push_back(Generator{names[i], src.space().degree(i) + degree_shift});
  auto space = std::make_shared<const GradedSpace>(std::move(id), std::move(gens));
  BracketSystem out(space, target, src.max_arity());
  const GradedSpace& w_side = target == Symmetry::symmetric ? *space : src.space();
  for (std::size_t n = 1; n <= src.max_arity(); ++n) {
    for (const auto& [key, value] : src.table(n)) {
      int sign = suspension_sign(degrees_of(w_side, key));
      out.set(key, value * Rational(sign));
    }
  }
  return out;
}

}  // namespace

void for_each_canonical_tuple(std::size_t dim, std::size_t n,
                              const std::function<void(const BracketKey&)>& visit) {
  BracketKey key(n, 0);
  if (n == 0) {
    visit(key);
    return;
  }
  if (dim == 0) return;
  while (true) {
    visit(key);
    // Advance to the next non-decreasing tuple.
    std::size_t pos = n;
    while (pos > 0 && key[pos - 1] == dim - 1) --pos;
    if (pos == 0) return;
    ++key[pos - 1];
    for (std::size_t k = pos; k < n; ++k) key[k] = key[pos - 1];
  }
}

CanonicalForm canonicalize(const GradedSpace& space, Symmetry symmetry,
                           std::span<const std::size_t> inputs) {
  CanonicalForm form;
  form.key.assign(inputs.begin(), inputs.end());
  auto& key = form.key;
  for (std::size_t a = 1; a < key.size(); ++a) {
    for (std::size_t b = a; b > 0 && key[b - 1] > key[b]; --b) {
      form.sign *= swap_sign(symmetry, space.degree(key[b - 1]), space.degree(key[b]));
      std::swap(key[b - 1], key[b]);
    }
  }
  for (std::size_t a = 1; a < key.size(); ++a) {
    int d = space.degree(key[a]);
    if (key[a] == key[a - 1] && swap_sign(symmetry, d, d) == -1) form.forced_zero = true;
  }
  return form;
}

BracketSystem::BracketSystem(SpacePtr space, Symmetry symmetry, std::size_t max_arity)
    : space_(std::move(space)), symmetry_(symmetry), max_arity_(max_arity), tables_(max_arity + 1) {
  if (!space_) throw std::invalid_argument("bracket system needs a space");
}

int BracketSystem::bracket_degree(std::size_t n) const {
  return symmetry_ == Symmetry::skew ? 2 - static_cast<int>(n) : 1;
}

void BracketSystem::set(std::span<const std::size_t> inputs, const Element& value) {
  const std::size_t n = inputs.size();
  if (n == 0) throw std::invalid_argument("brackets have arity >= 1");
  if (n > max_arity_) throw TruncationError("bracket arity exceeds max_arity");
  int in_degree = 0;
  for (auto i : inputs) {
    if (i >= space_->dimension()) throw std::invalid_argument("generator index out of range");
    in_degree += space_->degree(i);
  }
  for (const auto& [i, c] : value.terms())
    if (i >= space_->dimension()) throw std::invalid_argument("output generator index out of range");
  auto out_degree = value.degree(*space_);
  auto form = canonicalize(*space_, symmetry_, inputs);
  auto& table = tables_[n];
  if (!out_degree) {
    table.erase(form.key);
    return;
  }
  if (*out_degree != bracket_degree(n) + in_degree) {
    std::ostringstream os;
    os << "degree rule violated for bracket on " << format_key(*space_, inputs) << ": output degree "
       << *out_degree << ", expected " << bracket_degree(n) + in_degree;
    throw std::invalid_argument(os.str());
  }
  if (form.forced_zero)
    throw std::invalid_argument("graded symmetry forces the bracket on " + format_key(*space_, inputs) +
                                " to vanish");
  table[form.key] = value * Rational(form.sign);
}

void BracketSystem::set_by_name(const std::vector<std::string>& inputs, const Element& value) {
  std::vector<std::size_t> idx;
  for (const auto& name : inputs) idx.push_back(space_->index_of(name));
  set(idx, value);
}

Element BracketSystem::eval(std::span<const std::size_t> inputs) const {
  const std::size_t n = inputs.size();
  if (n > max_arity_) throw TruncationError("bracket arity exceeds max_arity");
  if (n == 0) return {};
  for (auto i : inputs)
    if (i >= space_->dimension()) throw std::invalid_argument("generator index out of range");
  auto form = canonicalize(*space_, symmetry_, inputs);
  if (form.forced_zero) return {};
  const auto& table = tables_[n];
  auto it = table.find(form.key);
  if (it == table.end()) return {};
  return it->second * Rational(form.sign);
}

Element BracketSystem::eval(std::span<const BasisVector> inputs) const {
  std::vector<std::size_t> idx;
  for (const auto& b : inputs) {
    if (b.space_id != space_->id() || b.index >= space_->dimension() ||
        space_->generator(b.index).name != b.name)
      throw std::invalid_argument("basis vector '" + b.name + "' does not belong to space " + space_->id());
    idx.push_back(b.index);
  }
  return eval(idx);
}

Element BracketSystem::eval_with_first(const Element& first, std::span<const std::size_t> rest) const {
  Element out;
  std::vector<std::size_t> inputs(rest.size() + 1);
  std::copy(rest.begin(), rest.end(), inputs.begin() + 1);
  for (const auto& [i, c] : first.terms()) {
    inputs[0] = i;
    out += eval(inputs) * c;
  }
  return out;
}

const std::map<BracketKey, Element>& BracketSystem::table(std::size_t n) const {
  if (n > max_arity_) throw TruncationError("bracket arity exceeds max_arity");
  return tables_[n];
}

std::size_t BracketSystem::entry_count() const {
  std::size_t count = 0;
  for (const auto& t : tables_) count += t.size();
  return count;
}

BracketSystem BracketSystem::truncated(std::size_t max_arity) const {
  BracketSystem out(space_, symmetry_, max_arity);
  for (std::size_t n = 1; n <= std::min(max_arity, max_arity_); ++n) out.tables_[n] = tables_[n];
  return out;
}

bool BracketSystem::operator==(const BracketSystem& other) const {
  return *space_ == *other.space_ && symmetry_ == other.symmetry_ && max_arity_ == other.max_arity_ &&
         tables_ == other.tables_;
}

std::string format_key(const GradedSpace& space, std::span<const std::size_t> key) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < key.size(); ++k) os << (k ? ", " : "") << space.generator(key[k]).name;
  os << ")";
  return os.str();
}

std::optional<std::string> first_difference(const BracketSystem& a, const BracketSystem& b,
                                            std::size_t max_arity) {
  if (a.space().dimension() != b.space().dimension())
    return "spaces have different dimensions";
  for (std::size_t i = 0; i < a.space().dimension(); ++i) {
    const auto& ga = a.space().generator(i);
    const auto& gb = b.space().generator(i);
    if (ga.name != gb.name || ga.degree != gb.degree)
      return "generator " + std::to_string(i) + " differs: " + ga.name + " vs " + gb.name;
  }
  if (a.symmetry() != b.symmetry()) return "symmetry types differ";
  const std::size_t top = std::min({max_arity, a.max_arity(), b.max_arity()});
  for (std::size_t n = 1; n <= top; ++n) {
    std::map<BracketKey, std::pair<Element, Element>> merged;
    for (const auto& [k, v] : a.table(n)) merged[k].first = v;
    for (const auto& [k, v] : b.table(n)) merged[k].second = v;
    for (const auto& [k, pair] : merged) {
      if (pair.first == pair.second) continue;
      return "arity " + std::to_string(n) + " entry " + format_key(a.space(), k) + ": " +
             pair.first.to_string(a.space()) + " vs " + pair.second.to_string(b.space());
    }
  }
  return std::nullopt;
}

std::vector<Element> jacobi_terms(const BracketSystem& sys, std::span<const std::size_t> inputs) {
  const std::size_t n = inputs.size();
  if (sys.symmetry() != Symmetry::skew)
    throw std::invalid_argument("jacobi identities are stated for skew systems");
  if (n > sys.max_arity()) throw TruncationError("jacobi arity exceeds max_arity");
  const auto degrees = degrees_of(sys.space(), inputs);
  std::vector<Element> terms(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    for (const auto& sigma : unshuffles(i, n)) {
      auto arranged = permute<std::size_t>(sigma, inputs);
      Element inner = sys.eval(std::span<const std::size_t>(arranged).first(i));
      if (inner.is_zero()) continue;
      Element outer = sys.eval_with_first(inner, std::span<const std::size_t>(arranged).subspan(i));
      if (outer.is_zero()) continue;
      terms[i] += outer * Rational(koszul_sign(sigma, degrees) * perm_sign(sigma));
    }
  }
  return terms;
}

Element jacobi_defect(const BracketSystem& sys, std::span<const std::size_t> inputs) {
  const long long n = static_cast<long long>(inputs.size());
  auto terms = jacobi_terms(sys, inputs);
  Element defect;
  for (long long i = 1; i <= n; ++i) {
    const long long j = n + 1 - i;
    defect += terms[i] * Rational(minus_one_pow(i * (j - 1)));
  }
  return defect;
}

bool JacobiReport::passed() const {
  for (const auto& a : arities)
    if (!a.passed()) return false;
  return true;
}

JacobiReport verify_jacobi(const BracketSystem& sys, std::size_t n_max) {
  if (sys.symmetry() == Symmetry::symmetric) return verify_jacobi(suspend_system(sys), n_max);
  if (n_max > sys.max_arity()) throw TruncationError("n_max exceeds max_arity");
  JacobiReport report;
  report.space = sys.space_ptr();
  for (std::size_t n = 1; n <= n_max; ++n) {
    ArityReport ar;
    ar.arity = n;
    for_each_canonical_tuple(sys.space().dimension(), n, [&](const BracketKey& key) {
      if (ar.counterexample) return;
      ++ar.tuples_checked;
      Element defect = jacobi_defect(sys, key);
      if (!defect.is_zero()) ar.counterexample = JacobiCounterexample{key, std::move(defect)};
    });
    report.arities.push_back(std::move(ar));
  }
  return report;
}

int suspension_sign(std::span<const int> w_degrees) {
  const long long n = static_cast<long long>(w_degrees.size());
  long long exponent = n * (n - 1) / 2;
  for (long long l = 0; l < n; ++l) exponent += static_cast<long long>(parity(w_degrees[l])) * (n - 1 - l);
  return minus_one_pow(exponent);
}

BracketSystem desuspend_system(const BracketSystem& sys_v, std::optional<std::vector<std::string>> w_names,
                               std::string w_id) {
  if (sys_v.symmetry() != Symmetry::skew) throw std::invalid_argument("desuspension expects a skew system");
  auto names = w_names ? std::move(*w_names) : prefixed_names(sys_v.space(), "↓");
  return shift_system(sys_v, std::move(names), std::move(w_id), -1, Symmetry::symmetric);
}

BracketSystem suspend_system(const BracketSystem& sys_w, std::optional<std::vector<std::string>> v_names,
                             std::string v_id) {
  if (sys_w.symmetry() != Symmetry::symmetric)
    throw std::invalid_argument("suspension expects a symmetric system");
  auto names = v_names ? std::move(*v_names) : prefixed_names(sys_w.space(), "↑");
  return shift_system(sys_w, std::move(names), std::move(v_id), +1, Symmetry::skew);
}

}  // namespace linfty
