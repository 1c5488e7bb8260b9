#include "cli.hpp"

#include "linfty/document.hpp"
#include "linfty/errors.hpp"
#include "linfty/examples.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

namespace linfty::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::size_t max_arity = 8;
  unsigned degree = 10;
  std::size_t order = 32;
  std::vector<std::size_t> dims{2, 3};
  bool json = false;
  std::string which;
  long n_max = 0;
  bool check = false;
  std::string output;
  std::string side = "v";
};

bool is_builtin(const std::string& name) { return name == "example1" || name == "example2"; }

ExampleSystems builtin(const Options& o, std::size_t max_arity) {
  if (o.input == "example1") return example1_system(max_arity, o.order);
  const std::size_t d0 = o.dims.at(0), d1 = o.dims.at(1);
  return example2_system(d0, d1, d1, max_arity, o.order);
}

std::string key_text(const GradedSpace& space, std::span<const std::size_t> key) {
  return format_key(space, key);
}

json key_json(const GradedSpace& space, std::span<const std::size_t> key) {
  json names = json::array();
  for (auto i : key) names.push_back(space.generator(i).name);
  return names;
}

json element_json(const Element& e, const GradedSpace& space) {
  json terms = json::array();
  for (const auto& [i, c] : e.terms()) terms.push_back({{"gen", space.generator(i).name}, {"coeff", format_rational(c)}});
  return terms;
}

// Lowest nonzero coefficient of a series, or nullopt for zero.
std::optional<std::pair<std::size_t, Rational>> first_nonzero(const Series& s) {
  for (std::size_t k = 0; k <= s.order(); ++k)
    if (s[k] != 0) return std::pair{k, s[k]};
  return std::nullopt;
}

std::string monomial_text(const MultiIndex& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += " ";
    out += "p" + (m.size() > 1 ? std::to_string(i + 1) : std::string()) + "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

struct Residual {
  std::string name;
  std::size_t order;
  std::optional<std::string> first_term;  // nullopt when zero
};

Residual residual_of(std::string name, const MomentumSeries& s) {
  Residual r{std::move(name), s.order(), std::nullopt};
  if (!s.is_zero()) {
    const auto& [m, c] = *s.terms().begin();
    r.first_term = format_rational(c) + " " + monomial_text(m);
  }
  return r;
}

Residual residual_of(std::string name, const Series& s) {
  Residual r{std::move(name), s.order(), std::nullopt};
  if (auto t = first_nonzero(s)) r.first_term = format_rational(t->second) + " P^" + std::to_string(t->first);
  return r;
}

void emit(std::ostream& out, const Options& o, const json& report, const std::string& text) {
  if (o.json)
    out << report.dump(2) << "\n";
  else
    out << text;
}

// -- verify ------------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  std::optional<BracketSystem> sys;
  if (is_builtin(o.input)) {
    sys = builtin(o, o.max_arity).v;
  } else {
    auto doc = load_document(o.input);
    if (doc.brackets)
      sys = std::move(*doc.brackets);
    else
      sys = brackets_from_delta(*doc.delta, o.max_arity);
  }
  const std::size_t n_max = std::min(o.max_arity, sys->max_arity());
  const JacobiReport report = verify_jacobi(*sys, n_max);
  const GradedSpace& space = *report.space;

  std::ostringstream text;
  text << "verify " << o.input << ": " << space.dimension() << " generators, arities 1.." << n_max << "\n";
  if (n_max < o.max_arity) text << "  note: the system defines brackets only up to arity " << n_max << "\n";
  json arities = json::array();
  for (const auto& a : report.arities) {
    json entry{{"arity", a.arity}, {"tuples", a.tuples_checked}, {"passed", a.passed()}};
    text << "  arity " << a.arity << ": ";
    if (a.passed()) {
      text << "ok (" << a.tuples_checked << " tuples)\n";
    } else {
      const auto& ce = *a.counterexample;
      text << "FAIL at " << key_text(space, ce.inputs) << ", defect = " << ce.defect.to_string(space) << "\n";
      entry["counterexample"] = {{"inputs", key_json(space, ce.inputs)}, {"defect", element_json(ce.defect, space)}};
    }
    arities.push_back(entry);
  }
  text << "result: " << (report.passed() ? "PASS" : "FAIL") << "\n";
  json j{{"command", "verify"}, {"input", o.input}, {"max_arity", n_max}, {"arities", arities},
         {"passed", report.passed()}};
  emit(out, o, j, text.str());
  return report.passed() ? exit_pass : exit_fail;
}

// -- delta-check ---------------------------------------------------------------

DeltaSpec load_delta(const Options& o) {
  if (is_builtin(o.input)) {
    auto ex = builtin(o, 2);
    if (!ex.delta) throw UsageError("this builtin has no Delta form; use --dims 2,N");
    return std::move(*ex.delta);
  }
  auto doc = load_document(o.input);
  if (doc.delta) return std::move(*doc.delta);
  const BracketSystem& b = *doc.brackets;
  return delta_from_brackets(b.symmetry() == Symmetry::skew ? desuspend_system(b, std::nullopt, "W") : b);
}

int cmd_delta_check(const Options& o, std::ostream& out) {
  const DeltaSpec spec = load_delta(o);
  if (o.degree + 1 > spec.order())
    throw UsageError("--degree " + std::to_string(o.degree) + " needs series of order at least " +
                     std::to_string(o.degree + 1) + ", the Delta form has order " + std::to_string(spec.order()));
  const DeltaSquaredReport sq = delta_squared_check(spec, o.degree);

  // Multivariate residual products grow quickly; the degree bound is what the
  // operator check certifies, so it also caps the residual order.
  const std::size_t residual_order = spec.bosons() == 1 ? spec.order() - 1 : std::min<std::size_t>(spec.order() - 1, o.degree);
  const NilpotencyResiduals res = nilpotency_conditions(spec, residual_order);
  std::vector<Residual> residuals;
  for (std::size_t i = 0; i < res.first.size(); ++i)
    residuals.push_back(residual_of("first[" + std::to_string(i + 1) + "]", res.first[i]));
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      residuals.push_back(
          residual_of("second[" + std::to_string(a + 1) + "][" + std::to_string(b + 1) + "]", res.second[a][b]));
  for (std::size_t i = 0; i < res.third.size(); ++i)
    residuals.push_back(residual_of("third[" + std::to_string(i + 1) + "]", res.third[i]));
  if (spec.bosons() == 1)
    residuals.push_back(residual_of("one-boson", nilcheck_one_boson(spec.f(0).to_series(), spec.f(1).to_series(),
                                                                    spec.g(0, 0).to_series(),
                                                                    spec.g(1, 0).to_series())));
  if (spec.structural_G()) residuals.push_back(residual_of("structural-ode", structural_ode_residual(*spec.structural_G())));

  bool passed = sq.passed();
  for (const auto& r : residuals) passed = passed && !r.first_term;

  const auto w = spec.w_space();
  std::ostringstream text;
  text << "delta-check " << o.input << ": N = " << spec.bosons() << ", order " << spec.order() << ", degree bound "
       << o.degree << "\n";
  text << "  Delta^2: " << sq.monomials_checked << " monomials, ";
  json delta_sq{{"monomials", sq.monomials_checked}, {"passed", sq.passed()}};
  if (sq.passed()) {
    text << "ok\n";
  } else {
    text << "FAIL at " << sq.witness->to_string() << ", Delta^2 = " << sq.residue->to_string() << "\n";
    delta_sq["witness"] = sq.witness->to_string();
    delta_sq["residue"] = sq.residue->to_string();
  }
  json series = json::array();
  for (const auto& r : residuals) {
    text << "  residual " << r.name << " (order " << r.order << "): " << (r.first_term ? "nonzero, first term " + *r.first_term : "0")
         << "\n";
    json e{{"name", r.name}, {"order", r.order}, {"zero", !r.first_term}};
    if (r.first_term) e["first_term"] = *r.first_term;
    series.push_back(e);
  }
  text << "result: " << (passed ? "PASS" : "FAIL") << "\n";
  json j{{"command", "delta-check"}, {"input", o.input}, {"degree", o.degree}, {"order", spec.order()},
         {"delta_squared", delta_sq}, {"residuals", series}, {"passed", passed}};
  emit(out, o, j, text.str());
  return passed ? exit_pass : exit_fail;
}

// -- compare -----------------------------------------------------------------

int cmd_compare(const Options& o, std::ostream& out) {
  std::optional<BracketSystem> declared;
  std::optional<DeltaSpec> spec;
  if (is_builtin(o.input)) {
    auto ex = builtin(o, o.max_arity);
    if (!ex.delta) throw UsageError("this builtin has no Delta form; use --dims 2,N");
    declared = std::move(ex.w);
    spec = std::move(ex.delta);
  } else {
    auto doc = load_document(o.input);
    if (!doc.brackets || !doc.delta) throw UsageError("compare needs a document with both brackets and delta");
    spec = std::move(doc.delta);
    declared = std::move(doc.brackets);
  }
  const auto w = spec->w_space();
  std::optional<std::string> diff;
  if (declared->symmetry() == Symmetry::skew) {
    if (declared->space().dimension() != w->dimension())
      diff = "space: " + std::to_string(declared->space().dimension()) + " generators declared, " +
             std::to_string(w->dimension()) + " in the Delta form";
    else {
      std::vector<std::string> names;
      for (const auto& g : w->generators()) names.push_back(g.name);
      declared = desuspend_system(*declared, names, w->id());
    }
  }
  const std::size_t n = std::min(o.max_arity, declared->max_arity());
  if (!diff) {
    const BracketSystem rebuilt = brackets_from_delta(*spec, n);
    diff = first_difference(*declared, rebuilt, n);
  }
  std::ostringstream text;
  text << "compare " << o.input << ": declared W brackets vs brackets generated by Delta, arities 1.." << n << "\n";
  text << (diff ? "  first difference: " + *diff + "\n" : "  identical\n");
  text << "result: " << (diff ? "FAIL" : "PASS") << "\n";
  json j{{"command", "compare"}, {"input", o.input}, {"max_arity", n}, {"passed", !diff}};
  if (diff) j["first_difference"] = *diff;
  emit(out, o, j, text.str());
  return diff ? exit_fail : exit_pass;
}

// -- coefficients --------------------------------------------------------------

int cmd_coefficients(const Options& o, std::ostream& out) {
  const bool is_c = o.which == "c1" || o.which == "c2";
  if (is_c && o.n_max < 3) throw UsageError("c1 and c2 need n_max >= 3");
  if (o.n_max < 0) throw UsageError("n_max must be non-negative");
  const long first = is_c ? 3 : (o.which == "b" ? 0 : 1);

  std::map<long, Rational> values;
  // Whether values[n] agrees with the independent computation.
  std::function<bool(long)> agrees;
  std::string check_name;
  if (o.which == "c1") {
    for (long n = first; n <= o.n_max; ++n) values[n] = c1_closed(n);
    agrees = [&](long n) { return c1_recursive(n) == values[n]; };
    check_name = "closed form vs recursion";
  } else if (o.which == "c2") {
    for (long n = first; n <= o.n_max; ++n) values[n] = c2_daily(n);
    agrees = [&](long n) {
      const Rational w = desuspended_coefficient(n, values[n]);
      return w == Rational(ipow(Integer(2 - n), static_cast<unsigned long>(n - 2))) && w == b_closed(n - 1);
    };
    check_name = "desuspended recursion vs (2-n)^(n-2) = B_(n-1)";
  } else if (o.which == "b") {
    for (long m = first; m <= o.n_max; ++m) values[m] = b_closed(m);
    agrees = [&, g = o.check ? g_series(static_cast<std::size_t>(o.n_max)) : Series()](long m) {
      return g[static_cast<std::size_t>(m)] * Rational(factorial(static_cast<unsigned long>(m))) == values[m];
    };
    check_name = "closed form vs ODE solution";
  } else {
    for (long n = first; n <= o.n_max; ++n) values[n] = Rational(ipow(Integer(-n), static_cast<unsigned long>(n - 1)));
    agrees = [&, w = o.check ? lambert_w_series(static_cast<std::size_t>(std::max(o.n_max, 1L))) : Series()](long n) {
      return w[static_cast<std::size_t>(n)] * Rational(factorial(static_cast<unsigned long>(n))) == values[n];
    };
    check_name = "closed form vs series inversion";
  }

  std::optional<long> mismatch;
  if (o.check)
    for (const auto& [n, v] : values)
      if (!agrees(n)) {
        mismatch = n;
        break;
      }

  std::ostringstream text;
  json table = json::object();
  for (const auto& [n, v] : values) {
    text << n << " " << format_rational(v) << "\n";
    table[std::to_string(n)] = format_rational(v);
  }
  json j{{"command", "coefficients"}, {"which", o.which}, {"n_max", o.n_max}, {"values", table}};
  if (o.check) {
    text << "check (" << check_name << "): ";
    text << (mismatch ? "MISMATCH at " + std::to_string(*mismatch) : std::string("ok")) << "\n";
    j["check"] = {{"name", check_name}, {"passed", !mismatch}};
    if (mismatch) j["check"]["mismatch_at"] = *mismatch;
  }
  emit(out, o, j, text.str());
  return mismatch ? exit_fail : exit_pass;
}

// -- export ------------------------------------------------------------------

int cmd_export(const Options& o, std::ostream& out) {
  SystemDocument doc;
  if (is_builtin(o.input)) {
    auto ex = builtin(o, o.max_arity);
    doc.brackets = o.side == "w" ? std::move(ex.w) : std::move(ex.v);
    doc.delta = std::move(ex.delta);
  } else {
    doc = load_document(o.input);
  }
  if (o.output.empty())
    out << dump_document(doc) << "\n";
  else
    save_document(doc, o.output);
  return exit_pass;
}

void add_input(CLI::App* cmd, Options& o) {
  cmd->add_option("input", o.input, "builtin name (example1, example2) or path to a system document")->required();
  cmd->add_option("--dims", o.dims, "example2 dimensions dim V0,dim V1")
      ->delimiter(',')
      ->expected(2)
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Verification engine for finite-dimensional L-infinity algebras", "linfty"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "check the generalized Jacobi identities");
  add_input(verify, o);
  verify->add_option("--max-arity", o.max_arity, "highest arity to check")->capture_default_str();
  verify->add_flag("--json", o.json, "machine-readable report");

  auto* delta = app.add_subcommand("delta-check", "check Delta^2 = 0 and the series conditions");
  add_input(delta, o);
  delta->add_option("--degree", o.degree, "boson degree bound")->capture_default_str();
  delta->add_option("--order", o.order, "series order for builtins")->capture_default_str();
  delta->add_flag("--json", o.json, "machine-readable report");

  auto* compare = app.add_subcommand("compare", "compare declared W brackets with those generated by Delta");
  add_input(compare, o);
  compare->add_option("--max-arity", o.max_arity, "highest arity to compare")->capture_default_str();
  compare->add_option("--order", o.order, "series order for builtins")->capture_default_str();
  compare->add_flag("--json", o.json, "machine-readable report");

  auto* coeffs = app.add_subcommand("coefficients", "print exact coefficient tables");
  coeffs->add_option("which", o.which, "c1, c2, b or lambert")->required()->check(CLI::IsMember({"c1", "c2", "b", "lambert"}));
  coeffs->add_option("n_max", o.n_max, "largest index")->required();
  coeffs->add_flag("--check", o.check, "cross-validate against an independent computation");
  coeffs->add_flag("--json", o.json, "machine-readable report");

  auto* exp = app.add_subcommand("export", "write a system document");
  add_input(exp, o);
  exp->add_option("-o,--output", o.output, "output path (default: stdout)");
  exp->add_option("--side", o.side, "bracket formulation for builtins: v (skew) or w (symmetric)")
      ->check(CLI::IsMember({"v", "w"}))
      ->capture_default_str();
  exp->add_option("--max-arity", o.max_arity, "highest arity for builtins")->capture_default_str();
  exp->add_option("--order", o.order, "series order for builtins")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_pass : exit_usage;
  }

  try {
    if (o.input == "example2" && o.dims.at(1) < o.dims.at(0)) throw UsageError("--dims needs dim V1 >= dim V0");
    if (verify->parsed()) return cmd_verify(o, out);
    if (delta->parsed()) return cmd_delta_check(o, out);
    if (compare->parsed()) return cmd_compare(o, out);
    if (coeffs->parsed()) return cmd_coefficients(o, out);
    return cmd_export(o, out);
  } catch (const ConsistencyError& e) {
    err << "inconsistent: " << e.what() << "\n";
    return exit_fail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace linfty::cli
