#include "linfty/document.hpp"

#include "linfty/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace linfty {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw DocumentError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

Rational rational_field(const json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (!j.is_string()) throw DocumentError("rational values must be \"num/den\" strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw DocumentError(e.what());
  }
}

Series series_from_array(const json& arr) {
  if (!arr.is_array() || arr.empty()) throw DocumentError("a series must be a non-empty array of rationals");
  std::vector<Rational> c;
  for (const auto& v : arr) c.push_back(rational_field(v));
  return Series(std::move(c));
}

json series_to_array(const Series& s) {
  json arr = json::array();
  for (const auto& c : s.coefficients()) arr.push_back(format_rational(c));
  return arr;
}

// A generating function is either an array (a series in P = p^1 + ... + p^N)
// or {"total": [...], "terms": [{"m": [...], "coeff": "..."}]}, summed.
MomentumSeries momentum_from_json(const json& j, std::size_t bosons, std::size_t order) {
  MomentumSeries out(bosons, order);
  auto add_total = [&](const json& arr) {
    Series s = series_from_array(arr);
    if (s.order() < order) throw DocumentError("series shorter than the declared order");
    out += MomentumSeries::of_total(bosons, s.truncated(order));
  };
  if (j.is_array()) {
    add_total(j);
    return out;
  }
  if (!j.is_object()) throw DocumentError("generating function must be an array or an object");
  if (j.contains("total")) add_total(j.at("total"));
  if (j.contains("terms")) {
    for (const auto& t : j.at("terms")) {
      auto m = require(t, "m").get<MultiIndex>();
      if (m.size() != bosons) throw DocumentError("multi-index length does not match N");
      if (total_degree(m) > order) throw DocumentError("term beyond the declared order");
      out.set(m, out.coefficient(m) + rational_field(require(t, "coeff")));
    }
  }
  return out;
}

json momentum_to_json(const MomentumSeries& s) {
  if (s.bosons() == 1) return series_to_array(s.to_series());
  json terms = json::array();
  for (const auto& [m, c] : s.terms()) terms.push_back({{"m", m}, {"coeff", format_rational(c)}});
  return json{{"terms", terms}};
}

DeltaSpec delta_from_json(const json& d) {
  const auto n = require(d, "N").get<std::size_t>();
  const auto order = require(d, "order").get<std::size_t>();
  const bool selection_rule = d.value("selection_rule", true);
  if (d.contains("structural")) {
    Series G = series_from_array(require(d.at("structural"), "G"));
    if (G.order() < order) throw DocumentError("structural G shorter than the declared order");
    return DeltaSpec::structural(G.truncated(order), n);
  }
  DeltaSpec spec(n, order, selection_rule);
  auto pair = [&](const char* key) -> const json& {
    const json& v = require(d, key);
    if (!v.is_array() || v.size() != fermion_count) throw DocumentError(std::string("'") + key + "' needs 2 entries");
    return v;
  };
  const json& f = pair("f");
  const json& g = pair("g");
  for (std::size_t a = 0; a < fermion_count; ++a) {
    spec.set_f(a, momentum_from_json(f[a], n, order));
    if (!g[a].is_array() || g[a].size() != n) throw DocumentError("'g' rows need N entries");
    for (std::size_t i = 0; i < n; ++i) spec.set_g(a, i, momentum_from_json(g[a][i], n, order));
  }
  if (d.contains("h")) {
    const json& h = pair("h");
    for (std::size_t a = 0; a < fermion_count; ++a) spec.set_h(a, momentum_from_json(h[a], n, order));
  }
  return spec;
}

json delta_to_json(const DeltaSpec& spec) {
  json d{{"N", spec.bosons()}, {"order", spec.order()}, {"selection_rule", spec.selection_rule()}};
  if (spec.structural_G()) {
    d["structural"] = {{"G", series_to_array(*spec.structural_G())}};
    return d;
  }
  json f = json::array(), g = json::array(), h = json::array();
  for (std::size_t a = 0; a < fermion_count; ++a) {
    f.push_back(momentum_to_json(spec.f(a)));
    h.push_back(momentum_to_json(spec.h(a)));
    json row = json::array();
    for (std::size_t i = 0; i < spec.bosons(); ++i) row.push_back(momentum_to_json(spec.g(a, i)));
    g.push_back(row);
  }
  d["f"] = f;
  d["g"] = g;
  d["h"] = h;
  return d;
}

BracketSystem brackets_from_json(const json& doc) {
  std::vector<Generator> gens;
  for (const auto& g : require(doc, "space"))
    gens.push_back(Generator{require(g, "name").get<std::string>(), require(g, "degree").get<int>()});
  auto space = std::make_shared<const GradedSpace>(doc.value("space_id", std::string("V")), std::move(gens));
  const auto sym_name = require(doc, "symmetry").get<std::string>();
  Symmetry symmetry;
  if (sym_name == "skew")
    symmetry = Symmetry::skew;
  else if (sym_name == "symmetric")
    symmetry = Symmetry::symmetric;
  else
    throw DocumentError("symmetry must be 'skew' or 'symmetric'");
  BracketSystem sys(space, symmetry, doc.value("max_arity", BracketSystem::default_max_arity));
  for (const auto& entry : require(doc, "brackets")) {
    auto inputs = require(entry, "inputs").get<std::vector<std::string>>();
    Element out;
    for (const auto& term : require(entry, "output"))
      out.add_term(space->index_of(require(term, "gen").get<std::string>()), rational_field(require(term, "coeff")));
    sys.set_by_name(inputs, out);
  }
  return sys;
}

json brackets_to_json(const BracketSystem& sys) {
  json space = json::array();
  for (const auto& g : sys.space().generators()) space.push_back({{"name", g.name}, {"degree", g.degree}});
  json brackets = json::array();
  for (std::size_t n = 1; n <= sys.max_arity(); ++n) {
    for (const auto& [key, value] : sys.table(n)) {
      json inputs = json::array();
      for (auto i : key) inputs.push_back(sys.space().generator(i).name);
      json output = json::array();
      for (const auto& [i, c] : value.terms())
        output.push_back({{"gen", sys.space().generator(i).name}, {"coeff", format_rational(c)}});
      brackets.push_back({{"inputs", inputs}, {"output", output}});
    }
  }
  return json{{"space_id", sys.space().id()},
              {"space", space},
              {"symmetry", sys.symmetry() == Symmetry::skew ? "skew" : "symmetric"},
              {"max_arity", sys.max_arity()},
              {"brackets", brackets}};
}

}  // namespace

SystemDocument parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
  try {
    const auto version = require(doc, "version").get<std::string>();
    if (version != document_version) throw DocumentError("unsupported document version '" + version + "'");
    SystemDocument out;
    if (doc.contains("space") || doc.contains("brackets")) out.brackets = brackets_from_json(doc);
    if (doc.contains("delta")) out.delta = delta_from_json(doc.at("delta"));
    if (!out.brackets && !out.delta) throw DocumentError("document has neither brackets nor delta");
    return out;
  } catch (const DocumentError&) {
    throw;
  } catch (const json::exception& e) {
    throw DocumentError(std::string("schema error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DocumentError(e.what());
  } catch (const TruncationError& e) {
    throw DocumentError(e.what());
  }
}

SystemDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

std::string dump_document(const SystemDocument& doc, int indent) {
  json out = doc.brackets ? brackets_to_json(*doc.brackets) : json::object();
  out["version"] = document_version;
  if (doc.delta) out["delta"] = delta_to_json(*doc.delta);
  return out.dump(indent);
}

void save_document(const SystemDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DocumentError("cannot write '" + path + "'");
  out << dump_document(doc) << "\n";
}

}  // namespace linfty
