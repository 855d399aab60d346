#include "rse/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rse/errors.hpp"
#include "rse/tensor.hpp"

namespace rse {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::size_t index_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw SchemaError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

Json elements_to_json(const std::vector<Element>& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(element_to_json(e));
  return out;
}

std::vector<Element> elements_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of elements");
  std::vector<Element> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(element_from_json(e));
  return out;
}

std::string bit_string(const Component& p) {
  std::string s;
  s.reserve(p.dimension());
  for (auto b : p.bits()) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace

Json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  throw SchemaError("rational must be a string \"p/q\" or an integer");
}

Json element_to_json(const Element& e) {
  Json out = Json::array();
  for (const auto& x : e.coords()) out.push_back(rational_to_json(x));
  return out;
}

Element element_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw SchemaError("element must be a nonempty array");
  std::vector<Rational> coords;
  coords.reserve(j.size());
  for (const auto& x : j) coords.push_back(rational_from_json(x));
  return Element(std::move(coords));
}

Json component_to_json(const Component& p) { return bit_string(p); }

Json system_to_json(const CEPS& sys) {
  Json out;
  out["dimension"] = sys.dimension();
  out["map"] = sys.S().sigma();
  out["partition"] = sys.T().blocks();
  Json weights = Json::array();
  for (const auto& w : sys.T().weights()) weights.push_back(rational_to_json(w));
  out["weights"] = std::move(weights);
  return out;
}

Json document_to_json(const SystemDocument& doc) {
  Json out = system_to_json(doc.system);
  if (!doc.factors.empty()) {
    out["tensor_of"] = Json::array({document_to_json(doc.factors[0]), document_to_json(doc.factors[1])});
  }
  return out;
}

SystemDocument document_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("system must be a JSON object");
  const std::size_t n = index_from_json(field(j, "dimension"), "dimension");
  if (n == 0) throw SchemaError("dimension must be >= 1");

  const Json& weights_json = field(j, "weights");
  const Json& partition_json = field(j, "partition");
  const Json& map_json = field(j, "map");
  if (!weights_json.is_array() || weights_json.size() != n) {
    throw SchemaError("weights must be an array of length dimension");
  }
  if (!map_json.is_array() || map_json.size() != n) {
    throw SchemaError("map must be an array of length dimension");
  }
  if (!partition_json.is_array()) throw SchemaError("partition must be an array of blocks");

  std::vector<Rational> weights;
  for (const auto& w : weights_json) weights.push_back(rational_from_json(w));
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& b : partition_json) {
    if (!b.is_array()) throw SchemaError("partition block must be an array");
    std::vector<std::size_t> block;
    for (const auto& i : b) block.push_back(index_from_json(i, "partition index"));
    blocks.push_back(std::move(block));
  }
  std::vector<std::size_t> sigma;
  for (const auto& s : map_json) sigma.push_back(index_from_json(s, "map value"));

  std::optional<ConditionalExpectationOp> T;
  std::optional<RieszHomMap> S;
  try {
    T.emplace(std::move(blocks), std::move(weights));
    S.emplace(std::move(sigma));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  SystemDocument doc{validate_ceps(*T, *S), {}};

  if (j.contains("tensor_of")) {
    const Json& parts = j.at("tensor_of");
    if (!parts.is_array() || parts.size() != 2) throw SchemaError("tensor_of must hold two systems");
    doc.factors.push_back(document_from_json(parts[0]));
    doc.factors.push_back(document_from_json(parts[1]));
    if (!(tensor_ceps(doc.factors[0].system, doc.factors[1].system) == doc.system)) {
      throw SchemaError("stored composite does not match the tensor product of its factors");
    }
  }
  return doc;
}

SystemDocument tensor_document(const SystemDocument& left, const SystemDocument& right) {
  return SystemDocument{tensor_ceps(left.system, right.system), {left, right}};
}

Json sequence_to_json(const EventuallyPeriodicSeq& seq) {
  return Json{{"preperiod", elements_to_json(seq.preperiod())},
              {"period", elements_to_json(seq.period())}};
}

EventuallyPeriodicSeq sequence_from_json(const Json& j) {
  try {
    return EventuallyPeriodicSeq(elements_from_json(field(j, "preperiod")),
                                 elements_from_json(field(j, "period")));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

std::vector<Element> sequence_terms_from_json(const Json& j, std::uint64_t horizon) {
  if (!j.is_object()) throw SchemaError("sequence must be a JSON object");
  std::vector<Element> out;
  out.reserve(horizon);
  if (j.contains("generator")) {
    const Json& name = j.at("generator");
    if (!name.is_string() || name.get<std::string>() != "squares") {
      throw SchemaError("unknown sequence generator (supported: \"squares\")");
    }
    const std::size_t n = index_from_json(field(j, "dimension"), "dimension");
    if (n == 0) throw SchemaError("dimension must be >= 1");
    std::uint64_t root = 0;
    for (std::uint64_t k = 0; k < horizon; ++k) {
      while ((root + 1) * (root + 1) <= k) ++root;
      out.push_back(root * root == k ? Element::unit(n) : Element::zero(n));
    }
    return out;
  }
  if (j.contains("prefix")) {
    auto terms = elements_from_json(j.at("prefix"));
    if (terms.size() < horizon) throw SchemaError("prefix is shorter than the horizon");
    terms.resize(horizon, terms.front());
    return terms;
  }
  const auto seq = sequence_from_json(j);
  for (std::uint64_t k = 0; k < horizon; ++k) out.push_back(seq.value(k));
  return out;
}

Json report_to_json(const MixingReport& report) {
  Json witnesses = Json::array();
  if (report.ergodic_witness) {
    const auto& w = *report.ergodic_witness;
    witnesses.push_back({{"kind", "ergodic"},
                         {"i", w.i},
                         {"j", w.j},
                         {"limit", element_to_json(w.limit)},
                         {"target", element_to_json(w.target)},
                         {"gap", element_to_json(w.gap)}});
  }
  if (report.mixing_witness) {
    const auto& w = *report.mixing_witness;
    witnesses.push_back({{"kind", "weak_mixing"},
                         {"i", w.i},
                         {"j", w.j},
                         {"k", w.k},
                         {"value", element_to_json(w.value)},
                         {"target", element_to_json(w.target)},
                         {"deviation", element_to_json(w.deviation)},
                         {"residual", element_to_json(w.residual)}});
  }
  return Json{{"ergodic", report.ergodic},
              {"weak_mixing", report.weak_mixing},
              {"witnesses", std::move(witnesses)},
              {"routes",
               {{"operator_equality", report.operator_equality},
                {"component_limits", report.component_limits}}},
              {"route_agreement", report.route_agreement}};
}

Json certificate_to_json(const DensityCertificate& cert) {
  Json out;
  out["mode"] = cert.mode == DensityMode::Exact ? "exact" : "prefix";
  out["horizon"] = cert.horizon;
  if (cert.mode == DensityMode::Exact) {
    out["density_zero"] = cert.density_zero;
  } else {
    out["consistent_with_density_zero"] = cert.density_zero;
  }
  if (cert.limit) out["limit"] = element_to_json(*cert.limit);
  Json checkpoints = Json::array();
  for (const auto& c : cert.checkpoints) {
    checkpoints.push_back({{"n", c.n}, {"average", element_to_json(c.average)}});
  }
  out["checkpoints"] = std::move(checkpoints);
  return out;
}

Json kvn_to_json(const KvnResult& result) {
  Json components = Json::array();
  for (const auto& p : result.components) components.push_back(bit_string(p));
  return Json{{"horizon", result.components.size()},
              {"switch_points", result.switch_points},
              {"levels_available", result.thresholds.size()},
              {"components", std::move(components)},
              {"certificate", certificate_to_json(result.certificate)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace rse
