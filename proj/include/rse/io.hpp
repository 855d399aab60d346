#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rse/dynamics.hpp"
#include "rse/lattice.hpp"
#include "rse/mixing.hpp"
#include "rse/operators.hpp"

// Wire formats. Rationals are strings ("p/q" reduced, or an integer);
// elements are arrays of such strings. Object keys are emitted sorted, so
// serialization is byte-stable.
//
// System:   {"dimension": n, "map": [sigma(0), ...], "partition": [[...], ...],
//            "weights": ["1/4", ...]}
//           plus {"tensor_of": [left, right]} for product systems, whose
//           composite fields are stored explicitly and re-validated.
// Sequence: {"preperiod": [[...], ...], "period": [[...], ...]}

namespace rse {

using Json = nlohmann::json;

/// Input that does not match a schema.
struct SchemaError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SystemDocument {
  CEPS system;
  std::vector<SystemDocument> factors;  // empty, or {left, right}
};

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json element_to_json(const Element& e);
Element element_from_json(const Json& j);
Json component_to_json(const Component& p);

Json system_to_json(const CEPS& sys);
Json document_to_json(const SystemDocument& doc);
/// Throws SchemaError, NotMeasurePreserving (the system itself fails T S = T)
/// or DimensionMismatch.
SystemDocument document_from_json(const Json& j);
SystemDocument tensor_document(const SystemDocument& left, const SystemDocument& right);

Json sequence_to_json(const EventuallyPeriodicSeq& seq);
EventuallyPeriodicSeq sequence_from_json(const Json& j);

/// Terms 0..horizon-1 of a sequence file. Accepted forms:
///   {"preperiod": [...], "period": [...]}   expanded periodically
///   {"prefix": [[...], ...]}                 must hold at least `horizon` terms
///   {"generator": "squares", "dimension": n} e on perfect squares, else 0
std::vector<Element> sequence_terms_from_json(const Json& j, std::uint64_t horizon);

Json report_to_json(const MixingReport& report);
Json certificate_to_json(const DensityCertificate& cert);
Json kvn_to_json(const KvnResult& result);

/// Two-space indent plus trailing newline.
std::string dump(const Json& j);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace rse
