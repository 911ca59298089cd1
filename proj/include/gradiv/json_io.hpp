#pragma once

#include "gradiv/capacity.hpp"
#include "gradiv/continuous.hpp"
#include "gradiv/discrete.hpp"
#include "gradiv/ordered.hpp"
#include "gradiv/quadrature.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gradiv::io {

/// Field order is significant in every emitted document.
using Json = nlohmann::ordered_json;

/// The input schemas the CLI understands.
enum class DocumentKind { grading, distribution, masses, capacity, continuous, quadrature };

[[nodiscard]] std::string to_string(DocumentKind kind);
/// Throws invalid_input for an unknown name.
[[nodiscard]] DocumentKind document_kind_from_string(const std::string& name);
/// Infers the schema from its distinguishing key.
[[nodiscard]] DocumentKind detect_kind(const Json& doc);

/// Throws invalid_input on malformed text.
[[nodiscard]] Json parse(const std::string& text);

// Every *_from_json throws invalid_input on a schema or invariant violation.

[[nodiscard]] GradingSample grading_from_json(const Json& doc);
[[nodiscard]] Json to_json(const GradingSample& sample);

[[nodiscard]] ProbabilityVector distribution_from_json(const Json& doc);
[[nodiscard]] Json to_json(const ProbabilityVector& dist);

/// {"masses": [numbers >= 0]}
[[nodiscard]] std::vector<double> masses_from_json(const Json& doc);
[[nodiscard]] Json masses_to_json(const std::vector<double>& masses);

/// Keys are comma-separated 1-based element lists ("" for ∅); all 2^n
/// subsets must be present exactly once.
[[nodiscard]] Capacity capacity_from_json(const Json& doc);
/// Keys are emitted in subset-mask order with elements sorted.
[[nodiscard]] Json to_json(const Capacity& mu);
[[nodiscard]] std::string subset_key(SubsetMask subset);

[[nodiscard]] ContinuousGrading continuous_from_json(const Json& doc);
[[nodiscard]] Json to_json(const ContinuousGrading& grading);

/// Missing fields keep their defaults.
[[nodiscard]] QuadratureSpec quadrature_from_json(const Json& doc);
[[nodiscard]] Json to_json(const QuadratureSpec& spec);

/// {"value": number | "-inf", "terms_used", "dropped_mass", "error_estimate", "flags"}
[[nodiscard]] Json to_json(const DivergenceResult& result);
[[nodiscard]] Json to_json(const CapacityEntropyReport& report);

/// Parses a document of the given kind and re-serializes it canonically.
[[nodiscard]] Json canonicalize(const Json& doc, DocumentKind kind);

} // namespace gradiv::io
