#pragma once

#include "json.hpp"
#include "quiverkit/complexes.hpp"

namespace quiverkit {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// --- scalars and matrices ---
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const FieldPtr& f, const json& j);
ordered_json matrix_to_json(const Matrix& m);
ordered_json vec_to_json(const Vec& v);

// --- presentations / classifications ---
ordered_json presentation_to_json(const Presentation& p);
ordered_json classification_to_json(const Classification& c);

// --- manual algebra entry: { field, dimension, unit, structureConstants, radicalBasis? } ---
AlgebraPtr algebra_from_json(const json& j);
ordered_json algebra_to_json(const AssocAlgebra& a);

// --- group actions: { elements, table, action: { g: {vertices, arrows} | {matrix} } } ---
GroupAction group_action_from_json(const AlgebraPtr& a, const json& j);

// --- complexes: { lo, terms: [[vertex labels]], diffs: [[[ [{path, coeff}] ]]] } ---
ordered_json complex_to_json(const ProjComplex& c);
ProjComplex complex_from_json(const AlgebraPtr& a, const json& j);

// --- dimension vectors: "0:1,-1:2" and JSON maps ---
DimVector dim_vector_from_string(const std::string& s);
ordered_json dim_vector_to_json(const DimVector& v);

// --- witnesses and experiments ---
ordered_json witness_to_json(const WitnessReport& w);
ordered_json experiment_to_json(const ExperimentReport& e);

/// FNV-1a 64-bit content hash, as fixed-width hex (deterministic input tag).
std::string fnv1a64_hex(const std::string& data);

}  // namespace quiverkit
