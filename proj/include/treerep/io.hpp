#pragma once

#include <random>
#include <string>

#include <json.hpp>

#include "treerep/decomposition.hpp"
#include "treerep/group_action.hpp"
#include "treerep/linalg.hpp"
#include "treerep/synthesis.hpp"

namespace treerep {

using Json = nlohmann::ordered_json;

/// Scalars travel as exact strings; `approx` adds a decimal sibling under
/// "<key>_approx" in the object helpers below.
void put_scalar(Json& object, const std::string& key, const Scalar& value, bool approx);
Json scalar_json(const Scalar& value);
Scalar scalar_from_json(const Json& j);

Json eigenfunction_to_json(const EigenFunction& h);
/// Throws std::invalid_argument for malformed input and std::domain_error
/// when the values do not satisfy the eigen equation.
EigenFunction eigenfunction_from_json(const Json& j);

Json word_to_json(const Automorphism& g);
Automorphism word_from_json(const TreeShape& shape, const Json& j);

Json combination_to_json(const TranslateCombination& c, bool approx);

std::string gram_csv(const Matrix& m);

/// Seeded element of H_0 + ... + H_cutoff with small integer coordinates.
EigenFunction random_element(const TreeShape& shape, const Scalar& alpha, int cutoff, std::mt19937_64& rng);

}  // namespace treerep
