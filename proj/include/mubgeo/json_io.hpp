#pragma once

#include <string>

#include <json.hpp>

#include "mubgeo/affine.hpp"
#include "mubgeo/gf.hpp"
#include "mubgeo/hspace.hpp"
#include "mubgeo/mub.hpp"
#include "mubgeo/wigner.hpp"

namespace mubgeo {

using json = nlohmann::json;

// complex matrices serialize as arrays of [re, im] pairs, row-major
json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j);

json field_to_json(const FieldTable& F);
/// Rebuilds the derived tables (add, inv, trace) from {p, k, modulus, mul}.
FieldTable field_from_json(const json& j);

json plane_to_json(const AffinePlane& plane);
AffinePlane plane_from_json(const json& j);

json mubset_to_json(const MubSet& mubs);
MubSet mubset_from_json(const json& j);

json dsimplex_to_json(const DSimplex& D);
/// Validates the choice maps against the plane and rechecks the Gram
/// identity before accepting the operators.
DSimplex dsimplex_from_json(const json& j);

json wigner_to_json(const WignerTable& table);

/// Per-pencil line probabilities as CSV: one line per pencil.
std::string line_probabilities_to_csv(const LineProbabilities& probs);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

/// Field tables memoized under MUBGEO_CACHE_DIR when the variable is set.
FieldTable field_create_cached(int p, int k, int order_cap = kDefaultFieldCap);

}  // namespace mubgeo
