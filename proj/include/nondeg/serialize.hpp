#pragma once

// JSON encodings of spaces and subspaces. Field elements are written as their
// coefficient vectors over GF(p), constant term first.

#include <json.hpp>

#include "nondeg/formspace.hpp"

namespace nondeg {

nlohmann::json element_to_json(const Field& f, Elem a);
Elem element_from_json(const Field& f, const nlohmann::json& j);

nlohmann::json to_json(const Mat& m);
Mat mat_from_json(const Field& f, const nlohmann::json& j);

nlohmann::json to_json(const ClassicalSpace& V);
ClassicalSpace space_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Subspace& S);
Subspace subspace_from_json(const ClassicalSpace& V, const nlohmann::json& j);

}  // namespace nondeg
