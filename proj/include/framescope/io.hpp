#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "framescope/core.hpp"
#include "framescope/verdicts.hpp"
#include "framescope/weak.hpp"

namespace framescope {

using InputObject = std::variant<Frame, ProjectionSystem>;

// Wire format: {"field": "real"|"complex", "dim": m, "vectors": [...]} for
// frames, with "subspaces" (lists of basis vectors) for projection systems.
// Complex entries are [re, im] pairs; real-field entries are plain numbers.
nlohmann::json to_json(const Frame& frame);
nlohmann::json to_json(const ProjectionSystem& system);

// Certificates serialize as {"kind": ..., "payload": {...}}.
nlohmann::json to_json(const Certificate& cert, Field field);
nlohmann::json measurements_to_json(const Measurements& meas);

// Dense symmetric matrix with null diagonal entries.
nlohmann::json products_to_json(const ProductRelations& rel);
ProductRelations products_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const Eigen::VectorXcd& v, Field field);
Eigen::VectorXcd vector_from_json(const nlohmann::json& j, Field field,
                                  const std::string& context);

Frame frame_from_json(const nlohmann::json& j);
ProjectionSystem system_from_json(const nlohmann::json& j);
Measurements measurements_from_json(const nlohmann::json& j);

// Dispatches on the "vectors" / "subspaces" key.
InputObject input_from_json(const nlohmann::json& j);

// File helpers; parse failures are reported with line diagnostics.
nlohmann::json load_json_file(const std::string& path);
InputObject load_input_file(const std::string& path);
Measurements load_measurements_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace framescope
