#include "framescope/io.hpp"

#include <fstream>
#include <sstream>

namespace framescope {

namespace {

// nlohmann reports parse failures by byte offset; translate to line:column.
[[noreturn]] void rethrow_parse_error(const std::string& path,
                                      const std::string& text,
                                      const nlohmann::json::parse_error& e) {
  std::size_t line = 1, col = 1;
  const std::size_t stop = std::min(
      e.byte > 0 ? static_cast<std::size_t>(e.byte - 1) : 0, text.size());
  for (std::size_t i = 0; i < stop; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream msg;
  msg << path << ":" << line << ":" << col << ": " << e.what();
  throw InputError(msg.str());
}

double number_at(const nlohmann::json& j, const std::string& context) {
  if (!j.is_number()) {
    throw InputError(context + ": expected a number");
  }
  return j.get<double>();
}

Field field_from_json(const nlohmann::json& j) {
  if (!j.contains("field") || !j["field"].is_string()) {
    throw InputError("missing or non-string \"field\"");
  }
  const std::string f = j["field"].get<std::string>();
  if (f == "real") return Field::Real;
  if (f == "complex") return Field::Complex;
  throw InputError("unknown field \"" + f + "\" (expected real or complex)");
}

int dim_from_json(const nlohmann::json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw InputError("missing or non-integer \"dim\"");
  }
  const int dim = j["dim"].get<int>();
  if (dim < 1) throw InputError("\"dim\" must be positive");
  return dim;
}

}  // namespace

nlohmann::json vector_to_json(const Eigen::VectorXcd& v, Field field) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) {
    if (field == Field::Real) {
      out.push_back(v(i).real());
    } else {
      out.push_back(nlohmann::json::array({v(i).real(), v(i).imag()}));
    }
  }
  return out;
}

Eigen::VectorXcd vector_from_json(const nlohmann::json& j, Field field,
                                  const std::string& context) {
  if (!j.is_array()) throw InputError(context + ": expected an array");
  Eigen::VectorXcd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = context + "[" + std::to_string(i) + "]";
    const nlohmann::json& e = j[i];
    if (e.is_number()) {
      // Plain numbers are accepted in both fields.
      v(static_cast<int>(i)) = Complex(e.get<double>(), 0.0);
    } else if (e.is_array() && field == Field::Complex) {
      if (e.size() != 2) {
        throw InputError(at + ": complex entry must be [re, im]");
      }
      v(static_cast<int>(i)) =
          Complex(number_at(e[0], at + "[0]"), number_at(e[1], at + "[1]"));
    } else if (e.is_array()) {
      throw InputError(at + ": real-field entries must be plain numbers");
    } else {
      throw InputError(at + ": expected a number" +
                       (field == Field::Complex ? " or [re, im] pair" : ""));
    }
  }
  return v;
}

nlohmann::json to_json(const Frame& frame) {
  nlohmann::json out;
  out["field"] = field_name(frame.field);
  out["dim"] = frame.dim;
  nlohmann::json vecs = nlohmann::json::array();
  for (const auto& v : frame.vectors) {
    vecs.push_back(vector_to_json(v, frame.field));
  }
  out["vectors"] = std::move(vecs);
  return out;
}

nlohmann::json to_json(const ProjectionSystem& system) {
  nlohmann::json out;
  out["field"] = field_name(system.field);
  out["dim"] = system.dim;
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& b : system.subspaces) {
    nlohmann::json basis = nlohmann::json::array();
    for (int c = 0; c < b.cols(); ++c) {
      basis.push_back(vector_to_json(b.col(c), system.field));
    }
    subs.push_back(std::move(basis));
  }
  out["subspaces"] = std::move(subs);
  return out;
}

nlohmann::json to_json(const Certificate& cert, Field field) {
  nlohmann::json out;
  nlohmann::json payload;
  if (const auto* w = std::get_if<SubsetWitness>(&cert)) {
    out["kind"] = "subset_witness";
    payload["indices"] = w->indices;
    payload["span_dim_I"] = w->span_dim_I;
    payload["span_dim_Ic"] = w->span_dim_Ic;
  } else if (const auto* p = std::get_if<MeasurementEqualPair>(&cert)) {
    out["kind"] = "measurement_equal_pair";
    payload["x"] = vector_to_json(p->x, field);
    payload["y"] = vector_to_json(p->y, field);
  } else {
    const auto& d = std::get<DeficientDirection>(cert);
    out["kind"] = "deficient_direction";
    payload["u"] = vector_to_json(d.u, field);
    payload["dim_s_u"] = d.dim_s_u;
  }
  out["payload"] = std::move(payload);
  return out;
}

nlohmann::json products_to_json(const ProductRelations& rel) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < rel.dim; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < rel.dim; ++j) {
      if (i == j) {
        row.push_back(nullptr);
      } else {
        row.push_back(rel.products(i, j));
      }
    }
    rows.push_back(std::move(row));
  }
  nlohmann::json out;
  out["products"] = std::move(rows);
  return out;
}

ProductRelations products_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("products") || !j["products"].is_array()) {
    throw InputError("products: expected {\"products\": [[...], ...]}");
  }
  const nlohmann::json& rows = j["products"];
  const int dim = static_cast<int>(rows.size());
  ProductRelations rel;
  rel.dim = dim;
  rel.products = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const std::string at = "products[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != dim) {
      throw InputError(at + ": expected a row of length " +
                       std::to_string(dim));
    }
    for (int k = 0; k < dim; ++k) {
      const nlohmann::json& e = rows[i][k];
      if (i == k) {
        if (!e.is_null()) {
          throw InputError(at + ": diagonal entries must be null");
        }
        continue;
      }
      rel.products(i, k) = number_at(e, at + "[" + std::to_string(k) + "]");
    }
  }
  return rel;
}

nlohmann::json measurements_to_json(const Measurements& meas) {
  nlohmann::json values = nlohmann::json::array();
  for (int i = 0; i < meas.size(); ++i) values.push_back(meas(i));
  nlohmann::json out;
  out["values"] = std::move(values);
  return out;
}

Frame frame_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("frame: expected a JSON object");
  const Field field = field_from_json(j);
  const int dim = dim_from_json(j);
  if (!j.contains("vectors") || !j["vectors"].is_array()) {
    throw InputError("missing or non-array \"vectors\"");
  }
  std::vector<Eigen::VectorXcd> vectors;
  for (std::size_t i = 0; i < j["vectors"].size(); ++i) {
    vectors.push_back(vector_from_json(
        j["vectors"][i], field, "vectors[" + std::to_string(i) + "]"));
  }
  return Frame(field, dim, std::move(vectors));
}

ProjectionSystem system_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("system: expected a JSON object");
  const Field field = field_from_json(j);
  const int dim = dim_from_json(j);
  if (!j.contains("subspaces") || !j["subspaces"].is_array()) {
    throw InputError("missing or non-array \"subspaces\"");
  }
  std::vector<Eigen::MatrixXcd> subspaces;
  for (std::size_t s = 0; s < j["subspaces"].size(); ++s) {
    const std::string at = "subspaces[" + std::to_string(s) + "]";
    const nlohmann::json& basis = j["subspaces"][s];
    if (!basis.is_array() || basis.empty()) {
      throw InputError(at + ": expected a nonempty array of basis vectors");
    }
    Eigen::MatrixXcd b(dim, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const Eigen::VectorXcd col = vector_from_json(
          basis[c], field, at + "[" + std::to_string(c) + "]");
      if (col.size() != dim) {
        throw InputError(at + "[" + std::to_string(c) + "]: length " +
                         std::to_string(col.size()) + " does not match dim " +
                         std::to_string(dim));
      }
      b.col(static_cast<int>(c)) = col;
    }
    subspaces.push_back(std::move(b));
  }
  return ProjectionSystem(field, dim, std::move(subspaces));
}

Measurements measurements_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_array()) {
    throw InputError("measurements: expected {\"values\": [...]}");
  }
  const nlohmann::json& values = j["values"];
  Measurements meas(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    meas(static_cast<int>(i)) =
        number_at(values[i], "values[" + std::to_string(i) + "]");
  }
  return meas;
}

InputObject input_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("input: expected a JSON object");
  const bool has_vectors = j.contains("vectors");
  const bool has_subspaces = j.contains("subspaces");
  if (has_vectors && has_subspaces) {
    throw InputError("input has both \"vectors\" and \"subspaces\"");
  }
  if (has_vectors) return frame_from_json(j);
  if (has_subspaces) return system_from_json(j);
  throw InputError("input has neither \"vectors\" nor \"subspaces\"");
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    rethrow_parse_error(path, text, e);
  }
}

InputObject load_input_file(const std::string& path) {
  return input_from_json(load_json_file(path));
}

Measurements load_measurements_file(const std::string& path) {
  return measurements_from_json(load_json_file(path));
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace framescope
