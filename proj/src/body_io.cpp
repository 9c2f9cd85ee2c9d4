#include "entropia/body_io.hpp"

#include <fstream>

#include "entropia/error.hpp"

namespace entropia {

StarBody body_from_json(const nlohmann::json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    auto radial = j.at("radial").get<std::vector<double>>();
    std::vector<Eigen::VectorXd> dirs;
    if (j.contains("directions")) {
      for (const auto& row : j.at("directions")) {
        const auto v = row.get<std::vector<double>>();
        if (static_cast<int>(v.size()) != dim) throw Error(ErrorKind::DimensionMismatch, "direction length differs from dim");
        dirs.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), dim));
      }
    } else {
      dirs = direction_grid(dim, radial.size());
      if (dirs.size() != radial.size())
        throw Error(ErrorKind::InvalidInput, "canonical grids need an even number of radial samples");
    }
    return StarBody(std::move(dirs), std::move(radial));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, e.what());
  }
}

nlohmann::json body_to_json(const StarBody& k) {
  nlohmann::json dirs = nlohmann::json::array();
  for (const auto& d : k.directions()) dirs.push_back(std::vector<double>(d.data(), d.data() + d.size()));
  return {{"dim", k.dim()}, {"directions", dirs}, {"radial", k.radial()}};
}

StarBody load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return body_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, e.what());
  }
}

}  // namespace entropia
