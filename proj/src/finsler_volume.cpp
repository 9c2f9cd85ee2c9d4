#include "entropia/finsler_volume.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "entropia/body_io.hpp"
#include "entropia/error.hpp"
#include "entropia/parallel.hpp"
#include "entropia/special.hpp"

namespace entropia {

namespace {

double fiber_volume(const StarBody& k) {
  VolumeOptions opts;
  opts.method = k.dim() == 2 ? VolumeMethod::Exact2d : VolumeMethod::RadialQuadrature;
  return volume(k, opts).value;
}

std::vector<double> cell_terms(const FinslerField& f, bool cotangent_wanted, bool reciprocal) {
  f.validate();
  const int n = f.dim();
  const double omega = unit_ball_volume(n);
  const double cell = f.base.cell_volume();
  const bool convert = (f.convention == FiberConvention::Cotangent) != cotangent_wanted;
  // Identical fibers share one evaluation.
  const std::size_t distinct = f.fibers.size();
  std::vector<double> vol(distinct);
  for (std::size_t i = 0; i < distinct; ++i) vol[i] = fiber_volume(convert ? polar_dual(f.fibers[i]) : f.fibers[i]);
  std::vector<double> terms(f.base.cell_count());
  for (std::size_t c = 0; c < terms.size(); ++c) {
    const double v = vol[distinct == 1 ? 0 : c];
    terms[c] = cell * (reciprocal ? omega / v : v / omega);
  }
  return terms;
}

}  // namespace

std::size_t BaseChart::cell_count() const {
  std::size_t n = 1;
  for (int g : grid) n *= static_cast<std::size_t>(g);
  return n;
}

double BaseChart::cell_volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) v *= lengths[i] / grid[i];
  return v;
}

double BaseChart::total_volume() const {
  double v = 1.0;
  for (double l : lengths) v *= l;
  return v;
}

void FinslerField::validate(const GeometryTolerances& tol) const {
  if (fibers.empty()) throw Error(ErrorKind::InvalidInput, "field has no fibers");
  if (base.lengths.size() != base.grid.size()) throw Error(ErrorKind::DimensionMismatch, "base lengths and grid differ in length");
  for (int g : base.grid)
    if (g < 1) throw Error(ErrorKind::InvalidInput, "grid counts must be positive");
  for (double l : base.lengths)
    if (!(l > 0.0)) throw Error(ErrorKind::InvalidInput, "base lengths must be positive");
  const int n = fibers.front().dim();
  if (!base.lengths.empty() && static_cast<int>(base.lengths.size()) != n)
    throw Error(ErrorKind::DimensionMismatch, "fiber dimension differs from base dimension");
  for (const auto& k : fibers)
    if (k.dim() != n) throw Error(ErrorKind::DimensionMismatch, "fibers of mixed dimension");
  if (fibers.size() != 1 && fibers.size() != base.cell_count())
    throw Error(ErrorKind::DimensionMismatch, "need one fiber or one per base cell");
  if (reversible) {
    for (const auto& k : fibers)
      if (irreversibility_ratio(k) > 1.0 + std::max(tol.sym, 1e-9))
        throw Error(ErrorKind::InvalidInput, "field marked reversible has an asymmetric fiber");
  }
}

double c_n(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "c_n needs n >= 1");
  return std::exp(-(log_factorial(n) + std::log(unit_ball_volume(n))) / n);
}

double holmes_thompson_volume(const FinslerField& f) {
  const auto terms = cell_terms(f, true, false);
  return tree_sum(terms);
}

double busemann_hausdorff_volume(const FinslerField& f) {
  const auto terms = cell_terms(f, false, true);
  return tree_sum(terms);
}

double contact_volume_from_ht(double ht_volume, int n) {
  return std::exp(log_factorial(n)) * unit_ball_volume(n) * ht_volume;
}

double ht_from_contact_volume(double contact_volume, int n) {
  return contact_volume / (std::exp(log_factorial(n)) * unit_ball_volume(n));
}

double normalized_entropy(double vol, int n, double h) {
  if (!(vol > 0.0)) throw Error(ErrorKind::NonPositiveVolume, "volume must be positive");
  return std::pow(vol, 1.0 / n) * h;
}

FinslerField field_from_json(const nlohmann::json& j, const std::string& base_dir) {
  try {
    FinslerField f;
    if (j.contains("base")) {
      const auto& b = j.at("base");
      if (b.contains("lengths")) f.base.lengths = b.at("lengths").get<std::vector<double>>();
      if (b.contains("grid")) f.base.grid = b.at("grid").get<std::vector<int>>();
    }
    for (const auto& item : j.at("fibers")) {
      if (item.is_string()) {
        std::filesystem::path p(item.get<std::string>());
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        f.fibers.push_back(load_body(p.string()));
      } else {
        f.fibers.push_back(body_from_json(item));
      }
    }
    const std::string conv = j.value("convention", "cotangent");
    if (conv == "cotangent") f.convention = FiberConvention::Cotangent;
    else if (conv == "tangent") f.convention = FiberConvention::Tangent;
    else throw Error(ErrorKind::InvalidInput, "convention must be cotangent or tangent");
    f.reversible = j.value("reversible", false);
    f.validate();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, e.what());
  }
}

FinslerField load_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return field_from_json(nlohmann::json::parse(in), std::filesystem::path(path).parent_path().string());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, e.what());
  }
}

}  // namespace entropia
