#pragma once

#include <string>
#include <vector>

#include "entropia/convex_body.hpp"
#include "json.hpp"

namespace entropia {

/// Flat torus [0,L₁]×…×[0,L_d] with a uniform midpoint grid. Empty lengths
/// mean a single point of unit weight.
struct BaseChart {
  std::vector<double> lengths;
  std::vector<int> grid;

  std::size_t cell_count() const;
  double cell_volume() const;
  double total_volume() const;
};

enum class FiberConvention { Cotangent, Tangent };

/// Finsler field as one unit-ball body per base cell (or a single body used
/// everywhere). Cotangent fibers are D*_q(F), tangent fibers D_q(F).
struct FinslerField {
  BaseChart base;
  std::vector<StarBody> fibers;
  FiberConvention convention = FiberConvention::Cotangent;
  bool reversible = false;

  int dim() const { return fibers.empty() ? 0 : fibers.front().dim(); }
  const StarBody& fiber(std::size_t cell) const { return fibers.size() == 1 ? fibers.front() : fibers[cell]; }
  /// Throws DimensionMismatch or NotConvex on inconsistent fields.
  void validate(const GeometryTolerances& tol = {}) const;
};

/// 1 / (n!·ω_n)^{1/n}.
double c_n(int n);

/// Σ_cells cell_volume·|D*_q|/ω_n.
double holmes_thompson_volume(const FinslerField& f);
/// Σ_cells cell_volume·ω_n/|D_q|.
double busemann_hausdorff_volume(const FinslerField& f);

/// Contact volume of the unit cotangent bundle: n!·ω_n·vol_HT.
double contact_volume_from_ht(double ht_volume, int n);
double ht_from_contact_volume(double contact_volume, int n);

/// vol^{1/n}·h, invariant under (vol, h) → (cⁿ·vol, h/c).
double normalized_entropy(double vol, int n, double h);

/// Field JSON: {"base": {"lengths": [...], "grid": [...]}, "fibers": [...],
/// "convention": "cotangent"|"tangent", "reversible": bool}. Each fiber is a
/// body object or a path to a body file, relative to `base_dir`.
FinslerField field_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
FinslerField load_field(const std::string& path);

}  // namespace entropia
