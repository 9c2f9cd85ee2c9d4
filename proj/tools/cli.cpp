#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "entropia/body_io.hpp"
#include "entropia/collapse_sweep.hpp"
#include "entropia/convex_body.hpp"
#include "entropia/dynamical_systems.hpp"
#include "entropia/entropy_bounds.hpp"
#include "entropia/entropy_estimators.hpp"
#include "entropia/error.hpp"
#include "entropia/finsler_volume.hpp"
#include "entropia/polygon.hpp"
#include "entropia/profiles.hpp"
#include "entropia/reeb_collapse.hpp"
#include "entropia/report.hpp"
#include "json.hpp"

namespace entropia::cli {

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  int grid = 0;     // 0: per-command default
  int horizon = 0;  // 0: per-command default
  GeometryTolerances geom;
  double quad = 1e-6;
};

struct Options {
  std::string n_range = "2..6";
  std::string k_range = "2";
  std::string genus_range = "2";
  int weyl_max = 5;
  std::optional<double> sigma;
  double hvol_hat = 1.0;
  int random = 100;
  int pairs = 6;
  std::string body;
  SweepOptions sweep;
  int twists = 1;
  std::string system = "cat";
  std::string what = "gamma";
  std::vector<double> deltas;
  double scale = 1.0;
  double r_max = 0.0;
  double s = 0.1;
  std::size_t states = 32;
  std::size_t candidates = 20000;
  double v_bar = 0.5;
  double h = 1.0;
  int n = 2;
  std::vector<double> targets = {2.0};
};

std::vector<int> parse_range(const std::string& text) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorKind::InvalidInput, "bad integer range '" + text + "'");
    return v;
  };
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(part));
      continue;
    }
    const int lo = to_int(part.substr(0, dots));
    const int hi = to_int(part.substr(dots + 2));
    if (hi < lo || hi - lo > 10000) throw Error(ErrorKind::InvalidInput, "bad integer range '" + text + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::InvalidInput, "empty integer range");
  return out;
}

std::string num(double x) { return format_number(x); }
std::string num(int x) { return std::to_string(x); }

BoundReport row(std::string name, double value, std::vector<std::pair<std::string, std::string>> inputs,
                std::string formula, double tol) {
  return BoundReport{std::move(name), value, std::move(inputs), std::move(formula), tol};
}

Table constants_table(const Options& o, const std::string& hash) {
  std::vector<BoundReport> rows;
  for (int n : parse_range(o.n_range)) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "n must be positive");
    rows.push_back(row("c_n", c_n(n), {{"n", num(n)}}, "1/(n!*omega_n)^(1/n)", 0.0));
    rows.push_back(row("2c_n", 2.0 * c_n(n), {{"n", num(n)}}, "2/(n!*omega_n)^(1/n)", 0.0));
  }
  return bound_table(rows, hash);
}

Table verovic_table(const Options& o, const std::string& hash) {
  std::vector<BoundReport> rows;
  for (int k : parse_range(o.k_range)) {
    const VerovicConstants v = verovic_constants(k);
    rows.push_back(row("c_bh", v.c_bh, {{"k", num(k)}}, "verovic.busemann_hausdorff", 0.0));
    rows.push_back(row("c_ht", v.c_ht, {{"k", num(k)}}, "verovic.holmes_thompson", 0.0));
  }
  rows.push_back(row("c_bh_limit", std::sqrt(2.0 / std::numbers::e), {}, "sqrt(2/e)", 0.0));
  rows.push_back(row("c_ht_limit", std::sqrt(1.0 / std::numbers::e), {}, "sqrt(1/e)", 0.0));
  return bound_table(rows, hash);
}

Table sl3_table(const Globals& g, const std::string& hash) {
  const Sl3Constants c = sl3_constants(g.quad);
  std::vector<BoundReport> rows;
  rows.push_back(row("i_in_closed", c.i_in_closed, {}, "(3*sqrt3/640)*(27*ln3+68)", 0.0));
  rows.push_back(row("i_in_quadrature", c.i_in_quadrature, {}, "hexagon.inner_moment", g.quad));
  rows.push_back(row("i_out_quadrature", c.i_out_quadrature, {}, "hexagon.outer_moment", g.quad));
  rows.push_back(row("ball_r3", c.ball_r3, {}, "disk.r3_moment", g.quad));
  rows.push_back(row("c_bh", c.c_bh, {}, "sl3.busemann_hausdorff", g.quad));
  rows.push_back(row("c_ht", c.c_ht, {}, "sl3.holmes_thompson", g.quad));
  return bound_table(rows, hash);
}

std::string region_name(WeylRegion r) {
  switch (r) {
    case WeylRegion::Ball: return "ball";
    case WeylRegion::CrossPolytope: return "cross_polytope";
    case WeylRegion::Cube: return "cube";
  }
  return "?";
}

Table bounds_table(const Options& o, const Globals& g, const std::string& hash) {
  std::vector<BoundReport> rows;
  for (int k : parse_range(o.genus_range)) {
    const auto in = std::vector<std::pair<std::string, std::string>>{{"genus", num(k)}};
    rows.push_back(row("katok_orientable", katok_bound(k, true), in, "2*sqrt(pi*(k-1))", 0.0));
    rows.push_back(row("katok_nonorientable", katok_bound(k, false), in, "sqrt(2*pi*(k-1))", 0.0));
    rows.push_back(row("finsler_floor_reversible", finsler_floor(k, true), in, "2*sqrt(2*(k-1))", 0.0));
    rows.push_back(row("finsler_floor_general", finsler_floor(k, false), in, "sqrt(2*(k-1))", 0.0));
    rows.push_back(row("c2_times_katok", c_n(2) * katok_bound(k, true), in, "c_2*katok", 0.0));
  }
  for (int k = 1; k <= o.weyl_max; ++k) {
    for (WeylRegion r : {WeylRegion::Ball, WeylRegion::CrossPolytope, WeylRegion::Cube}) {
      const WeylIntegral w = weyl_cell_integral(k, r, kWeylSeed ^ g.seed);
      const auto in = std::vector<std::pair<std::string, std::string>>{{"k", num(k)}, {"region", region_name(r)}};
      rows.push_back(row("weyl_integral", w.value, in, w.monte_carlo ? "weyl.monte_carlo" : "weyl.quadrature",
                         w.monte_carlo ? 3.0 * w.std_error : 1e-8));
      rows.push_back(row("weyl_closed_form", w.closed_form, in, "weyl.closed_form", 0.0));
    }
  }
  if (o.sigma) {
    rows.push_back(row("floer_floor", floer_floor(*o.sigma, o.hvol_hat),
                       {{"sigma", num(*o.sigma)}, {"hvol_hat", num(o.hvol_hat)}}, "hvol_hat/sigma", 0.0));
  }
  return bound_table(rows, hash);
}

struct BodyRow {
  std::string body;
  std::string quantity;
  double value = 0.0;
  double bound = 0.0;
  bool holds = true;
  std::string formula;
  double tol = 0.0;
};

void report_polygon(const std::string& label, const ConvexPolygon& p, bool symmetric, std::size_t grid,
                    const GeometryTolerances& geom, std::vector<BodyRow>& rows) {
  const double area = p.area();
  const bool origin_inside = p.depth(Point2::Zero()) > 1e-12;
  if (origin_inside) {
    const StarBody k = StarBody::from_polygon(p, grid);
    const LoewnerFit outer = outer_loewner(k, geom);
    rows.push_back({label, "outer_ellipse_area_ratio", outer.ellipsoid.volume() / area, 0.0, true,
                    "vol(E_out)/vol(K)", geom.fit});
    if (symmetric) {
      const InnerLoewner inner = inner_loewner(p, geom);
      const double slack = geom.fit + 1e-9;
      rows.push_back({label, "john_inner_in_body", inner.max_inner_excess, 1.0, inner.max_inner_excess <= 1.0 + slack,
                      "max rho_E/rho_K <= 1", slack});
      rows.push_back({label, "john_dilation", inner.max_dilation, std::sqrt(2.0),
                      inner.max_dilation <= std::sqrt(2.0) + slack, "max rho_K/rho_E <= sqrt(2)", slack});
      const double product = area * polar(p).area();
      const double omega2 = std::numbers::pi * std::numbers::pi;
      rows.push_back({label, "santalo_product", product, omega2, product <= omega2 * (1.0 + 1e-9),
                      "vol(K)*vol(K polar) <= omega_2^2", 1e-9});
    }
  }
  const double refl = reflection_body(p).area() / area;
  rows.push_back({label, "reflection_ratio", refl, 4.0, refl <= 4.0 + 1e-9, "vol(conv(K u -K))/vol(K) <= 4", 1e-9});
  const double diff = difference_body(p).area() / area;
  rows.push_back({label, "difference_ratio", diff, 6.0, diff <= 6.0 + 1e-9, "vol(K-K)/vol(K) <= 6", 1e-9});
}

void report_star_body(const std::string& label, const StarBody& k, std::vector<BodyRow>& rows) {
  const double vol = volume(k).value;
  rows.push_back({label, "volume", vol, 0.0, true, "radial_quadrature", 0.0});
  rows.push_back({label, "polar_volume", volume(polar_dual(k)).value, 0.0, true, "radial_quadrature", 0.0});
  const Starshapedness sigma = sigma_starshapedness(k);
  rows.push_back({label, "sigma_upper", sigma.sigma_upper, 1.0, sigma.sigma_upper >= 1.0 - 1e-12,
                  "convex_hull_radial_ratio", 1e-12});
  rows.push_back({label, "irreversibility", irreversibility_ratio(k), 1.0, irreversibility_ratio(k) >= 1.0 - 1e-12,
                  "max rho(-u)/rho(u)", 1e-12});
}

Table bodies_table(const Options& o, const Globals& g, const std::string& hash, bool& violated) {
  const std::size_t grid = g.grid > 0 ? static_cast<std::size_t>(g.grid) : 0;
  std::vector<BodyRow> rows;
  if (!o.body.empty()) {
    const StarBody k = load_body(o.body);
    report_star_body(o.body, k, rows);
    if (k.dim() == 2 && k.is_convex(g.geom)) report_polygon(o.body, k.hull_polygon(), false, grid, g.geom, rows);
  } else {
    const ConvexPolygon square = ConvexPolygon::hull({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
    report_polygon("square", square, true, grid, g.geom, rows);
    report_polygon("hexagon", ellipse_polygon(1.0, 1.0, 6), true, grid, g.geom, rows);
    report_polygon("ellipse_2x1", ellipse_polygon(2.0, 1.0, 720), true, grid, g.geom, rows);
    report_polygon("triangle_origin_vertex", ConvexPolygon::hull({{0, 0}, {1, 0}, {0, 1}}), false, grid, g.geom,
                   rows);
    Rng rng(g.seed);
    for (int i = 0; i < o.random; ++i)
      report_polygon("symmetric_" + std::to_string(i), random_symmetric_polygon(rng, o.pairs), true, grid, g.geom,
                     rows);
    for (int i = 0; i < o.random; ++i)
      report_polygon("convex_" + std::to_string(i), random_convex_polygon(rng, 2 * o.pairs), false, grid, g.geom,
                     rows);
  }
  Table t({"body", "quantity", "value", "bound", "holds", "formula_id", "tolerance", "config_hash"});
  violated = false;
  for (const auto& r : rows) {
    violated = violated || !r.holds;
    t.add_row({r.body, r.quantity, num(r.value), num(r.bound), r.holds ? "true" : "false", r.formula, num(r.tol),
               hash});
  }
  return t;
}

Table collapse_table(const Options& o, const Globals& g, const std::string& hash, std::ostream& err) {
  MappingTorusSpec spec;
  spec.twists = o.twists;
  SweepOptions opts = o.sweep;
  opts.seed = g.seed;
  if (g.horizon > 0) opts.horizon = g.horizon;
  if (g.grid > 0) opts.grid = g.grid;
  const CollapseSweep sweep = collapse_sweep(spec, opts);
  Table t({"s", "vol_mt", "vol_st", "vol_total", "T_s_min", "T_s_max", "gamma_est", "gamma_times_vol_pow",
           "formula_id", "tolerance", "config_hash"});
  for (std::size_t i = 0; i < sweep.table.rows.size(); ++i) {
    const CollapseRow& r = sweep.table.rows[i];
    t.add_row({num(r.s), num(r.vol_mt), num(r.vol_st), num(r.vol_total), num(r.t_min), num(r.t_max),
               num(sweep.gamma[i]), num(sweep.normalized[i]), "collapse.volume_gamma_sweep",
               num(sweep.table.slope_error), hash});
  }
  err << "volume slope " << num(sweep.table.slope) << " (predicted " << num(sweep.table.predicted_slope)
      << "), quadratic residual " << num(sweep.table.residual) << ", s1 " << num(sweep.s1) << '\n';
  return t;
}

struct SystemDefaults {
  DiscreteSystem sys;
  std::vector<double> deltas;
  int htop_horizon = 0;
};

SystemDefaults make_system(const Options& o) {
  const Eigen::Matrix2i a = (Eigen::Matrix2i() << 2, 1, 1, 1).finished();
  if (o.system == "cat") return {cat_map(), {0.2, 0.3}, 7};
  if (o.system == "rotation") return {circle_rotation((std::sqrt(5.0) - 1.0) / 2.0), {0.1, 0.2}, 9};
  if (o.system == "doubling") return {doubling_map(), {0.1, 0.2}, 9};
  if (o.system == "suspension") return {suspension_flow(a, {1.0, 0.0}), {0.15, 0.25}, 5};
  if (o.system == "reeb-solid-torus") return {reeb_solid_torus_map(ProfileFunctions::dim3(o.s)), {0.2, 0.3}, 5};
  if (o.system == "reeb-mapping-torus") {
    MappingTorusSpec spec;
    return {reeb_mapping_torus_map(spec.with_s(o.s)), {0.2, 0.3}, 5};
  }
  throw Error(ErrorKind::InvalidInput, "unknown system '" + o.system + "'");
}

Table estimate_table(const Options& o, const Globals& g, const std::string& hash) {
  Table t({"system", "what", "value", "horizon", "delta", "fit_residual", "samples", "formula_id", "tolerance",
           "config_hash"});
  auto add = [&](const GrowthEstimate& e, const std::string& formula) {
    t.add_row({o.system, o.what, num(e.value), num(e.horizon), num(e.delta), num(e.fit_residual),
               std::to_string(e.samples), formula, num(e.fit_residual), hash});
  };
  if (o.what == "hvol") {
    BallGeometry geo;
    if (o.system == "hyperbolic") {
      geo.kind = BallGeometryKind::Hyperbolic;
    } else if (o.system == "euclidean") {
      geo.kind = BallGeometryKind::Euclidean;
    } else {
      throw Error(ErrorKind::InvalidInput, "hvol needs --system hyperbolic or euclidean");
    }
    geo.scale = o.scale;
    const double r_max = o.r_max > 0.0 ? o.r_max : (geo.kind == BallGeometryKind::Hyperbolic ? 200.0 : 5000.0);
    add(hvol_ball_growth(geo, r_max), "ball_growth.tail_slope");
    return t;
  }
  if (o.system == "hyperbolic" || o.system == "euclidean")
    throw Error(ErrorKind::InvalidInput, "system '" + o.system + "' only supports --what hvol");
  const SystemDefaults d = make_system(o);
  if (o.what == "gamma") {
    GammaOptions opts;
    opts.seed = g.seed;
    opts.states = o.states;
    if (g.horizon > 0) opts.horizon = g.horizon;
    add(gamma(d.sys, opts), "gamma.log_qr_tail_slope");
  } else if (o.what == "htop") {
    HtopOptions opts;
    opts.seed = g.seed;
    opts.candidates = o.candidates;
    const int horizon = g.horizon > 0 ? g.horizon : d.htop_horizon;
    const HtopResult r = htop_separated(d.sys, o.deltas.empty() ? d.deltas : o.deltas, horizon, opts);
    add(r.estimate, "htop.separated_sets");
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown estimate '" + o.what + "'");
  }
  return t;
}

Table spectrum_table(const Options& o, const std::string& hash) {
  Table t({"v_bar", "h", "n", "c", "delta", "c_roundtrip", "relative_error", "formula_id", "tolerance",
           "config_hash"});
  for (double c : o.targets) {
    const double delta = spectrum_tuner(o.v_bar, o.h, o.n, c);
    const double back = spectrum_value(o.v_bar, o.h, o.n, delta);
    t.add_row({num(o.v_bar), num(o.h), num(o.n), num(c), num(delta), num(back), num(std::abs(back - c) / c),
               "(v_bar+delta^-(n+1))^(1/(n+1))*h", "1e-12", hash});
  }
  return t;
}

// name=value for every option of the app and the chosen subcommand, sorted.
std::string config_string(const CLI::App& app, const CLI::App& sub) {
  std::map<std::string, std::string> kv;
  auto collect = [&](const CLI::App& a, const std::string& prefix) {
    for (const CLI::Option* opt : a.get_options()) {
      const std::string name = opt->get_name();
      if (name == "--help" || name == "--out") continue;
      std::string value;
      if (opt->count() > 0) {
        for (const auto& r : opt->results()) {
          if (!value.empty()) value += ' ';
          value += r;
        }
      } else {
        value = opt->get_default_str();
      }
      kv[prefix + name] = value;
    }
  };
  collect(app, "");
  collect(sub, sub.get_name() + ":");
  std::string out = sub.get_name();
  for (const auto& [k, v] : kv) out += '\n' + k + '=' + v;
  return out;
}

void emit(const Table& table, const std::string& format, std::ostream& os, const nlohmann::ordered_json* error) {
  if (format == "json") {
    if (error) {
      nlohmann::ordered_json obj;
      obj["error"] = *error;
      obj["rows"] = table.to_json();
      os << obj.dump(2) << '\n';
    } else {
      os << table.to_json().dump(2) << '\n';
    }
  } else {
    os << table.to_csv();
  }
}

int fail(const std::string& format, std::ostream& out, std::ostream& err, const std::string& kind,
         const std::string& message, int code) {
  if (format == "json") {
    nlohmann::ordered_json obj;
    obj["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
    out << obj.dump(2) << '\n';
  }
  err << "error: " << message << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  Options o;
  CLI::App app{"Finsler volume, contact volume and entropy computations", "entropia"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "Seed for every random stream");
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--grid", g.grid, "Direction grid size or contact-threshold grid (0 = default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--horizon", g.horizon, "Iteration horizon for estimators (0 = default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tol.hull", g.geom.hull, "Hull tolerance relative to the diameter")->check(CLI::NonNegativeNumber);
  app.add_option("--tol.sym", g.geom.sym, "Symmetry tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--tol.fit", g.geom.fit, "Ellipsoid fit tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--tol.vol", g.geom.vol, "Volume tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--tol.quad", g.quad, "Quadrature agreement tolerance (relative)")->check(CLI::NonNegativeNumber);

  auto add_sub = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "Print this help message and exit");
    return sub;
  };
  auto* constants = add_sub("constants", "Normalizing constants c_n");
  constants->add_option("--n", o.n_range, "Dimensions, e.g. 2..6 or 2,4");

  auto* bounds = add_sub("bounds", "Surface entropy floors and Weyl integrals");
  bounds->add_option("--genus", o.genus_range, "Genera, e.g. 2..5");
  bounds->add_option("--weyl-max", o.weyl_max, "Largest Weyl integral dimension")->check(CLI::Range(0, 8));
  bounds->add_option("--sigma", o.sigma, "Starshapedness modulus for the Floer floor");
  bounds->add_option("--hvol-hat", o.hvol_hat, "Normalized volume entropy for the Floer floor");

  auto* verovic = add_sub("verovic", "Constants for products of hyperbolic planes");
  verovic->add_option("--k", o.k_range, "Number of factors, e.g. 2 or 2..60");

  add_sub("sl3", "Hexagon constants for SL(3)/SO(3)");

  auto* bodies = add_sub("bodies", "Convex-geometry checks on built-in and random polygons");
  bodies->add_option("--body", o.body, "Body JSON file instead of the built-in set");
  bodies->add_option("--random", o.random, "Random polygons of each kind")->check(CLI::NonNegativeNumber);
  bodies->add_option("--pairs", o.pairs, "Point pairs per random polygon")->check(CLI::Range(2, 1000));

  auto* collapse = add_sub("collapse", "Volume and norm-growth sweep of the collapsing contact forms");
  collapse->add_option("--s-min", o.sweep.s_min, "Smallest s");
  collapse->add_option("--s-max", o.sweep.s_max, "Largest s");
  collapse->add_option("--steps", o.sweep.steps, "Number of s values")->check(CLI::Range(2, 1000));
  collapse->add_option("--twists", o.twists, "Dehn twists of the monodromy")->check(CLI::Range(1, 100));
  collapse->add_option("--states", o.sweep.states, "Sampled states per norm-growth estimate");

  auto* estimate = add_sub("estimate", "Entropy and norm-growth estimates");
  estimate
      ->add_option("--system", o.system, "cat, rotation, doubling, suspension, reeb-solid-torus, "
                                         "reeb-mapping-torus, hyperbolic, euclidean")
      ->check(CLI::IsMember({"cat", "rotation", "doubling", "suspension", "reeb-solid-torus", "reeb-mapping-torus",
                             "hyperbolic", "euclidean"}));
  estimate->add_option("--what", o.what, "gamma, htop or hvol")->check(CLI::IsMember({"gamma", "htop", "hvol"}));
  estimate->add_option("--delta", o.deltas, "Separation scales for htop");
  estimate->add_option("--scale", o.scale, "Metric scale c for hvol")->check(CLI::PositiveNumber);
  estimate->add_option("--r-max", o.r_max, "Largest radius for hvol (0 = default)");
  estimate->add_option("--s", o.s, "Contact parameter for the Reeb systems")->check(CLI::PositiveNumber);
  estimate->add_option("--states", o.states, "Sampled states for gamma");
  estimate->add_option("--candidates", o.candidates, "Candidate cloud size for htop");

  auto* spectrum = add_sub("spectrum", "Separation parameter reaching a target normalized entropy");
  spectrum->add_option("--vbar", o.v_bar, "Base volume")->check(CLI::PositiveNumber);
  spectrum->add_option("--h", o.h, "Volume entropy")->check(CLI::PositiveNumber);
  spectrum->add_option("--n", o.n, "Dimension")->check(CLI::PositiveNumber);
  spectrum->add_option("--c", o.targets, "Target values");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(g.format, out, err, "UsageError", e.what(), kExitUsage);
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string hash = hex64(fnv1a64(config_string(app, *sub)));

  std::ofstream file;
  std::ostream* os = &out;
  if (!g.out.empty()) {
    file.open(g.out, std::ios::binary);
    if (!file) return fail(g.format, out, err, "UsageError", "cannot open " + g.out, kExitUsage);
    os = &file;
  }

  try {
    bool violated = false;
    Table table({"none"});
    const std::string name = sub->get_name();
    if (name == "constants") table = constants_table(o, hash);
    if (name == "bounds") table = bounds_table(o, g, hash);
    if (name == "verovic") table = verovic_table(o, hash);
    if (name == "sl3") table = sl3_table(g, hash);
    if (name == "bodies") table = bodies_table(o, g, hash, violated);
    if (name == "collapse") table = collapse_table(o, g, hash, err);
    if (name == "estimate") table = estimate_table(o, g, hash);
    if (name == "spectrum") table = spectrum_table(o, hash);
    if (violated) {
      const std::string message = "a convex-geometry inequality failed";
      const nlohmann::ordered_json e = {{"kind", "InvariantViolated"}, {"message", message},
                                        {"exit_code", kExitValidation}};
      emit(table, g.format, *os, &e);
      err << "error: " << message << '\n';
      return kExitValidation;
    }
    emit(table, g.format, *os, nullptr);
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::InvalidInput ? kExitUsage : kExitValidation;
    return fail(g.format, *os, err, std::string(to_string(e.kind())), e.what(), code);
  } catch (const nlohmann::json::exception& e) {
    return fail(g.format, *os, err, "InvalidInput", e.what(), kExitUsage);
  }
  return kExitOk;
}

}  // namespace entropia::cli
