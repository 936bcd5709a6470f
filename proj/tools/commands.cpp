#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>

#include "limitlab/crossed_product.hpp"
#include "limitlab/kcycles.hpp"
#include "limitlab/patterson_sullivan.hpp"
#include "limitlab/sphere.hpp"
#include "output.hpp"

namespace limitlab::cli {

namespace {

using groups::GroupPresentation;

struct Session {
  const RunContext& ctx;
  Fields params;
  Metadata meta;

  explicit Session(const RunContext& c)
      : ctx(c), params(c.config.document.contains("params") ? c.config.document["params"] : empty_object(), "params") {
    meta.version = kVersion;
    meta.config_hash = c.config.hash;
    meta.subcommand = c.subcommand;
    meta.seed = c.config.seed;
  }

  static const json& empty_object() {
    static const json e = json::object();
    return e;
  }

  GroupPresentation group() {
    if (!ctx.config.document.contains("group")) throw ConfigError("group: required field is missing");
    GroupPresentation g = parse_group(Fields(ctx.config.document["group"], "group"));
    if (g.heuristic()) meta.notes.push_back("group discreteness not certified (heuristic)");
    return g;
  }

  void no_group() const {
    if (ctx.config.document.contains("group")) throw ConfigError("unknown field(s): group (not used by " + ctx.subcommand + ")");
  }

  std::filesystem::path file(const std::string& name) const { return ctx.out / name; }

  void log(const std::string& s) const {
    if (ctx.verbose) std::cerr << "[" << ctx.subcommand << "] " << s << '\n';
  }
};

ordered_json vec_json(const hyp::Vec& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ordered_json complex_json(std::complex<double> z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json group_json(const GroupPresentation& g) {
  ordered_json j;
  j["kind"] = groups::to_string(g.kind());
  j["name"] = g.name();
  j["n"] = g.n();
  j["rank"] = g.rank();
  j["heuristic"] = g.heuristic();
  if (!g.trace_parameters().empty()) {
    ordered_json t = ordered_json::array();
    for (auto z : g.trace_parameters()) t.push_back(complex_json(z));
    j["trace_parameters"] = t;
  }
  return j;
}

hyp::InteriorPoint ball_point(Fields& p, const std::string& key, int n) {
  if (!p.has(key)) return hyp::InteriorPoint::origin(n);
  const auto v = p.numbers(key);
  if (static_cast<int>(v.size()) != n + 1) throw ConfigError(p.path(key) + ": expected " + std::to_string(n + 1) + " coordinates");
  hyp::Vec b(n + 1);
  for (int i = 0; i <= n; ++i) b(i) = v[static_cast<std::size_t>(i)];
  if (!(b.norm() < 1.0)) throw ConfigError(p.path(key) + ": point must lie inside the unit ball");
  return hyp::InteriorPoint::from_ball(b);
}

// Portable uniform doubles and Gaussian pairs from mt19937_64 raw output.
class Rng {
 public:
  explicit Rng(long long seed) : eng_(static_cast<std::uint64_t>(seed)) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double gauss() {
    const double u = 1.0 - uniform(), v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }
  hyp::Vec sphere_point(int dim) {
    hyp::Vec v(dim);
    do {
      for (int i = 0; i < dim; ++i) v(i) = gauss();
    } while (v.norm() < 1e-12);
    return v / v.norm();
  }

 private:
  std::mt19937_64 eng_;
};

// --------------------------------------------------------------- group

void run_group(Session& s) {
  const GroupPresentation g = s.group();
  const int L = s.params.integer("L", 6);
  s.params.finish();
  if (L < 0) throw ConfigError("params.L: must be nonnegative");
  s.meta.truncation["L"] = L;
  const auto x0 = hyp::InteriorPoint::origin(g.n());
  groups::EnumerationOptions opt;
  opt.store_elements = false;
  const groups::WordBall ball = groups::enumerate_ball(g, L, x0, opt);

  std::vector<long long> counts(static_cast<std::size_t>(L + 1), 0);
  std::vector<std::string> cols{"word", "length", "displacement"};
  for (int k = 0; k <= g.n(); ++k) cols.push_back("xi_" + std::to_string(k + 1));
  CsvWriter csv(s.file("words.csv"), s.meta, cols);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    counts[static_cast<std::size_t>(ball.length(i))]++;
    csv.cell(ball.word(i).empty() ? std::string("e") : ball.word(i)).cell(ball.length(i)).cell(ball.displacement(i));
    const hyp::Vec xi = hyp::radial_projection(ball.orbit_point(i)).direction();
    for (Eigen::Index k = 0; k < xi.size(); ++k) csv.cell(xi(k));
    csv.end_row();
  }

  ordered_json body;
  body["group"] = group_json(g);
  ordered_json gens = ordered_json::array();
  for (int i = 0; i < g.rank(); ++i) {
    ordered_json rows = ordered_json::array();
    const hyp::Mat& m = g.generator(i).matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vec_json(m.row(r).transpose()));
    gens.push_back(rows);
  }
  body["generators_lorentz"] = gens;
  body["word_counts"] = counts;
  body["elements"] = ball.size();
  body["duplicates_removed"] = ball.duplicates_removed();
  body["shortest_displacement"] = groups::shortest_displacement(g, std::min(L, 4), x0);
  write_json(s.file("group.json"), s.meta, body);
}

// --------------------------------------------------------------- limitset

void run_limitset(Session& s) {
  const GroupPresentation g = s.group();
  const int L = s.params.integer("L", 8);
  const int size = s.params.integer("raster_size", 512);
  s.params.finish();
  if (L < 1) throw ConfigError("params.L: must be at least 1");
  if (size < 16 || size > 8192) throw ConfigError("params.raster_size: must lie in [16, 8192]");
  s.meta.truncation["L"] = L;
  s.meta.truncation["raster_size"] = size;
  const auto x0 = hyp::InteriorPoint::origin(g.n());
  const groups::BoundaryCloud cloud = groups::limit_set_sample(g, L, x0);

  std::vector<std::string> cols{"word"};
  for (int k = 0; k <= g.n(); ++k) cols.push_back("xi_" + std::to_string(k + 1));
  CsvWriter csv(s.file("limitset.csv"), s.meta, cols);
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    csv.cell(cloud.words[i]);
    for (Eigen::Index k = 0; k < cloud.points[i].size(); ++k) csv.cell(cloud.points[i](k));
    csv.end_row();
  }

  // Raster coordinates: the circle itself for n = 1, the complex plane (inverse
  // stereographic) for n = 2; other n use the first two coordinates.
  std::vector<std::pair<double, double>> plane;
  for (const auto& p : cloud.points) {
    if (g.n() == 2) {
      const auto z = mobius::inverse_stereographic(p);
      if (z && std::abs(*z) < 1e6) plane.emplace_back(z->real(), z->imag());
    } else {
      plane.emplace_back(p(0), p(1));
    }
  }
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
  if (!plane.empty() && g.n() == 2) {
    xmin = ymin = 1e300;
    xmax = ymax = -1e300;
    for (auto [x, y] : plane) {
      xmin = std::min(xmin, x), xmax = std::max(xmax, x);
      ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    }
  }
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  const double half = 0.525 * std::max({xmax - xmin, ymax - ymin, 1e-9});
  std::vector<std::uint8_t> pix(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 255);
  for (auto [x, y] : plane) {
    const int col = static_cast<int>(std::floor((x - (cx - half)) / (2.0 * half) * size));
    const int row = static_cast<int>(std::floor(((cy + half) - y) / (2.0 * half) * size));
    if (col >= 0 && col < size && row >= 0 && row < size) pix[static_cast<std::size_t>(row) * static_cast<std::size_t>(size) + static_cast<std::size_t>(col)] = 0;
  }
  s.meta.truncation["raster_window"] = ordered_json::array({cx - half, cx + half, cy - half, cy + half});
  write_pgm(s.file("limitset.pgm"), s.meta, size, size, pix);

  ordered_json body;
  body["group"] = group_json(g);
  body["points"] = cloud.points.size();
  body["raster_points"] = plane.size();
  body["raster_coordinates"] = g.n() == 2 ? "complex plane (inverse stereographic)" : "first two coordinates";
  write_json(s.file("limitset.json"), s.meta, body);
}

// --------------------------------------------------------------- delta

void run_delta(Session& s) {
  const GroupPresentation g = s.group();
  const int L = s.params.integer("L_max", 12);
  groups::DeltaOptions opt;
  opt.completeness_quantile = s.params.number("completeness_quantile", opt.completeness_quantile);
  opt.fit_start_fraction = s.params.number("fit_start_fraction", opt.fit_start_fraction);
  opt.prune_slack = s.params.number("prune_slack", opt.prune_slack);
  std::optional<int> box_L;
  std::vector<double> box_scales;
  if (s.params.has("box")) {
    Fields b = s.params.object("box");
    box_L = b.integer("L");
    box_scales = groups::geometric_scales(b.number("coarse", 0.1), b.number("fine", 1e-3), b.integer("count", 10));
    b.finish();
  }
  s.params.finish();
  s.meta.truncation["L_max"] = L;
  s.meta.truncation["completeness_quantile"] = opt.completeness_quantile;
  s.meta.truncation["fit_start_fraction"] = opt.fit_start_fraction;
  s.meta.truncation["prune_slack"] = opt.prune_slack;
  const auto x0 = hyp::InteriorPoint::origin(g.n());
  const auto est = groups::estimate_delta(g, L, x0, opt);
  s.log("delta_hat = " + format_double(est.value));

  CsvWriter csv(s.file("counts.csv"), s.meta, {"R", "N"});
  for (std::size_t i = 0; i < est.radii.size(); ++i) csv.cell(est.radii[i]).cell(est.counts[i]).end_row();

  ordered_json body;
  body["group"] = group_json(g);
  ordered_json d;
  d["delta_hat"] = est.value;
  d["raw_slope"] = est.raw_slope;
  d["residual"] = est.residual;
  d["fit_window"] = ordered_json::array({est.radius_lo, est.radius_hi});
  d["elements"] = est.elements;
  d["nodes_visited"] = est.nodes_visited;
  body["critical_exponent"] = d;
  if (box_L) {
    const auto cloud = groups::limit_set_sample(g, *box_L, x0);
    const auto box = groups::box_dimension(cloud, box_scales);
    ordered_json b;
    b["L"] = *box_L;
    b["points"] = cloud.points.size();
    b["value"] = box.value;
    b["residual"] = box.residual;
    b["scales"] = box.scales;
    b["counts"] = box.counts;
    b["difference_from_delta"] = std::abs(box.value - est.value);
    body["box_dimension"] = b;
  }
  write_json(s.file("delta.json"), s.meta, body);
}

// --------------------------------------------------------------- PS measure

struct MeasureSetup {
  double delta_hat = 0.0;
  double s = 0.0;
  int L = 0;
  hyp::InteriorPoint x = hyp::InteriorPoint::origin(1);
};

MeasureSetup measure_setup(Session& s, const GroupPresentation& g, int default_L) {
  MeasureSetup m;
  m.L = s.params.integer("L", default_L);
  const double eps = s.params.number("epsilon", 0.05);
  if (!(eps > 0.0)) throw ConfigError("params.epsilon: must be positive");
  if (s.params.has("delta_hat")) {
    m.delta_hat = s.params.number("delta_hat");
  } else {
    const int Ld = s.params.integer("L_delta", 12);
    s.meta.truncation["L_delta"] = Ld;
    m.delta_hat = groups::estimate_delta(g, Ld, hyp::InteriorPoint::origin(g.n())).value;
  }
  m.s = m.delta_hat + eps;
  m.x = ball_point(s.params, "basepoint", g.n());
  s.meta.truncation["L"] = m.L;
  s.meta.truncation["epsilon"] = eps;
  s.meta.notes.push_back("measures are truncated at s = delta_hat + epsilon; no divergence-type correction");
  return m;
}

// Bumps at the projections of x0.s for every letter, plus seeded random ones.
std::vector<ps::TestFunction> bump_tests(Session& s, const GroupPresentation& g, double radius, int random_bumps) {
  const auto x0 = hyp::InteriorPoint::origin(g.n());
  std::vector<hyp::Vec> centers;
  for (int i = 0; i < g.rank(); ++i)
    for (bool inv : {false, true}) centers.push_back(hyp::radial_projection(g.element(Word(1, letter_for(i, inv))).act(x0)).direction());
  Rng rng(s.ctx.config.seed);
  for (int i = 0; i < random_bumps; ++i) centers.push_back(rng.sphere_point(g.n() + 1));
  return ps::lipschitz_bumps(centers, radius);
}

ordered_json generator_transport(const GroupPresentation& g, const ps::AtomicBoundaryMeasure& mu,
                                 const std::vector<ps::TestFunction>& tests, double& worst) {
  ordered_json transport = ordered_json::object();
  for (int i = 0; i < g.rank(); ++i) {
    for (bool inv : {false, true}) {
      const Word w(1, letter_for(i, inv));
      const double d = ps::transport_defect(mu, g.element(w), tests);
      transport[w] = d;
      worst = std::max(worst, d);
    }
  }
  return transport;
}

void run_psmeasure(Session& s) {
  const GroupPresentation g = s.group();
  MeasureSetup m = measure_setup(s, g, 8);
  const double radius = s.params.number("bump_radius", 0.6);
  const int random_bumps = s.params.integer("random_bumps", 4);
  const auto x_prime = ball_point(s.params, "second_basepoint", g.n());
  const bool atoms = s.params.boolean("write_atoms", true);
  s.params.finish();

  const auto x0 = hyp::InteriorPoint::origin(g.n());
  groups::EnumerationOptions opt;
  opt.store_elements = false;
  const auto ball = groups::enumerate_ball(g, m.L, x0, opt);
  const auto mu = ps::ps_measure(ball, m.x, m.s, m.delta_hat);

  const auto tests = bump_tests(s, g, radius, random_bumps);
  double worst = 0.0;
  const ordered_json transport = generator_transport(g, mu, tests, worst);
  const auto there = ps::translate_basepoint(mu, x_prime);
  const auto back = ps::translate_basepoint(there, m.x);
  double round_trip = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    round_trip = std::max(round_trip, std::abs(back.weights[i] - mu.weights[i]) / std::max(mu.weights[i], 1e-300));

  if (atoms) {
    std::vector<std::string> cols{"word", "length", "weight"};
    for (int k = 0; k <= g.n(); ++k) cols.push_back("xi_" + std::to_string(k + 1));
    CsvWriter csv(s.file("atoms.csv"), s.meta, cols);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      csv.cell(mu.words[i].empty() ? std::string("e") : mu.words[i]).cell(static_cast<int>(mu.words[i].size())).cell(mu.weights[i]);
      for (Eigen::Index k = 0; k < mu.points[i].size(); ++k) csv.cell(mu.points[i](k));
      csv.end_row();
    }
  }

  ordered_json body;
  body["group"] = group_json(g);
  body["L"] = m.L;
  body["delta_hat"] = m.delta_hat;
  body["s"] = m.s;
  body["basepoint"] = vec_json(m.x.ball());
  body["atoms"] = mu.size();
  body["total_mass"] = mu.total_mass();
  body["bump_radius"] = radius;
  body["test_functions"] = tests.size();
  body["transport_defect"] = transport;
  body["transport_defect_max"] = worst;
  body["second_basepoint"] = vec_json(x_prime.ball());
  body["mass_at_second_basepoint"] = there.total_mass();
  body["basepoint_round_trip_defect"] = round_trip;
  write_json(s.file("psmeasure.json"), s.meta, body);
}

// --------------------------------------------------------------- KMS

void run_kms(Session& s) {
  const GroupPresentation g0 = s.group();
  MeasureSetup m = measure_setup(s, g0, 8);
  const auto t_values = s.params.numbers("t_values", {0.0, 0.5, 1.0});
  const double wrong_shift = s.params.number("wrong_exponent_shift", 0.5);
  const double radius = s.params.number("bump_radius", 0.6);
  const int random_bumps = s.params.integer("random_bumps", 4);
  s.params.finish();
  s.meta.truncation["t_values"] = t_values;

  auto gp = std::make_shared<const GroupPresentation>(g0);
  const auto x0 = hyp::InteriorPoint::origin(gp->n());
  groups::EnumerationOptions opt;
  opt.store_elements = false;
  const auto ball = groups::enumerate_ball(*gp, m.L, x0, opt);
  const auto mu = ps::ps_measure(ball, m.x, m.s, m.delta_hat);
  const auto one = [](const hyp::Vec&) { return cp::Complex(1.0, 0.0); };
  const cp::Complex tau_unit = cp::tau(cp::CrossedProductElement::unit(gp), mu);

  ordered_json pairs = ordered_json::array();
  double worst = 0.0, worst_wrong = 0.0;
  for (int i = 0; i < gp->rank(); ++i) {
    for (bool inv : {false, true}) {
      const Word w(1, letter_for(i, inv));
      const auto f = cp::CrossedProductElement::monomial(gp, w, one, 0.0);
      const auto fp = cp::CrossedProductElement::monomial(gp, word_inverse(w), one, 0.0);
      for (double t : t_values) {
        const auto r = cp::kms(f, fp, t, m.delta_hat, mu);
        const auto wrong = cp::kms(f, fp, t, m.delta_hat + wrong_shift, mu);
        ordered_json e;
        e["g"] = w;
        e["t"] = t;
        e["lhs"] = complex_json(r.lhs);
        e["rhs"] = complex_json(r.rhs);
        e["defect"] = r.defect;
        e["relative_defect"] = r.defect / std::abs(tau_unit);
        e["wrong_exponent_defect"] = wrong.defect;
        pairs.push_back(e);
        worst = std::max(worst, r.defect / std::abs(tau_unit));
        worst_wrong = std::max(worst_wrong, wrong.defect / std::abs(tau_unit));
      }
    }
  }

  ordered_json equiv = ordered_json::object();
  const auto unit = cp::CrossedProductElement::unit(gp);
  for (int i = 0; i < gp->rank(); ++i) {
    const Word w(1, letter_for(i, false));
    const auto xg = gp->element(w).act(m.x);
    const auto mu_g = ps::ps_measure(ball, xg, m.s, m.delta_hat);
    equiv[w] = cp::equivariance_defect(unit, w, mu, mu_g) / std::abs(cp::tau(unit, mu_g));
  }

  double transport_max = 0.0;
  const ordered_json transport = generator_transport(*gp, mu, bump_tests(s, *gp, radius, random_bumps), transport_max);

  ordered_json body;
  body["group"] = group_json(*gp);
  body["L"] = m.L;
  body["delta_hat"] = m.delta_hat;
  body["s"] = m.s;
  body["atoms"] = mu.size();
  body["bump_radius"] = radius;
  body["transport_defect"] = transport;
  body["transport_defect_max"] = transport_max;
  body["tau_unit"] = complex_json(tau_unit);
  body["pairs"] = pairs;
  body["max_relative_defect"] = worst;
  body["wrong_exponent_shift"] = wrong_shift;
  body["max_relative_wrong_exponent_defect"] = worst_wrong;
  body["equivariance_relative_defect"] = equiv;
  write_json(s.file("kms.json"), s.meta, body);
}

// --------------------------------------------------------------- K-cycles

void run_cantor(Session& s) {
  const GroupPresentation g = s.group();
  const int L = s.params.integer("L", 8);
  const int component = s.params.integer("component", -1);
  const auto offsets = s.params.numbers("p_offsets", {-0.3, 0.3});
  const int L_delta = s.params.integer("L_delta", 12);
  const int dense_L = s.params.integer("dense_check_L", 4);
  s.params.finish();
  s.meta.truncation["L"] = L;
  s.meta.truncation["L_delta"] = L_delta;
  s.meta.truncation["dense_check_L"] = dense_L;

  const double delta_hat = groups::estimate_delta(g, L_delta, hyp::InteriorPoint::origin(g.n())).value;
  const auto cycle = kc::cantor_cycle(g, L, component);
  const auto a = [](double t) { return kc::Complex(std::cos(t), 0.0); };

  // Dense checks on a smaller generation, where the matrices fit.
  const auto small = kc::cantor_cycle(g, dense_L, component);
  const auto K = small.kcycle();
  const Eigen::VectorXd sv = singular_values(small.commutator(a));
  const auto closed = small.commutator_singular_values(a);
  double sv_err = 0.0;
  for (std::size_t i = 0; i < closed.size(); ++i) sv_err = std::max(sv_err, std::abs(sv(static_cast<Eigen::Index>(i)) - closed[i]));

  std::vector<long long> per_gen(static_cast<std::size_t>(L + 1), 0);
  CsvWriter csv(s.file("gaps.csv"), s.meta, {"index", "generation", "component", "word", "b", "c", "singular_value"});
  for (std::size_t i = 0; i < cycle.gaps.size(); ++i) {
    const auto& gap = cycle.gaps[i];
    per_gen[static_cast<std::size_t>(gap.generation)]++;
    csv.cell(i).cell(gap.generation).cell(gap.component).cell(gap.word.empty() ? std::string("e") : gap.word)
        .cell(gap.b).cell(gap.c).cell(std::abs(a(gap.b) - a(gap.c)));
    csv.end_row();
  }

  ordered_json scans = ordered_json::array();
  std::vector<double> ps{delta_hat};
  for (double o : offsets) ps.push_back(delta_hat + o);
  for (double p : ps) {
    if (!(p > 0.0)) continue;
    const auto scan = kc::generation_scan(cycle, a, p);
    ordered_json e;
    e["p"] = p;
    e["partial_sums"] = scan.partial_sums;
    e["growth_ratio"] = scan.growth_ratio;
    e["bounded"] = scan.bounded;
    scans.push_back(e);
  }

  ordered_json body;
  body["group"] = group_json(g);
  body["delta_hat"] = delta_hat;
  body["components"] = cycle.components;
  body["gaps"] = cycle.gaps.size();
  body["gaps_per_generation"] = per_gen;
  body["symbol"] = "cos(theta) (first coordinate)";
  ordered_json dense;
  dense["L"] = dense_L;
  dense["dimension"] = K.dim();
  dense["anticommutator_defect"] = K.anticommutator_defect();
  dense["square_defect"] = K.square_defect();
  dense["selfadjoint_defect"] = K.selfadjoint_defect();
  dense["singular_value_error"] = sv_err;
  body["dense_checks"] = dense;
  body["generation_scans"] = scans;
  write_json(s.file("cantor.json"), s.meta, body);
}

void run_circle(Session& s) {
  s.no_group();
  const int N = s.params.integer("N", 16);
  const int grid = s.params.integer("quadrature_grid", 1024);
  s.params.finish();
  s.meta.truncation["N"] = N;
  s.meta.truncation["quadrature_grid"] = grid;
  if (grid <= 4 * N) throw ConfigError("params.quadrature_grid: must exceed 4N");
  const auto K = kc::circle_module(N);
  const double two_pi = 2.0 * std::numbers::pi;

  // Norm from (1/|lambda|) int omega ^ conj(*omega) with lambda = k and
  // *(d theta) = 1, by trapezoidal quadrature.
  CsvWriter csv(s.file("modes.csv"), s.meta, {"k", "T", "weight", "weight_quadrature", "pairing_re", "pairing_im"});
  int plus = 0, minus = 0;
  double norm_err = 0.0, pairing_err = 0.0, primitive_err = 0.0;
  Eigen::Index idx = 0;
  for (int k = -N; k <= N; ++k) {
    if (k == 0) continue;
    const double T = K.F(idx, idx).real();
    (T > 0 ? plus : minus)++;
    kc::Complex integral = 0.0;
    for (int j = 0; j < grid; ++j) {
      const double t = two_pi * j / grid;
      integral += std::polar(1.0, k * t) * std::polar(1.0, -k * t);
    }
    const double quad = (integral * (two_pi / grid)).real() / std::abs(k);
    norm_err = std::max(norm_err, std::abs(quad - K.weights(idx)));
    // <T omega, omega> = T |omega|^2 against i int eta ^ conj(omega) for two primitives.
    const kc::Complex p1 = kc::circle_pairing(k, k, 0.0, grid);
    const kc::Complex p2 = kc::circle_pairing(k, k, kc::Complex(0.7, -1.3), grid);
    pairing_err = std::max(pairing_err, std::abs(p1 - T * K.weights(idx)));
    primitive_err = std::max(primitive_err, std::abs(p1 - p2));
    csv.cell(k).cell(T).cell(K.weights(idx)).cell(quad).cell(p1.real()).cell(p1.imag());
    csv.end_row();
    ++idx;
  }
  // Off-diagonal pairings vanish.
  for (int k1 : {1, -2, 3})
    for (int k2 : {2, -1, 5}) primitive_err = std::max(primitive_err, std::abs(kc::circle_pairing(k1, k2, kc::Complex(2.0, 1.0), grid)));

  const auto H = kc::hardy_projections(N);
  const CMat& Ep = H.plus.matrix;
  const CMat& Em = H.minus.matrix;
  const Eigen::Index d = Ep.rows();
  CMat sum = Ep + Em;
  sum(N, N) += 1.0;  // k = 0 lies outside the span of exact forms
  const double idem = std::max((Ep * Ep - Ep).cwiseAbs().maxCoeff(), (Em * Em - Em).cwiseAbs().maxCoeff());
  const double orth = (Ep * Em).cwiseAbs().maxCoeff();
  const double completeness = (sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff();
  const auto shift = kc::multiplication_operator(kc::exponential_symbol(1), N, 8 * N);
  const CMat comm = Ep * shift.op.matrix - shift.op.matrix * Ep;
  const CMat interior = comm.block(1, 1, d - 2, d - 2);
  const Eigen::VectorXd sv = singular_values(interior);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * std::max(1.0, sv(0))) ++rank;

  ordered_json body;
  ordered_json T;
  T["plus_one"] = plus;
  T["minus_one"] = minus;
  T["spectrum_defect"] = (K.F * K.F - CMat::Identity(K.dim(), K.dim())).cwiseAbs().maxCoeff();
  body["T"] = T;
  body["norm_error"] = norm_err;
  body["pairing_error"] = pairing_err;
  body["primitive_independence_error"] = primitive_err;
  ordered_json h;
  h["idempotent_defect"] = idem;
  h["orthogonality_defect"] = orth;
  h["completeness_defect"] = completeness;
  h["shift_commutator_interior_rank"] = rank;
  h["shift_commutator_singular_values"] = std::vector<double>(sv.data(), sv.data() + std::min<Eigen::Index>(sv.size(), 4));
  body["hardy"] = h;
  write_json(s.file("circle.json"), s.meta, body);
}

void run_sphere(Session& s) {
  s.no_group();
  const auto l_list = s.params.integers("l_max", {8, 16});
  const double boost = s.params.number("boost", 0.3);
  const auto rot = s.params.numbers("rotation", {0.7, 0.3});
  s.params.finish();
  if (rot.size() != 2) throw ConfigError("params.rotation: expected two angles");
  s.meta.truncation["l_max"] = l_list;
  s.meta.truncation["interior_block"] = "l <= l_max / 2";
  const hyp::Isometry R = hyp::Isometry::rotation(2, 0, 2, rot[0]) * hyp::Isometry::rotation(2, 0, 1, rot[1]);
  const hyp::Isometry B = hyp::Isometry::boost(2, 0, boost);
  ordered_json rows = ordered_json::array();
  for (int l : l_list) {
    s.log("l_max = " + std::to_string(l));
    const auto K = sphere::sphere_signature_operator(l);
    const auto PR = sphere::moebius_pullback(l, R);
    const auto PB = sphere::moebius_pullback(l, B);
    const auto PBi = sphere::moebius_pullback(l, B.inverse());
    const auto idx = sphere::interior_indices(l, l / 2);
    const CMat prod = PBi.matrix * PB.matrix;
    double round_trip = 0.0;
    for (auto i : idx)
      for (auto j : idx) round_trip = std::max(round_trip, std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)));
    ordered_json e;
    e["l_max"] = l;
    e["dimension"] = K.dim();
    e["anticommutator_defect"] = K.anticommutator_defect();
    e["square_defect"] = K.square_defect();
    e["rotation_commutator"] = sphere::commutator_defect(PR, l, l);
    e["boost_commutator_interior"] = sphere::commutator_defect(PB, l, l / 2);
    e["boost_round_trip_interior"] = round_trip;
    rows.push_back(e);
  }
  ordered_json body;
  body["boost"] = boost;
  body["rotation_angles"] = rot;
  body["results"] = rows;
  write_json(s.file("sphere.json"), s.meta, body);
}

// --------------------------------------------------------------- summability

std::function<kc::Complex(const hyp::Vec&)> target_function(Fields f) {
  const auto linear = f.numbers("linear", {1.0, 0.0, 0.0});
  const double quad = f.number("quadratic", 0.5);
  f.finish();
  return [linear, quad](const hyp::Vec& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < linear.size() && static_cast<Eigen::Index>(i) < v.size(); ++i) s += linear[i] * v(static_cast<Eigen::Index>(i));
    if (v.size() >= 3) s += quad * v(1) * v(2);
    return kc::Complex(s, 0.0);
  };
}

kc::SymbolFunction parse_symbol(Fields f, Session& s, ordered_json& info) {
  const std::string kind = f.string("kind");
  info["kind"] = kind;
  if (kind == "constant") {
    const auto c = f.complex("value");
    f.finish();
    return kc::constant_symbol(c);
  }
  if (kind == "exponential") {
    const int k = f.integer("k", 1);
    f.finish();
    return kc::exponential_symbol(k);
  }
  if (kind == "smooth") {
    f.finish();
    return kc::smooth_symbol();
  }
  if (kind == "weierstrass") {
    const double alpha = f.number("alpha", 0.5);
    const int terms = f.integer("terms", 8);
    f.finish();
    return kc::weierstrass_symbol(alpha, terms);
  }
  if (kind == "pushforward") {
    const auto fuchsian = parse_group(f.object("fuchsian"));
    const auto deformed = parse_group(f.object("deformed"));
    const int L = f.integer("L", 10);
    const auto target = f.has("function") ? target_function(f.object("function")) : target_function(Fields(Session::empty_object(), "function"));
    const int L_delta = f.integer("L_delta", 14);
    f.finish();
    s.meta.truncation["conjugacy_L"] = L;
    const auto phi = groups::boundary_conjugacy(fuchsian, deformed, L);
    info["samples"] = phi.samples().size();
    info["max_gap"] = phi.max_gap();
    info["deformed"] = group_json(deformed);
    if (deformed.heuristic()) s.meta.notes.push_back("deformed group discreteness not certified (heuristic)");
    const auto est = groups::estimate_delta(deformed, L_delta, hyp::InteriorPoint::origin(deformed.n()));
    info["delta_hat_deformed"] = est.value;
    info["L_delta"] = L_delta;
    return kc::pushforward_symbols(phi, target);
  }
  throw ConfigError(f.path("kind") + ": unknown symbol kind '" + kind +
                    "' (expected constant, exponential, smooth, weierstrass or pushforward)");
}

void run_summability(Session& s) {
  s.no_group();
  ordered_json info;
  const kc::SymbolFunction a = parse_symbol(s.params.object("symbol"), s, info);
  const auto N_list = s.params.integers("N", {16, 32, 64, 128});
  const double p_min = s.params.number("p_min", 0.5), p_max = s.params.number("p_max", 3.5), p_step = s.params.number("p_step", 0.1);
  const double p_floor = s.params.number("p_floor", 1.0);
  const int jw_grid = s.params.integer("jw_grid", 4096);
  s.params.finish();
  if (!(p_step > 0.0) || !(p_min > 0.0) || p_max < p_min) throw ConfigError("params.p_min/p_max/p_step: need 0 < p_min <= p_max and p_step > 0");
  std::vector<double> p_grid;
  const int count = static_cast<int>(std::floor((p_max - p_min) / p_step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) p_grid.push_back(p_min + i * p_step);
  s.meta.truncation["N"] = N_list;
  s.meta.truncation["p_grid"] = ordered_json::array({p_min, p_max, p_step});
  s.meta.truncation["p_floor"] = p_floor;
  s.meta.truncation["jw_grid"] = jw_grid;

  const auto r = kc::summability_threshold(a, N_list, p_grid, p_floor, jw_grid, s.ctx.workers);

  CsvWriter csv(s.file("threshold.csv"), s.meta, {"N", "p", "schatten_norm", "jw_integral", "flags"});
  for (const auto& row : r.rows) csv.cell(row.N).cell(row.p).cell(row.schatten).cell(row.jw).cell(row.flags).end_row();
  CsvWriter svc(s.file("singular_values.csv"), s.meta, {"N", "index", "singular_value"});
  for (int N : N_list) {
    const Eigen::VectorXd sv = singular_values(kc::hardy_commutator(a, N, std::max(8, (jw_grid + N - 1) / N)));
    for (Eigen::Index i = 0; i < sv.size(); ++i) svc.cell(N).cell(static_cast<long long>(i)).cell(sv(i)).end_row();
  }

  ordered_json body;
  info["smoothness"] = a.smoothness;
  info["description"] = a.description;
  body["symbol"] = info;
  body["p_star"] = r.p_star;
  body["p_schatten"] = r.p_schatten;
  body["p_janson_wolff"] = r.p_jw;
  body["flags"] = r.flags;
  body["p_grid"] = r.p_grid;
  body["schatten_exponent"] = r.schatten_exponent;
  body["janson_wolff_exponent"] = r.jw_exponent;
  if (info.contains("delta_hat_deformed")) {
    body["experimental"] = true;
    body["difference_from_delta_hat"] = std::abs(r.p_star - info["delta_hat_deformed"].get<double>());
  }
  write_json(s.file("summability.json"), s.meta, body);
}

// --------------------------------------------------------------- conjugacy

void run_conjugacy(Session& s) {
  s.no_group();
  const auto fuchsian = parse_group(s.params.object("fuchsian"));
  const auto deformed = parse_group(s.params.object("deformed"));
  const int L = s.params.integer("L", 8);
  s.params.finish();
  s.meta.truncation["L"] = L;
  if (deformed.heuristic()) s.meta.notes.push_back("deformed group discreteness not certified (heuristic)");
  const auto phi = groups::boundary_conjugacy(fuchsian, deformed, L);

  std::vector<std::string> cols{"angle", "word"};
  for (int k = 0; k <= deformed.n(); ++k) cols.push_back("target_" + std::to_string(k + 1));
  CsvWriter csv(s.file("conjugacy.csv"), s.meta, cols);
  for (const auto& sm : phi.samples()) {
    csv.cell(sm.source_angle).cell(sm.word);
    for (Eigen::Index k = 0; k < sm.target.size(); ++k) csv.cell(sm.target(k));
    csv.end_row();
  }
  ordered_json body;
  body["fuchsian"] = group_json(fuchsian);
  body["deformed"] = group_json(deformed);
  body["samples"] = phi.samples().size();
  body["skipped_words"] = phi.skipped().size();
  body["max_gap"] = phi.max_gap();
  body["interpolation"] = groups::BoundaryConjugacy::interpolation_rule();
  if (phi.samples().size() >= 200) body["hoelder_estimate"] = kc::estimate_hoelder(phi);
  write_json(s.file("conjugacy.json"), s.meta, body);
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"group",          "limitset",       "delta",         "psmeasure", "kms",
                                              "kcycle cantor",  "kcycle circle",  "kcycle sphere", "summability",
                                              "conjugacy"};
  return names;
}

std::string usage_text() {
  std::string u = "usage: limitlab <subcommand> --config <file.json> --out <dir> [--workers N] [--verbose]\n"
                  "       limitlab --version\n\nsubcommands:\n";
  for (const auto& s : subcommands()) u += "  " + s + "\n";
  return u;
}

void run(const RunContext& ctx) {
  std::filesystem::create_directories(ctx.out);
  Session s(ctx);
  const std::string& c = ctx.subcommand;
  if (c == "group") run_group(s);
  else if (c == "limitset") run_limitset(s);
  else if (c == "delta") run_delta(s);
  else if (c == "psmeasure") run_psmeasure(s);
  else if (c == "kms") run_kms(s);
  else if (c == "kcycle cantor") run_cantor(s);
  else if (c == "kcycle circle") run_circle(s);
  else if (c == "kcycle sphere") run_sphere(s);
  else if (c == "summability") run_summability(s);
  else if (c == "conjugacy") run_conjugacy(s);
  else throw ConfigError("unknown subcommand '" + c + "'");
}

}  // namespace limitlab::cli
