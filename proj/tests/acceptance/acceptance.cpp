// Acceptance run: one PASS/FAIL line per numbered criterion.
//
//   acceptance --cli <limitlab> --configs <dir> [--only N]
//
// Exit status is 0 when every selected criterion passes, 1 otherwise.

#include <unistd.h>

#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "limitlab/crossed_product.hpp"
#include "limitlab/groups.hpp"
#include "limitlab/hyperbolic.hpp"
#include "limitlab/kcycles.hpp"
#include "limitlab/patterson_sullivan.hpp"
#include "limitlab/sphere.hpp"

namespace fs = std::filesystem;
using namespace limitlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::check(bool ok, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  if (!detail.empty()) detail += "; ";
  detail += buf;
  if (!ok) {
    detail += " [x]";
    pass = false;
  }
}

hyp::Vec random_direction(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n;
  hyp::Vec v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = n(rng);
  } while (v.norm() < 1e-9);
  return v / v.norm();
}

hyp::InteriorPoint random_point(std::mt19937_64& rng, int n) {
  return hyp::Isometry::random(n, rng, 2.0).act(hyp::InteriorPoint::origin(n));
}

const std::string kLetters = "aAbB";

// ------------------------------------------------------------------ 1

Outcome busemann_suite() {
  Outcome o;
  std::mt19937_64 rng(20241);
  double anti = 0.0, cocycle = 0.0, equiv = 0.0, limit = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 1;
    const auto x = random_point(rng, n), xp = random_point(rng, n), xpp = random_point(rng, n);
    const hyp::BoundaryPoint xi(random_direction(rng, n + 1));
    const auto g = hyp::Isometry::random(n, rng, 2.0);
    const double d = hyp::busemann(x, xp, xi);
    anti = std::max(anti, std::abs(d + hyp::busemann(xp, x, xi)));
    cocycle = std::max(cocycle, std::abs(hyp::busemann(x, xpp, xi) - d - hyp::busemann(xp, xpp, xi)));
    equiv = std::max(equiv, std::abs(hyp::busemann(g.act(x), g.act(xp), g.act(xi)) - d));
    // Limit oracle: d(x, r_t) - d(x', r_t) along the ray from the origin.
    const auto r = hyp::geodesic_toward(hyp::InteriorPoint::origin(n), xi, 20.0);
    limit = std::max(limit, std::abs(hyp::distance(x, r) - hyp::distance(xp, r) - d));
  }
  o.check(anti <= 1e-10, "antisymmetry %.2e", anti);
  o.check(cocycle <= 1e-10, "cocycle %.2e", cocycle);
  o.check(equiv <= 1e-10, "equivariance %.2e", equiv);
  o.check(limit <= 1e-6, "limit oracle t=20 %.2e", limit);
  return o;
}

// ------------------------------------------------------------------ 2

Outcome group_suite() {
  Outcome o;
  const auto sd = groups::schottky_demo();
  const auto o2 = hyp::InteriorPoint::origin(2), o1 = hyp::InteriorPoint::origin(1);
  groups::EnumerationOptions opt;
  opt.store_elements = false;
  const auto ball = groups::enumerate_ball(sd, 7, o2, opt);
  std::vector<long long> counts(8, 0);
  for (std::size_t i = 0; i < ball.size(); ++i) counts[static_cast<std::size_t>(ball.length(i))]++;
  bool exact = true;
  for (int k = 1; k <= 7; ++k) exact = exact && counts[static_cast<std::size_t>(k)] == 4 * static_cast<long long>(std::pow(3, k - 1));
  o.check(exact, "word counts 4,12,36,...,2916 %s", exact ? "exact" : "wrong");

  const double cyc = groups::estimate_delta(groups::cyclic_group(1, 2.0), 100, o1).value;
  o.check(cyc <= 0.05, "cyclic delta %.4f", cyc);
  const double torus = groups::estimate_delta(groups::punctured_torus_group({3, 0}, {3, 0}, 1), 14, o1).value;
  o.check(std::abs(torus - 1.0) <= 0.05, "punctured torus delta %.4f (L_max 14)", torus);
  const double sdelta = groups::estimate_delta(sd, 12, o2).value;
  const auto box = groups::box_dimension(groups::limit_set_sample(sd, 10, o2), groups::geometric_scales(0.1, 1e-3, 10));
  o.check(std::abs(sdelta - box.value) <= 0.1, "schottky delta %.4f vs box %.4f", sdelta, box.value);
  return o;
}

// ------------------------------------------------------------------ 3

Outcome ps_suite() {
  Outcome o;
  const auto g = groups::schottky_demo();
  const auto x0 = hyp::InteriorPoint::origin(2);
  const double delta = groups::estimate_delta(g, 12, x0).value;
  const double s = delta + 0.05;
  std::vector<hyp::Vec> centers;
  for (char c : kLetters) centers.push_back(hyp::radial_projection(g.element(Word(1, c)).act(x0)).direction());
  const auto tests = ps::lipschitz_bumps(centers, 0.6);
  groups::EnumerationOptions opt;
  opt.store_elements = false;
  double defect[2];
  ps::AtomicBoundaryMeasure mu12;
  int k = 0;
  for (int L : {8, 12}) {
    const auto mu = ps::ps_measure(groups::enumerate_ball(g, L, x0, opt), x0, s, delta);
    double worst = 0.0;
    for (char c : kLetters) worst = std::max(worst, ps::transport_defect(mu, g.element(Word(1, c)), tests));
    defect[k++] = worst;
    if (L == 12) mu12 = mu;
  }
  o.check(defect[1] <= 0.05, "transport L=12 %.4f", defect[1]);
  o.check(defect[1] < defect[0], "L=8 %.4f", defect[0]);
  hyp::Vec b(3);
  b << 0.3, -0.2, 0.1;
  const auto back = ps::translate_basepoint(ps::translate_basepoint(mu12, hyp::InteriorPoint::from_ball(b)), x0);
  double rt = 0.0;
  for (std::size_t i = 0; i < mu12.size(); ++i) rt = std::max(rt, std::abs(back.weights[i] - mu12.weights[i]) / mu12.weights[i]);
  o.check(rt <= 1e-10, "basepoint round trip %.2e", rt);
  return o;
}

// ------------------------------------------------------------------ 4

cp::CrossedProductElement random_element(const cp::GroupPtr& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> letter(0, 3), len(0, 2);
  cp::CrossedProductElement f(g);
  for (int t = 0; t < 3; ++t) {
    Word w;
    const int l = len(rng);
    while (static_cast<int>(w.size()) < l) {
      const char c = kLetters[static_cast<std::size_t>(letter(rng))];
      if (w.empty() || c != letter_inverse(w.back())) w += c;
    }
    const cp::Complex c0(u(rng), u(rng)), c1(u(rng), u(rng)), c2(u(rng), u(rng));
    f.add_term(w, [=](const hyp::Vec& xi) { return c0 + c1 * xi(0) + c2 * xi(1) * xi(2); });
  }
  return f;
}

double coefficient_distance(const cp::CrossedProductElement& a, const cp::CrossedProductElement& b,
                            const std::vector<hyp::Vec>& samples) {
  std::vector<Word> words = a.support();
  const auto wb = b.support();
  words.insert(words.end(), wb.begin(), wb.end());
  double worst = 0.0;
  for (const auto& w : words)
    for (const auto& xi : samples) worst = std::max(worst, std::abs(a.coefficient(w, xi) - b.coefficient(w, xi)));
  return worst;
}

Outcome crossed_product_suite() {
  Outcome o;
  auto g = std::make_shared<const groups::GroupPresentation>(groups::schottky_demo());
  const auto x0 = hyp::InteriorPoint::origin(2);
  std::mt19937_64 rng(7);
  const auto cloud = groups::limit_set_sample(*g, 6, x0);
  std::vector<hyp::Vec> samples;
  for (std::size_t i = 0; i < cloud.points.size(); i += 97) samples.push_back(cloud.points[i]);
  const auto x = hyp::InteriorPoint::from_ball((hyp::Vec(3) << 0.1, 0.2, -0.1).finished());
  const auto ball = groups::enumerate_ball(*g, 5, x0);
  // Mapping a limit point by a word of length 5 amplifies rounding by up to
  // e^17, so covariance at limit points is graded on the length-3 ball and at
  // generic points on the full ball. The deep limit-point value is printed.
  const auto ball3 = groups::enumerate_ball(*g, 3, x0);
  std::normal_distribution<double> gauss;
  double inv = 0.0, anti = 0.0, law = 0.0, mult = 0.0, cov = 0.0, cov_generic = 0.0, cov_deep = 0.0, hom = 0.0;
  for (int trial = 0; trial < 12; ++trial) {
    const auto f = random_element(g, rng), h = random_element(g, rng);
    inv = std::max(inv, coefficient_distance(cp::cp_star(cp::cp_star(f)), f, samples));
    anti = std::max(anti, coefficient_distance(cp::cp_star(cp::cp_mul(f, h)), cp::cp_mul(cp::cp_star(h), cp::cp_star(f)), samples));
    law = std::max(law, coefficient_distance(cp::automorphism(cp::automorphism(f, 0.4, x), 0.9, x), cp::automorphism(f, 1.3, x), samples));
    mult = std::max(mult, coefficient_distance(cp::automorphism(cp::cp_mul(f, h), 0.7, x),
                                               cp::cp_mul(cp::automorphism(f, 0.7, x), cp::automorphism(h, 0.7, x)), samples));
    const hyp::Vec& xi = samples[static_cast<std::size_t>(trial) % samples.size()];
    cov = std::max(cov, cp::covariance_defect(f, 0.8, xi, ball3, x));
    cov_deep = std::max(cov_deep, cp::covariance_defect(f, 0.8, xi, ball, x));
    hyp::Vec v(3);
    v << gauss(rng), gauss(rng), gauss(rng);
    cov_generic = std::max(cov_generic, cp::covariance_defect(f, 0.8, v / v.norm(), ball, x));
    hom = std::max(hom, cp::homomorphism_defect(f, h, xi, ball));
  }
  o.check(std::max(inv, anti) <= 1e-10, "involution %.2e", std::max(inv, anti));
  o.check(std::max(law, mult) <= 1e-10, "automorphism group law %.2e", std::max(law, mult));
  o.check(cov <= 1e-10, "covariance L=3 %.2e", cov);
  o.check(cov_generic <= 1e-10, "L=5 generic %.2e (limit points %.2e)", cov_generic, cov_deep);
  o.check(hom <= 1e-10, "homomorphism interior %.2e", hom);
  return o;
}

// ------------------------------------------------------------------ 5

struct KmsNumbers {
  double defect = 0.0, wrong = 0.0, equivariance = 0.0, transport = 0.0;
};

KmsNumbers kms_at(const cp::GroupPtr& g, int L, double delta) {
  const auto x0 = hyp::InteriorPoint::origin(2);
  groups::EnumerationOptions opt;
  opt.store_elements = false;
  const auto ball = groups::enumerate_ball(*g, L, x0, opt);
  const auto mu = ps::ps_measure(ball, x0, delta + 0.05, delta);
  const auto one = [](const hyp::Vec&) { return cp::Complex(1.0, 0.0); };
  const auto unit = cp::CrossedProductElement::unit(g);
  const double tau_unit = std::abs(cp::tau(unit, mu));
  KmsNumbers r;
  for (char c : kLetters) {
    const auto f = cp::CrossedProductElement::monomial(g, Word(1, c), one);
    const auto fp = cp::CrossedProductElement::monomial(g, Word(1, letter_inverse(c)), one);
    for (double t : {0.0, 0.5, 1.0}) {
      r.defect = std::max(r.defect, cp::kms(f, fp, t, delta, mu).defect / tau_unit);
      r.wrong = std::max(r.wrong, cp::kms(f, fp, t, delta + 0.5, mu).defect / tau_unit);
    }
  }
  for (char c : std::string("ab")) {
    const auto mu_g = ps::ps_measure(ball, g->element(Word(1, c)).act(x0), delta + 0.05, delta);
    r.equivariance = std::max(r.equivariance, cp::equivariance_defect(unit, Word(1, c), mu, mu_g) / std::abs(cp::tau(unit, mu_g)));
  }
  std::vector<hyp::Vec> centers;
  for (char c : kLetters) centers.push_back(hyp::radial_projection(g->element(Word(1, c)).act(x0)).direction());
  const auto tests = ps::lipschitz_bumps(centers, 0.6);
  for (char c : kLetters) r.transport = std::max(r.transport, ps::transport_defect(mu, g->element(Word(1, c)), tests));
  return r;
}

Outcome kms_suite() {
  Outcome o;
  auto g = std::make_shared<const groups::GroupPresentation>(groups::schottky_demo());
  const double delta = groups::estimate_delta(*g, 12, hyp::InteriorPoint::origin(2)).value;
  const auto k8 = kms_at(g, 8, delta), k12 = kms_at(g, 12, delta);
  o.check(k12.defect <= 0.05, "kms relative L=12 %.4f", k12.defect);
  o.check(k12.defect < k8.defect, "L=8 %.4f", k8.defect);
  o.check(k12.wrong > k12.defect, "wrong exponent %.4f", k12.wrong);
  o.check(k12.equivariance <= 0.05, "equivariance %.4f", k12.equivariance);
  o.check(k8.defect <= 5.0 * k8.transport && k12.defect <= 5.0 * k12.transport, "kms/transport %.2f, %.2f",
          k8.defect / k8.transport, k12.defect / k12.transport);
  return o;
}

// ------------------------------------------------------------------ 6

Outcome cantor_suite() {
  Outcome o;
  const auto g = groups::fuchsian_schottky(1.2);
  const auto a = [](double t) { return kc::Complex(std::cos(t), 0.5 * std::sin(2.0 * t)); };
  const auto small = kc::cantor_cycle(g, 4);
  const auto K = small.kcycle();
  o.check(K.square_defect() == 0.0 && K.anticommutator_defect() == 0.0, "F^2 = I %.1e, F gamma + gamma F %.1e (dim %ld)",
          K.square_defect(), K.anticommutator_defect(), static_cast<long>(K.dim()));
  const Eigen::VectorXd sv = singular_values(small.commutator(a));
  auto closed = small.commutator_singular_values(a);
  std::sort(closed.begin(), closed.end(), std::greater<>());
  double err = 0.0;
  for (std::size_t i = 0; i < closed.size(); ++i) err = std::max(err, std::abs(sv(static_cast<Eigen::Index>(i)) - closed[i]));
  o.check(err <= 1e-12, "singular values vs endpoint differences %.2e", err);
  const double delta = groups::estimate_delta(g, 12, hyp::InteriorPoint::origin(1)).value;
  const auto cycle = kc::cantor_cycle(g, 9);
  const auto lo = kc::generation_scan(cycle, a, delta - 0.3), hi = kc::generation_scan(cycle, a, delta + 0.3);
  o.check(!lo.bounded && hi.bounded, "scan ratio %.3f at delta-0.3 (growing), %.3f at delta+0.3 (bounded)", lo.growth_ratio,
          hi.growth_ratio);
  return o;
}

// ------------------------------------------------------------------ 7

Outcome circle_suite() {
  Outcome o;
  const int N = 24;
  const auto K = kc::circle_module(N);
  const CMat sq = K.F * K.F - CMat::Identity(K.dim(), K.dim());
  int wrong_sign = 0;
  double norm_err = 0.0, prim = 0.0;
  Eigen::Index idx = 0;
  const int grid = 2048;
  for (int k = -N; k <= N; ++k) {
    if (k == 0) continue;
    if (K.F(idx, idx) != kc::Complex(k > 0 ? 1.0 : -1.0, 0.0)) ++wrong_sign;
    // Independent norm: trapezoid sum of |e^{ik theta}|^2 / |k|.
    double s = 0.0;
    for (int j = 0; j < grid; ++j) s += std::norm(std::polar(1.0, k * 2.0 * std::numbers::pi * j / grid));
    norm_err = std::max(norm_err, std::abs(s * 2.0 * std::numbers::pi / grid / std::abs(k) - K.weights(idx)));
    prim = std::max(prim, std::abs(kc::circle_pairing(k, k, 0.0) - kc::circle_pairing(k, k, kc::Complex(-3.0, 2.5))));
    ++idx;
  }
  o.check(wrong_sign == 0 && sq.cwiseAbs().maxCoeff() == 0.0, "T = sign(k), T^2 = I exact");
  o.check(norm_err <= 1e-10, "mode norms %.2e", norm_err);
  o.check(prim <= 1e-12, "primitive independence %.2e", prim);
  const auto H = kc::hardy_projections(N);
  const auto shift = kc::multiplication_operator(kc::exponential_symbol(1), N, 8 * N);
  const CMat c = H.plus.matrix * shift.op.matrix - shift.op.matrix * H.plus.matrix;
  const Eigen::Index d = c.rows();
  const Eigen::VectorXd sv = singular_values(c.block(1, 1, d - 2, d - 2));
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-10 ? 1 : 0;
  o.check(rank == 1, "[E+, shift] interior rank %d", rank);
  return o;
}

// ------------------------------------------------------------------ 8

Outcome summability_suite() {
  Outcome o;
  std::vector<double> p_grid;
  for (int i = 0; i <= 30; ++i) p_grid.push_back(0.5 + 0.1 * i);
  const std::vector<int> N{16, 32, 64, 128};
  const auto smooth = kc::summability_threshold(kc::smooth_symbol(), N, p_grid);
  o.check(std::abs(smooth.p_schatten - 1.0) <= 0.15 && std::abs(smooth.p_jw - 1.0) <= 0.15, "smooth %.3f / %.3f",
          smooth.p_schatten, smooth.p_jw);
  const auto w = kc::summability_threshold(kc::weierstrass_symbol(0.5, 8), N, p_grid);
  o.check(std::abs(w.p_schatten - 2.0) <= 0.3 && std::abs(w.p_jw - 2.0) <= 0.3, "weierstrass %.3f / %.3f", w.p_schatten,
          w.p_jw);
  const double jw = kc::janson_wolff_integral(kc::exponential_symbol(1), 2.0).value;
  const double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
  o.check(std::abs(jw / four_pi2 - 1.0) <= 0.005, "JW(e^{i theta}, 2) %.4f vs %.4f", jw, four_pi2);

  const auto fuchsian = groups::punctured_torus_group({3, 0}, {3, 0}, 1);
  const auto deformed = groups::punctured_torus_group({3, 0.1}, {3, 0}, 2);
  const auto phi = groups::boundary_conjugacy(fuchsian, deformed, 10);
  const auto a = kc::pushforward_symbols(phi, [](const hyp::Vec& v) { return kc::Complex(v(0) + 0.5 * v(1) * v(2), 0.0); });
  const auto q = kc::summability_threshold(a, N, p_grid);
  const double delta = groups::estimate_delta(deformed, 14, hyp::InteriorPoint::origin(2)).value;
  o.check(std::abs(q.p_star - delta) <= 0.15 && q.p_schatten >= 1.0 && q.p_jw >= 1.0,
          "experimental: quasi-Fuchsian p* %.3f (%.3f / %.3f) vs delta %.4f", q.p_star, q.p_schatten, q.p_jw, delta);
  return o;
}

// ------------------------------------------------------------------ 9

Outcome sphere_suite() {
  Outcome o;
  const auto R = hyp::Isometry::rotation(2, 0, 2, 0.7) * hyp::Isometry::rotation(2, 1, 2, std::numbers::pi / 2);
  const auto B = hyp::Isometry::boost(2, 0, 0.3);
  const auto K = sphere::sphere_signature_operator(32);
  o.check(K.anticommutator_defect() == 0.0 && K.square_defect() == 0.0, "l_max 32: F gamma + gamma F %.1e, F^2 - I %.1e",
          K.anticommutator_defect(), K.square_defect());
  const double rot = sphere::commutator_defect(sphere::moebius_pullback(32, R), 32, 32);
  o.check(rot <= 1e-8, "rotation %.2e", rot);
  double boost[3];
  int k = 0;
  for (int l : {8, 16, 32}) boost[k++] = sphere::commutator_defect(sphere::moebius_pullback(l, B), l, l / 2);
  o.check(boost[0] > boost[1] && boost[1] > boost[2] && boost[2] <= 0.05, "boost %.2e > %.2e > %.2e", boost[0], boost[1],
          boost[2]);
  return o;
}

// ------------------------------------------------------------------ 10

std::string subcommand_for(const std::string& stem) {
  static const std::vector<std::pair<std::string, std::string>> prefixes{
      {"group", "group"},   {"limitset", "limitset"},       {"delta", "delta"},
      {"psmeasure", "psmeasure"}, {"kms", "kms"},           {"cantor", "kcycle cantor"},
      {"circle", "kcycle circle"}, {"sphere", "kcycle sphere"}, {"summability", "summability"},
      {"conjugacy", "conjugacy"}};
  for (const auto& [p, sub] : prefixes)
    if (stem.rfind(p, 0) == 0) return sub;
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_suite(const std::string& cli, const fs::path& configs) {
  Outcome o;
  if (cli.empty() || configs.empty()) {
    o.check(false, "needs --cli and --configs");
    return o;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(configs))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  const fs::path scratch = fs::temp_directory_path() / ("limitlab-accept-" + std::to_string(::getpid()));
  int identical = 0;
  std::vector<std::string> problems;
  for (const auto& f : files) {
    const std::string sub = subcommand_for(f.stem().string());
    if (sub.empty()) {
      problems.push_back(f.filename().string() + " (no subcommand)");
      continue;
    }
    // Two plain reruns and one with two workers; all must match the first.
    fs::path out[3];
    bool ran = true;
    for (int r = 0; r < 3; ++r) {
      out[r] = scratch / (f.stem().string() + "_" + std::to_string(r));
      std::string cmd = "\"" + cli + "\" " + sub + " --config \"" + f.string() + "\" --out \"" + out[r].string() + "\"";
      if (r == 2) cmd += " --workers 2";
      ran = ran && std::system(cmd.c_str()) == 0;
    }
    bool same = ran;
    if (ran) {
      std::size_t n_files = 0;
      for (const auto& e : fs::directory_iterator(out[0])) {
        ++n_files;
        const std::string ref = slurp(e.path());
        for (int r = 1; r < 3; ++r) {
          const fs::path other = out[r] / e.path().filename();
          same = same && fs::exists(other) && slurp(other) == ref;
        }
      }
      for (int r = 1; r < 3; ++r)
        same = same && static_cast<std::size_t>(std::distance(fs::directory_iterator(out[r]), fs::directory_iterator{})) == n_files;
      same = same && n_files > 0;
    }
    if (same)
      ++identical;
    else
      problems.push_back(f.filename().string());
  }
  fs::remove_all(scratch);
  std::string list;
  for (const auto& p : problems) list += " " + p;
  o.check(problems.empty() && !files.empty(), "%d/%zu demo configs byte-identical over 2 reruns and --workers 2%s%s", identical, files.size(),
          problems.empty() ? "" : "; differing:", list.c_str());
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  fs::path configs;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) cli = argv[++i];
    else if (a == "--configs" && i + 1 < argc) configs = argv[++i];
    else if (a == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: acceptance --cli <limitlab> --configs <dir> [--only N]\n");
      return 2;
    }
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"busemann", busemann_suite},
      {"groups", group_suite},
      {"patterson-sullivan", ps_suite},
      {"crossed-product", crossed_product_suite},
      {"kms", kms_suite},
      {"cantor-kcycle", cantor_suite},
      {"circle-module", circle_suite},
      {"summability", summability_suite},
      {"sphere-operator", sphere_suite},
      {"cli-determinism", [&] { return cli_suite(cli, configs); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != static_cast<int>(i + 1)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, "exception: %s", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %-19s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
