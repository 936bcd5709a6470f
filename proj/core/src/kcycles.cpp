#include "limitlab/kcycles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "limitlab/error.hpp"
#include "limitlab/parallel.hpp"

namespace limitlab::kc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

// Counterclockwise angular distance from a to b, in [0, 2 pi).
double ccw(double a, double b) { return wrap_angle(b - a); }

double angle_of(Complex z) { return wrap_angle(std::arg(z)); }

Complex on_circle(double t) { return std::polar(1.0, t); }

double apply_angle(const mobius::Mobius& m, double t) {
  const auto z = m.apply(on_circle(t));
  if (!z) throw NumericError("cantor_cycle: circle point mapped to infinity");
  return angle_of(*z);
}

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

struct CircleArc {
  double lo = 0.0;   // counterclockwise start
  double hi = 0.0;   // counterclockwise end (may exceed 2 pi)
  double mid = 0.0;
  char letter = 0;   // letter mapping the exterior of the partner circle into this one
  int partner = -1;  // index of that partner circle
};

}  // namespace

double FiniteKCycle::anticommutator_defect() const {
  if (!gamma) return 0.0;
  const CMat g = gamma->cast<Complex>().asDiagonal();
  return (F * g + g * F).cwiseAbs().maxCoeff();
}

double FiniteKCycle::square_defect() const {
  CMat target = CMat::Identity(dim(), dim());
  for (Eigen::Index i = 0; i < kernel.size(); ++i) target(i, i) -= kernel(i);
  return (F * F - target).cwiseAbs().maxCoeff();
}

double FiniteKCycle::selfadjoint_defect() const {
  // Adjoint for the weighted inner product <u, v> = sum w_i conj(u_i) v_i.
  const Eigen::VectorXd w = weights.size() == dim() ? weights : Eigen::VectorXd::Ones(dim());
  CMat adj = F.adjoint();
  for (Eigen::Index i = 0; i < dim(); ++i)
    for (Eigen::Index j = 0; j < dim(); ++j) adj(i, j) *= w(j) / w(i);
  return (F - adj).cwiseAbs().maxCoeff();
}

// ------------------------------------------------------------------ Cantor

CantorCycle cantor_cycle(const groups::GroupPresentation& g, int L, int component) {
  if (g.n() != 1) throw Error("cantor_cycle: requires a group acting on H^2 (n = 1)");
  if (g.kind() != groups::GroupKind::FreeSchottky || g.pairings().empty() || !g.has_mobius()) {
    throw Error("cantor_cycle: requires a free Schottky group with known pairing circles");
  }
  if (L < 3) throw Error("cantor_cycle: generation L must be at least 3");

  std::vector<CircleArc> arcs;
  for (std::size_t i = 0; i < g.pairings().size(); ++i) {
    const auto& p = g.pairings()[i];
    for (int side = 0; side < 2; ++side) {
      const groups::Circle& c = side == 0 ? p.from : p.to;
      const double dist = std::abs(c.center);
      if (std::abs(dist * dist - 1.0 - c.radius * c.radius) > 1e-9 * dist * dist) {
        throw Error("cantor_cycle: pairing circles must be orthogonal to the unit circle");
      }
      const double half = std::atan(c.radius);
      const double mid = angle_of(c.center);
      CircleArc a;
      a.lo = wrap_angle(mid - half);
      a.hi = a.lo + 2.0 * half;
      a.mid = mid;
      // The generator maps ext(from) into int(to); its inverse maps ext(to) into int(from).
      a.letter = letter_for(static_cast<int>(i), side == 0);
      arcs.push_back(a);
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const CircleArc& x, const CircleArc& y) { return x.lo < y.lo; });
  const int m = static_cast<int>(arcs.size());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const char partner_letter = letter_inverse(arcs[static_cast<std::size_t>(i)].letter);
      if (arcs[static_cast<std::size_t>(j)].letter == partner_letter) arcs[static_cast<std::size_t>(i)].partner = j;
    }
    if (ccw(arcs[static_cast<std::size_t>(i)].lo, arcs[static_cast<std::size_t>((i + 1) % m)].lo) <
        arcs[static_cast<std::size_t>(i)].hi - arcs[static_cast<std::size_t>(i)].lo) {
      throw Error("cantor_cycle: pairing circles overlap on the unit circle");
    }
  }

  // Fundamental arc k runs from the end of circle arc k to the start of
  // circle arc k+1. Past its right end the complementary interval continues
  // as h(J_src) where h maps ext(src) into circle k+1; following these
  // letters until the chain returns to k gives the stabilizer P, whose
  // repelling and attracting fixed points are the gap endpoints.
  struct Fundamental {
    double b = 0.0, c = 0.0;
    int component = -1;
  };
  std::vector<Fundamental> fund(static_cast<std::size_t>(m));
  std::vector<int> reps;
  std::vector<mobius::Mobius> rep_stabilizer;
  for (int k = 0; k < m; ++k) {
    if (fund[static_cast<std::size_t>(k)].component >= 0) continue;
    const int comp = static_cast<int>(reps.size());
    mobius::Mobius P = mobius::Mobius::identity();
    int cur = k;
    int steps = 0;
    do {
      fund[static_cast<std::size_t>(cur)].component = comp;
      const CircleArc& next = arcs[static_cast<std::size_t>((cur + 1) % m)];
      P = P * g.letter_mobius(next.letter);
      cur = next.partner;
      if (++steps > 4 * m) throw NumericError("cantor_cycle: gluing cycle does not close");
    } while (cur != k);
    const auto attract = P.attracting_fixed_point();
    const auto repel = P.inverse().attracting_fixed_point();
    if (!attract || !repel || !P.is_loxodromic()) throw NumericError("cantor_cycle: boundary stabilizer is not hyperbolic");
    const double b = angle_of(*repel), c = angle_of(*attract);
    const double j_lo = arcs[static_cast<std::size_t>(k)].hi;
    if (ccw(b, wrap_angle(j_lo)) >= ccw(b, c)) throw NumericError("cantor_cycle: gap endpoints do not bracket the fundamental arc");
    reps.push_back(k);
    rep_stabilizer.push_back(P);
    fund[static_cast<std::size_t>(k)].b = b;
    fund[static_cast<std::size_t>(k)].c = c;
  }
  const int ncomp = static_cast<int>(reps.size());
  if (component >= ncomp) {
    throw Error("cantor_cycle: component " + std::to_string(component) + " out of range (" +
                std::to_string(ncomp) + " components)");
  }

  // Images w(I) of each representative interval, breadth-first so that the
  // first occurrence carries the shortest word.
  struct Node {
    mobius::Mobius map;
    Word word;
  };
  std::vector<Gap> raw;
  std::vector<Node> frontier{{mobius::Mobius::identity(), Word{}}};
  for (int len = 0; len <= L; ++len) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (int c = 0; c < ncomp; ++c) {
        if (component >= 0 && c != component) continue;
        const auto& f = fund[static_cast<std::size_t>(reps[static_cast<std::size_t>(c)])];
        Gap gap;
        gap.b = apply_angle(node.map, f.b);
        gap.c = gap.b + ccw(gap.b, apply_angle(node.map, f.c));
        gap.generation = len;
        gap.component = c;
        gap.word = node.word;
        raw.push_back(std::move(gap));
      }
      if (len == L) continue;
      for (int r = 0; r < 2 * g.rank(); ++r) {
        const char letter = letter_from_rank(r);
        if (!node.word.empty() && node.word.back() == letter_inverse(letter)) continue;
        next.push_back({node.map * g.letter_mobius(letter), node.word + letter});
      }
    }
    frontier = std::move(next);
  }

  // Distinct gaps are disjoint, so any overlap between neighbours after
  // sorting by left endpoint is the same gap reached by w and w P^j.
  // Endpoint rounding grows with word length, hence an overlap test rather
  // than an endpoint comparison.
  std::stable_sort(raw.begin(), raw.end(), [](const Gap& x, const Gap& y) {
    if (x.b != y.b) return x.b < y.b;
    return x.generation < y.generation;
  });
  auto same = [](const Gap& x, const Gap& y, double shift) {
    const double overlap = std::min(x.c, y.c + shift) - std::max(x.b, y.b + shift);
    return overlap > 0.5 * std::min(x.c - x.b, y.c - y.b);
  };
  CantorCycle out;
  out.components = ncomp;
  out.max_generation = L;
  for (Gap& gap : raw) {
    if (!out.gaps.empty() && same(out.gaps.back(), gap, 0.0)) {
      if (gap.generation < out.gaps.back().generation) out.gaps.back() = std::move(gap);
      continue;
    }
    out.gaps.push_back(std::move(gap));
  }
  // A gap straddling angle 0 can appear once near 2 pi and once near 0.
  while (out.gaps.size() > 1 && same(out.gaps.front(), out.gaps.back(), -kTwoPi)) {
    if (out.gaps.back().generation < out.gaps.front().generation) {
      Gap g2 = out.gaps.back();
      g2.b = wrap_angle(g2.b);
      g2.c = g2.b + (out.gaps.back().c - out.gaps.back().b);
      out.gaps.front() = g2;
    }
    out.gaps.pop_back();
  }
  std::stable_sort(out.gaps.begin(), out.gaps.end(), [](const Gap& x, const Gap& y) {
    if (x.generation != y.generation) return x.generation < y.generation;
    return x.b < y.b;
  });
  return out;
}

FiniteKCycle CantorCycle::kcycle(std::size_t max_dim) const {
  const std::size_t d = 2 * gaps.size();
  if (d > max_dim) throw Error("CantorCycle::kcycle: dimension " + std::to_string(d) + " exceeds max_dim");
  FiniteKCycle k;
  const auto n = static_cast<Eigen::Index>(d);
  k.F = CMat::Zero(n, n);
  Eigen::VectorXd gamma(n);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const auto b = static_cast<Eigen::Index>(2 * i), c = b + 1;
    k.F(b, c) = 1.0;
    k.F(c, b) = 1.0;
    gamma(b) = -1.0;
    gamma(c) = 1.0;
    k.labels.push_back("b" + std::to_string(i) + "[" + gaps[i].word + "]");
    k.labels.push_back("c" + std::to_string(i) + "[" + gaps[i].word + "]");
  }
  k.gamma = gamma;
  k.weights = Eigen::VectorXd::Ones(n);
  k.kernel = Eigen::VectorXd::Zero(n);
  return k;
}

CMat CantorCycle::commutator(const std::function<Complex(double)>& a, std::size_t max_dim) const {
  const FiniteKCycle k = kcycle(max_dim);
  CVec diag(k.dim());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    diag(static_cast<Eigen::Index>(2 * i)) = a(wrap_angle(gaps[i].b));
    diag(static_cast<Eigen::Index>(2 * i + 1)) = a(wrap_angle(gaps[i].c));
  }
  const CMat A = diag.asDiagonal();
  return k.F * A - A * k.F;
}

std::vector<double> CantorCycle::commutator_singular_values(const std::function<Complex(double)>& a) const {
  std::vector<double> out;
  out.reserve(2 * gaps.size());
  for (const Gap& gap : gaps) {
    const double s = std::abs(a(wrap_angle(gap.b)) - a(wrap_angle(gap.c)));
    out.push_back(s);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

GenerationScan generation_scan(const CantorCycle& cycle, const std::function<Complex(double)>& a, double p) {
  if (!(p > 0.0)) throw Error("generation_scan: p must be positive");
  std::vector<double> per_gen(static_cast<std::size_t>(cycle.max_generation + 1), 0.0);
  for (const Gap& gap : cycle.gaps) {
    const double s = std::abs(a(wrap_angle(gap.b)) - a(wrap_angle(gap.c)));
    per_gen[static_cast<std::size_t>(gap.generation)] += 2.0 * std::pow(s, p);
  }
  GenerationScan out;
  out.p = p;
  double run = 0.0;
  for (double v : per_gen) {
    run += v;
    out.partial_sums.push_back(run);
  }
  // Geometric mean of the last three generation-to-generation ratios.
  const int last = cycle.max_generation;
  const int first = std::max(1, last - 3);
  double log_ratio = 0.0;
  int count = 0;
  for (int l = first; l < last; ++l) {
    const double u = per_gen[static_cast<std::size_t>(l)], v = per_gen[static_cast<std::size_t>(l + 1)];
    if (u > 0.0 && v > 0.0) {
      log_ratio += std::log(v / u);
      ++count;
    }
  }
  out.growth_ratio = count > 0 ? std::exp(log_ratio / count) : 0.0;
  out.bounded = out.growth_ratio < 1.0;
  return out;
}

// ------------------------------------------------------------------ circle

FiniteKCycle circle_module(int N) {
  if (N < 4) throw Error("circle_module: N must be at least 4");
  FiniteKCycle k;
  const Eigen::Index d = 2 * N;
  k.F = CMat::Zero(d, d);
  k.weights.resize(d);
  k.kernel = Eigen::VectorXd::Zero(d);
  Eigen::Index i = 0;
  for (int mode = -N; mode <= N; ++mode) {
    if (mode == 0) continue;
    k.F(i, i) = mode > 0 ? 1.0 : -1.0;
    k.weights(i) = kTwoPi / std::abs(mode);
    k.labels.push_back("k=" + std::to_string(mode));
    ++i;
  }
  return k;
}

Complex circle_pairing(int k1, int k2, Complex c, int grid) {
  if (k1 == 0) throw Error("circle_pairing: e^{0} d theta is not exact");
  if (grid <= std::abs(k1) + std::abs(k2)) throw Error("circle_pairing: grid too coarse for the modes");
  const Complex I(0.0, 1.0);
  Complex sum = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double t = kTwoPi * j / grid;
    const Complex eta = std::exp(I * static_cast<double>(k1) * t) / (I * static_cast<double>(k1)) + c;
    sum += eta * std::exp(-I * static_cast<double>(k2) * t);
  }
  return I * sum * (kTwoPi / grid);
}

HardyProjections hardy_projections(int N) {
  if (N < 4) throw Error("hardy_projections: N must be at least 4");
  const Eigen::Index d = 2 * N + 1;
  HardyProjections h;
  h.plus.matrix = CMat::Zero(d, d);
  h.minus.matrix = CMat::Zero(d, d);
  for (int k = -N; k <= N; ++k) {
    const Eigen::Index i = k + N;
    if (k > 0) h.plus.matrix(i, i) = 1.0;
    if (k < 0) h.minus.matrix(i, i) = 1.0;
    h.plus.labels.push_back("k=" + std::to_string(k));
  }
  h.minus.labels = h.plus.labels;
  h.plus.basis = h.minus.basis = "fourier";
  h.plus.truncation = h.minus.truncation = N;
  return h;
}

SymbolFunction constant_symbol(Complex c) {
  return {[c](double) { return c; }, "smooth", "constant"};
}

SymbolFunction exponential_symbol(int k) {
  return {[k](double t) { return std::polar(1.0, k * t); }, "smooth", "exp(i" + std::to_string(k) + " theta)"};
}

SymbolFunction smooth_symbol() {
  return {[](double t) { return Complex(1.0 / (1.5 - std::cos(t)), 0.0); }, "smooth", "1/(1.5 - cos theta)"};
}

SymbolFunction weierstrass_symbol(double alpha, int terms) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("weierstrass_symbol: alpha must lie in (0, 1]");
  if (terms < 1 || terms > 20) throw Error("weierstrass_symbol: terms must lie in [1, 20]");
  auto f = [alpha, terms](double t) {
    double s = 0.0;
    for (int j = 0; j <= terms; ++j) s += std::pow(2.0, -j * alpha) * std::cos(std::ldexp(t, j));
    return Complex(s, 0.0);
  };
  char tag[64];
  std::snprintf(tag, sizeof tag, "hoelder(%.17g)", alpha);
  return {f, tag, "weierstrass"};
}

namespace {

// Fourier coefficients a_m, m = -grid/2 .. grid/2 - 1, by direct DFT.
std::vector<Complex> dft(const SymbolFunction& a, int grid) {
  std::vector<Complex> samples(static_cast<std::size_t>(grid));
  for (int j = 0; j < grid; ++j) {
    samples[static_cast<std::size_t>(j)] = a.eval(kTwoPi * j / grid);
    if (!std::isfinite(samples[static_cast<std::size_t>(j)].real()) ||
        !std::isfinite(samples[static_cast<std::size_t>(j)].imag())) {
      throw NumericError("multiplication_operator: symbol is not finite on the grid");
    }
  }
  std::vector<Complex> twiddle(static_cast<std::size_t>(grid));
  for (int j = 0; j < grid; ++j) twiddle[static_cast<std::size_t>(j)] = std::polar(1.0, -kTwoPi * j / grid);
  std::vector<Complex> coef(static_cast<std::size_t>(grid));
  for (int m = -grid / 2; m < grid / 2; ++m) {
    Complex s = 0.0;
    const int step = ((m % grid) + grid) % grid;
    int idx = 0;
    for (int j = 0; j < grid; ++j) {
      s += samples[static_cast<std::size_t>(j)] * twiddle[static_cast<std::size_t>(idx)];
      idx += step;
      if (idx >= grid) idx -= grid;
    }
    coef[static_cast<std::size_t>(m + grid / 2)] = s / static_cast<double>(grid);
  }
  return coef;
}

}  // namespace

MultiplicationOperator multiplication_operator(const SymbolFunction& a, int N, int grid) {
  if (N < 1) throw Error("multiplication_operator: N must be positive");
  if (grid < 8 * N) throw Error("multiplication_operator: grid must be at least 8N to control aliasing");
  const std::vector<Complex> coef = dft(a, grid);
  auto c = [&](int m) { return coef[static_cast<std::size_t>(m + grid / 2)]; };
  MultiplicationOperator out;
  const Eigen::Index d = 2 * N + 1;
  out.op.matrix.resize(d, d);
  for (int k = -N; k <= N; ++k) {
    for (int l = -N; l <= N; ++l) out.op.matrix(k + N, l + N) = c(k - l);
    out.op.labels.push_back("k=" + std::to_string(k));
  }
  out.op.basis = "fourier";
  out.op.truncation = N;
  double alias = 0.0;
  for (int m = -grid / 2; m < grid / 2; ++m) {
    if (std::abs(m) >= grid / 4) alias = std::max(alias, std::abs(c(m)));
  }
  out.aliasing_bound = alias;
  return out;
}

double schatten_norm(const CMat& m, double p) {
  if (!(p > 0.0)) throw Error("schatten_norm: p must be positive");
  const Eigen::VectorXd s = singular_values(m);
  const double top = s.size() ? s.maxCoeff() : 0.0;
  if (top == 0.0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) sum += std::pow(s(i) / top, p);
  return top * std::pow(sum, 1.0 / p);
}

double schatten_norm(const TruncatedOperator& op, double p) { return schatten_norm(op.matrix, p); }

namespace {

CMat commutator_with_plus(const CMat& A, int N) {
  CMat out = A;
  for (int k = -N; k <= N; ++k)
    for (int l = -N; l <= N; ++l) out(k + N, l + N) *= (k > 0 ? 1.0 : 0.0) - (l > 0 ? 1.0 : 0.0);
  return out;
}

}  // namespace

CMat hardy_commutator(const SymbolFunction& a, int N, int grid_factor) {
  if (grid_factor < 8) throw Error("hardy_commutator: grid factor must be at least 8");
  return commutator_with_plus(multiplication_operator(a, N, grid_factor * N).op.matrix, N);
}

JansonWolffResult janson_wolff_integral(const SymbolFunction& a, double p, int grid) {
  if (grid < 256) throw Error("janson_wolff_integral: grid must be at least 256");
  if (grid % 2 != 0) throw Error("janson_wolff_integral: grid must be even");
  if (!(p > 0.0)) throw Error("janson_wolff_integral: p must be positive");
  const int M = grid;
  std::vector<Complex> v(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) v[static_cast<std::size_t>(j)] = a.eval(kTwoPi * j / M);
  // D(m) = sum_j |a_j - a_{j+m}|^p / chord(m)^2, symmetric in m -> M - m.
  const int half = M / 2;
  std::vector<double> D(static_cast<std::size_t>(half + 1), 0.0);
  for (int m = 1; m <= half; ++m) {
    double s = 0.0;
    for (int j = 0; j < M; ++j) {
      const double diff = std::abs(v[static_cast<std::size_t>(j)] - v[static_cast<std::size_t>((j + m) % M)]);
      if (diff > 0.0) s += std::pow(diff, p);
    }
    const double chord = 2.0 * std::sin(std::numbers::pi * m / M);
    D[static_cast<std::size_t>(m)] = s / (chord * chord) * (m == half ? 1.0 : 2.0);
  }
  const double cell = (kTwoPi / M) * (kTwoPi / M);
  // Band cutoffs m_c = M/4, M/8, ..., 16 grid steps; the band |x - y| <= chord(m_c) is excluded.
  JansonWolffResult out;
  std::vector<int> cut;
  for (int mc = M / 4; mc >= 16; mc /= 2) cut.push_back(mc);
  for (int mc : cut) {
    double s = 0.0;
    for (int m = mc + 1; m <= half; ++m) s += D[static_cast<std::size_t>(m)];
    out.cutoffs.push_back(2.0 * std::sin(std::numbers::pi * mc / M));
    out.partial.push_back(s * cell);
  }
  const double total_scale = std::max(std::abs(out.partial.back()), 1e-300);
  std::vector<double> xs, ys;
  for (std::size_t i = 1; i < out.partial.size(); ++i) {
    const double inc = out.partial[i] - out.partial[i - 1];
    if (inc > 1e-14 * total_scale) {
      xs.push_back(static_cast<double>(i));
      ys.push_back(std::log2(inc));
    }
  }
  if (xs.size() < 2) {
    // No measurable band contribution: the symbol is (numerically) constant
    // near the diagonal and the truncated integral is already converged.
    out.exponent = -std::numeric_limits<double>::infinity();
    out.value = out.partial.back();
    return out;
  }
  out.exponent = fit_slope(xs, ys);
  if (out.exponent >= 0.0) {
    out.divergent = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  const double r = std::exp2(out.exponent);
  const double last_inc = out.partial.back() - out.partial[out.partial.size() - 2];
  out.value = out.partial.back() + last_inc * r / (1.0 - r);
  return out;
}

namespace {

// First p at which a decreasing exponent curve crosses zero, by linear
// interpolation; p_grid is ascending.
std::optional<double> zero_crossing(const std::vector<double>& p, const std::vector<double>& e) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (e[i] < 0.0) {
      if (i == 0) return p[0];
      const double t = e[i - 1] / (e[i - 1] - e[i]);
      return p[i - 1] + t * (p[i] - p[i - 1]);
    }
  }
  return std::nullopt;
}

}  // namespace

SummabilityResult summability_threshold(const SymbolFunction& a, const std::vector<int>& N_list,
                                        const std::vector<double>& p_grid, double p_floor, int jw_grid,
                                        int workers) {
  if (N_list.size() < 3) throw Error("summability_threshold: need at least 3 cutoffs N");
  if (p_grid.size() < 2) throw Error("summability_threshold: need at least 2 values of p");
  if (!std::is_sorted(N_list.begin(), N_list.end()) || !std::is_sorted(p_grid.begin(), p_grid.end())) {
    throw Error("summability_threshold: N list and p grid must be ascending");
  }
  for (double p : p_grid)
    if (!(p > 0.0)) throw Error("summability_threshold: p grid must be positive");

  SummabilityResult out;
  out.p_grid = p_grid;
  const int grid = std::max(8 * N_list.back(), jw_grid);
  std::vector<Eigen::VectorXd> sv(N_list.size());
  parallel_for(N_list.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const MultiplicationOperator M = multiplication_operator(a, N_list[i], grid);
      sv[i] = singular_values(commutator_with_plus(M.op.matrix, N_list[i]));
    }
  });
  double top = 0.0;
  for (const auto& s : sv)
    if (s.size()) top = std::max(top, s.maxCoeff());
  if (top <= 1e-13) {
    out.p_star = out.p_schatten = out.p_jw = 0.0;
    out.flags.push_back("commutator ≡ 0");
    out.schatten_exponent.assign(p_grid.size(), -std::numeric_limits<double>::infinity());
    out.jw_exponent = out.schatten_exponent;
    for (int N : N_list)
      for (double p : p_grid) out.rows.push_back({N, p, 0.0, 0.0, "commutator ≡ 0"});
    return out;
  }

  std::vector<JansonWolffResult> jw(p_grid.size());
  parallel_for(p_grid.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) jw[i] = janson_wolff_integral(a, p_grid[i], jw_grid);
  });

  bool monotone = true;
  for (std::size_t ip = 0; ip < p_grid.size(); ++ip) {
    const double p = p_grid[ip];
    std::vector<double> S;
    for (std::size_t iN = 0; iN < N_list.size(); ++iN) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < sv[iN].size(); ++i) {
        const double x = sv[iN](i) / top;
        if (x > 1e-15) s += std::pow(x, p);
      }
      S.push_back(s);
      out.rows.push_back({N_list[iN], p, top * std::pow(s, 1.0 / p), jw[ip].value, jw[ip].divergent ? "jw-divergent" : ""});
    }
    // Exponent of the increments of sum s_i^p in N: increments behave like
    // N^{e(p)}, and the series converges exactly when e(p) < 0.
    std::vector<double> xs, ys;
    for (std::size_t i = 1; i < S.size(); ++i) {
      const double inc = S[i] - S[i - 1];
      if (inc < -1e-12 * S[i]) monotone = false;
      if (inc > 1e-13 * S[i]) {
        xs.push_back(std::log2(0.5 * (N_list[i] + N_list[i - 1])));
        ys.push_back(std::log2(inc / (N_list[i] - N_list[i - 1])) + std::log2(0.5 * (N_list[i] + N_list[i - 1])));
      }
    }
    out.schatten_exponent.push_back(xs.size() >= 2 ? fit_slope(xs, ys) : -std::numeric_limits<double>::infinity());
    out.jw_exponent.push_back(jw[ip].exponent);
  }

  // Both exponents are restricted to the p-summability range p >= p_floor.
  std::vector<double> ps, es, ej;
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (p_grid[i] + 1e-12 < p_floor) continue;
    ps.push_back(p_grid[i]);
    es.push_back(out.schatten_exponent[i]);
    ej.push_back(out.jw_exponent[i]);
  }
  if (ps.empty()) throw Error("summability_threshold: p grid lies entirely below the floor");
  auto resolve = [&](const std::vector<double>& e, const char* name) {
    const auto z = zero_crossing(ps, e);
    if (!z) {
      out.flags.push_back(std::string(name) + ": no crossing in p range");
      return ps.back();
    }
    if (*z <= ps.front() + 1e-12) out.flags.push_back(std::string(name) + ": at floor p = " + std::to_string(ps.front()));
    return *z;
  };
  out.p_schatten = resolve(es, "schatten");
  out.p_jw = resolve(ej, "janson-wolff");
  out.p_star = out.p_schatten;
  if (std::abs(out.p_schatten - out.p_jw) > 0.25 * std::max(out.p_schatten, out.p_jw)) {
    out.flags.push_back("estimators disagree");
  }
  if (!monotone) out.flags.push_back("low-confidence: non-monotone Schatten sums");
  return out;
}

double estimate_hoelder(const groups::BoundaryConjugacy& phi) {
  const auto& s = phi.samples();
  const std::size_t n = s.size();
  if (n < 200) throw Error("estimate_hoelder: need at least 200 samples");
  std::vector<double> xs, ys;
  for (std::size_t m = 1; m <= n / 8; m *= 2) {
    std::vector<double> dt, dv;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& u = s[i];
      const auto& w = s[(i + m) % n];
      dt.push_back(ccw(u.source_angle, w.source_angle));
      dv.push_back((u.target - w.target).norm());
    }
    auto median = [](std::vector<double> v) {
      std::nth_element(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.end());
      return v[v.size() / 2];
    };
    const double mt = median(dt), mv = median(dv);
    if (mt > 0.0 && mv > 0.0) {
      xs.push_back(std::log(mt));
      ys.push_back(std::log(mv));
    }
  }
  if (xs.size() < 2) throw NumericError("estimate_hoelder: degenerate samples");
  return std::clamp(fit_slope(xs, ys), 0.0, 1.0);
}

SymbolFunction pushforward_symbols(const groups::BoundaryConjugacy& phi, const std::function<Complex(const hyp::Vec&)>& f) {
  if (phi.samples().size() < 200) throw Error("pushforward_symbols: boundary map needs at least 200 samples");
  const double alpha = estimate_hoelder(phi);
  char tag[64];
  std::snprintf(tag, sizeof tag, "hoelder(%.17g)", alpha);
  auto map = std::make_shared<groups::BoundaryConjugacy>(phi);
  return {[map, f](double t) { return f((*map)(t)); }, tag, "pullback by boundary conjugacy"};
}

}  // namespace limitlab::kc
