#pragma once

// Concrete K-cycles: the Cantor-set cycle of a Fuchsian Schottky group, the
// H^{-1/2} circle model with its Hardy projections, and Schatten-class
// summability experiments for commutators with multiplication operators.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "limitlab/groups.hpp"
#include "limitlab/operators.hpp"

namespace limitlab::kc {

using Complex = std::complex<double>;

struct FiniteKCycle {
  std::vector<std::string> labels;
  std::optional<Eigen::VectorXd> gamma;  // diagonal grading; empty for odd cycles
  CMat F;
  Eigen::VectorXd weights;   // Hilbert norms squared of the basis vectors
  Eigen::VectorXd kernel;    // diagonal of the explicit kernel projection (0/1)

  Eigen::Index dim() const { return F.rows(); }
  double anticommutator_defect() const;  // ||F gamma + gamma F||_max
  double square_defect() const;          // ||F^2 - (I - P_ker)||_max
  double selfadjoint_defect() const;     // ||F - F^dagger||_max
};

// ------------------------------------------------------------------ Cantor

struct Gap {
  double b = 0.0;  // left endpoint angle in [0, 2 pi)
  double c = 0.0;  // right endpoint angle, counterclockwise from b
  int generation = 0;
  int component = 0;
  Word word;
};

struct CantorCycle {
  std::vector<Gap> gaps;
  int components = 0;
  int max_generation = 0;

  // Endpoint basis b_0, c_0, b_1, c_1, ...; gamma = -1 on b_i, +1 on c_i and
  // F swaps b_i with c_i. Dense; refuses above `max_dim`.
  FiniteKCycle kcycle(std::size_t max_dim = 4000) const;
  // [F, a] for the diagonal multiplication by a at the endpoints.
  CMat commutator(const std::function<Complex(double)>& a, std::size_t max_dim = 4000) const;
  // Singular values of [F, a] in closed form: |a(b_i) - a(c_i)|, each twice.
  std::vector<double> commutator_singular_values(const std::function<Complex(double)>& a) const;
};

// Gaps of the limit set of a Fuchsian Schottky group (n = 1, circles
// orthogonal to S^1) down to generation L. `component` selects one
// component of Omega / Gamma; -1 keeps all of them.
CantorCycle cantor_cycle(const groups::GroupPresentation& g, int L, int component = -1);

struct GenerationScan {
  double p = 0.0;
  std::vector<double> partial_sums;  // sum over generations <= l of s_i^p
  double growth_ratio = 0.0;         // geometric mean of successive generation increments
  bool bounded = false;
};

GenerationScan generation_scan(const CantorCycle& cycle, const std::function<Complex(double)>& a, double p);

// ------------------------------------------------------------------ circle

// Basis e^{ik theta} d theta, 1 <= |k| <= N, ordered k = -N..-1, 1..N.
// T = sign(k), norms 2 pi / |k|, no grading.
FiniteKCycle circle_module(int N);

// i int eta_1 ^ conj(omega_2) for omega_j = e^{i k_j theta} d theta with
// eta_1 = e^{i k_1 theta} / (i k_1) + c, by trapezoidal quadrature.
Complex circle_pairing(int k1, int k2, Complex c, int grid = 256);

// Flat L^2 model on modes -N..N (k = 0 included; E+- vanish there).
struct HardyProjections {
  TruncatedOperator plus;
  TruncatedOperator minus;
};
HardyProjections hardy_projections(int N);

struct SymbolFunction {
  std::function<Complex(double)> eval;
  std::string smoothness = "smooth";  // smooth | hoelder(alpha) | sampled
  std::string description;
};

SymbolFunction constant_symbol(Complex c);
SymbolFunction exponential_symbol(int k);
// 1 / (1.5 - cos theta): analytic, nonconstant.
SymbolFunction smooth_symbol();
// sum_{j <= terms} 2^{-j alpha} cos(2^j theta)
SymbolFunction weierstrass_symbol(double alpha = 0.5, int terms = 8);

struct MultiplicationOperator {
  TruncatedOperator op;
  double aliasing_bound = 0.0;  // largest |a_m| over the upper half of the grid spectrum
};

// Convolution matrix (a_{k-l}) on modes |k|, |l| <= N from a DFT on `grid`
// points; grid must be at least 8N.
MultiplicationOperator multiplication_operator(const SymbolFunction& a, int N, int grid);

double schatten_norm(const CMat& m, double p);
double schatten_norm(const TruncatedOperator& op, double p);

// [E+, M_a] on modes |k| <= N.
CMat hardy_commutator(const SymbolFunction& a, int N, int grid_factor = 8);

struct JansonWolffResult {
  double value = 0.0;          // h -> 0 extrapolation (inf when divergent)
  double exponent = 0.0;       // log2 ratio of successive band increments; >= 0 means divergent
  bool divergent = false;
  std::vector<double> cutoffs;
  std::vector<double> partial;  // integral with |x - y| > h
};

// int int |a(x) - a(y)|^p / |x - y|^2 dx dy over S^1 x S^1 (chordal distance)
// with a diagonal band |x - y| <= h removed and extrapolated in h.
JansonWolffResult janson_wolff_integral(const SymbolFunction& a, double p, int grid = 4096);

struct ThresholdRow {
  int N = 0;
  double p = 0.0;
  double schatten = 0.0;
  double jw = 0.0;
  std::string flags;
};

struct SummabilityResult {
  double p_schatten = 0.0;
  double p_jw = 0.0;
  double p_star = 0.0;
  std::vector<std::string> flags;
  std::vector<double> p_grid;
  std::vector<double> schatten_exponent;  // per p
  std::vector<double> jw_exponent;        // per p
  std::vector<ThresholdRow> rows;
};

// Smallest p (restricted to p >= p_floor, the p-summability range) at which
// the increments of sum s_i^p over doubling N stop growing, and the matching
// Janson-Wolff divergence boundary.
SummabilityResult summability_threshold(const SymbolFunction& a, const std::vector<int>& N_list,
                                        const std::vector<double>& p_grid, double p_floor = 1.0, int jw_grid = 4096,
                                        int workers = 1);

// a(theta) = f(phi(theta)), tagged with an estimated Hoelder exponent.
SymbolFunction pushforward_symbols(const groups::BoundaryConjugacy& phi, const std::function<Complex(const hyp::Vec&)>& f);
double estimate_hoelder(const groups::BoundaryConjugacy& phi);

}  // namespace limitlab::kc
