#pragma once

// Example Kleinian/Fuchsian groups, word balls, limit-set samples, critical
// exponent estimates and boundary conjugacies.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "limitlab/hyperbolic.hpp"
#include "limitlab/mobius.hpp"
#include "limitlab/words.hpp"

namespace limitlab::groups {

using mobius::Complex;
using mobius::Mobius;

enum class GroupKind { FreeSchottky, PuncturedTorus, Cyclic, Custom };

std::string to_string(GroupKind kind);

struct Circle {
  Complex center;
  double radius = 0.0;
};

// Generator maps the exterior of `from` onto the interior of `to`.
struct SchottkyPairing {
  Circle from;
  Circle to;
};

class GroupPresentation {
 public:
  GroupPresentation(GroupKind kind, int n, std::vector<hyp::Isometry> generators,
                    std::optional<std::vector<Mobius>> mobius_generators = std::nullopt,
                    std::string name = {});

  GroupKind kind() const { return kind_; }
  int n() const { return n_; }
  int rank() const { return static_cast<int>(gens_.size()); }
  const std::string& name() const { return name_; }

  // Matrix for a single letter (inverse letters included).
  const hyp::Mat& letter_matrix(char letter) const;
  const hyp::Isometry& generator(int i) const { return gens_[static_cast<std::size_t>(i)]; }

  bool has_mobius() const { return mobius_.has_value(); }
  const Mobius& letter_mobius(char letter) const;

  // Right-action element of a reduced word: M(s_1 ... s_k) = M(s_k) ... M(s_1).
  hyp::Isometry element(const Word& w) const;
  // Map xi -> xi.w as a Mobius transformation.
  Mobius mobius_element(const Word& w) const;

  // Groups whose discreteness the constructor could not certify.
  bool heuristic() const { return heuristic_; }
  void set_heuristic(bool h) { heuristic_ = h; }

  // Pairing circles for Schottky groups, in generator order.
  const std::vector<SchottkyPairing>& pairings() const { return pairings_; }
  void set_pairings(std::vector<SchottkyPairing> p) { pairings_ = std::move(p); }

  // Complex trace parameters for punctured-torus groups (tr a, tr b, tr ab).
  const std::vector<Complex>& trace_parameters() const { return traces_; }
  void set_trace_parameters(std::vector<Complex> t) { traces_ = std::move(t); }

 private:
  GroupKind kind_;
  int n_;
  std::vector<hyp::Isometry> gens_;
  std::vector<hyp::Mat> letter_mats_;  // indexed by letter_rank
  std::optional<std::vector<Mobius>> mobius_;
  std::vector<Mobius> letter_mobius_;
  std::string name_;
  bool heuristic_ = false;
  std::vector<SchottkyPairing> pairings_;
  std::vector<Complex> traces_;
};

// Schottky group from circle pairings. For n = 2 the circles live in the
// complex plane (Riemann sphere); for n = 1 they must be orthogonal to the
// unit circle so that every generator preserves the disk.
GroupPresentation schottky_group(const std::vector<SchottkyPairing>& pairings, int n = 2);

// The four-circle demo configuration: circles of radius `radius` centered at
// +-c and +-c i, pairing -c -> c and -c i -> c i.
GroupPresentation schottky_demo(double center = 0.6, double radius = 0.25);

// Fuchsian four-circle configuration for n = 1: circles orthogonal to S^1
// centered at +-c, +-c i with radius sqrt(c^2 - 1).
GroupPresentation fuchsian_schottky(double center = 1.2);

// Punctured-torus group with tr a, tr b given; tr ab is the root of the
// Markov relation x^2 + y^2 + z^2 = xyz (which forces tr[a,b] = -2) closest
// to the Fuchsian branch. Real traces give a Fuchsian group preserving the
// unit disk. n must be 1 (real traces only) or 2.
GroupPresentation punctured_torus_group(Complex trace_a, Complex trace_b, int n = 2);

// Cyclic group generated by a translation of length `translation` along the
// first axis.
GroupPresentation cyclic_group(int n, double translation);

GroupPresentation custom_group(int n, std::vector<hyp::Isometry> generators, std::string name = "custom");

// h g h^{-1} for every generator (requires Mobius generators, n = 2 result).
GroupPresentation conjugate(const GroupPresentation& g, const Mobius& h);

struct EnumerationOptions {
  std::size_t max_elements = 4'000'000;
  bool store_elements = true;
  double dedup_tolerance = 1e-8;
};

// Deduplicated reduced words up to length L in breadth-first, lexicographic
// (a < A < b < B ...) order, with orbit points and displacements.
class WordBall {
 public:
  int n() const { return n_; }
  int max_length() const { return max_length_; }
  std::size_t size() const { return words_.size(); }
  const hyp::InteriorPoint& basepoint() const { return basepoint_; }

  const Word& word(std::size_t i) const { return words_[i]; }
  const std::vector<Word>& words() const { return words_; }
  int length(std::size_t i) const { return static_cast<int>(words_[i].size()); }
  double displacement(std::size_t i) const { return displacement_[i]; }
  const std::vector<double>& displacements() const { return displacement_; }

  // x0.gamma in Lorentz coordinates.
  Eigen::Map<const hyp::Vec> orbit_lorentz(std::size_t i) const;
  hyp::InteriorPoint orbit_point(std::size_t i) const;

  bool has_elements() const { return !matrices_.empty(); }
  hyp::Isometry element(std::size_t i) const;

  std::optional<std::size_t> index_of(const Word& w) const;

  // Number of dropped duplicates (always zero for free groups).
  std::size_t duplicates_removed() const { return duplicates_removed_; }

 private:
  friend WordBall enumerate_ball(const GroupPresentation&, int, const hyp::InteriorPoint&,
                                 const EnumerationOptions&);
  WordBall(int n, int L, hyp::InteriorPoint basepoint) : n_(n), max_length_(L), basepoint_(std::move(basepoint)) {}

  int n_;
  int max_length_;
  hyp::InteriorPoint basepoint_;
  std::vector<Word> words_;
  std::vector<double> orbit_;
  std::vector<double> displacement_;
  std::vector<double> matrices_;
  std::size_t duplicates_removed_ = 0;
  std::shared_ptr<std::unordered_map<Word, std::size_t>> index_;
};

WordBall enumerate_ball(const GroupPresentation& g, int max_length, const hyp::InteriorPoint& x0,
                        const EnumerationOptions& options = {});

// Depth-first lexicographic walk over reduced words of length 1..L without
// storing them. The callback receives the word and x0.w (Lorentz, not
// re-normalized).
void for_each_word(const GroupPresentation& g, int max_length, const hyp::InteriorPoint& x0,
                   const std::function<void(const Word&, const hyp::Vec&)>& visit);

// Depth-first walk over reduced words whose orbit points stay within
// R + slack of x0 along the whole prefix chain; visits every word with
// d(x0, x0.w) <= R whose prefixes never leave that neighborhood. The walk
// stops with an error after `max_nodes` visits; returns the visit count.
std::size_t for_each_in_radius(const GroupPresentation& g, double radius, double slack, const hyp::InteriorPoint& x0,
                        const std::function<void(const Word&, double)>& visit, std::size_t max_nodes = 200'000'000);

struct BoundaryCloud {
  int n = 0;
  std::vector<hyp::Vec> points;
  std::vector<Word> words;
};

// Radial projections of x0.gamma over words of exact length L.
BoundaryCloud limit_set_sample(const GroupPresentation& g, int L, const hyp::InteriorPoint& x0,
                               std::size_t max_points = 8'000'000);

struct DeltaOptions {
  // Completeness radius = this quantile of the exact-length-L displacements.
  double completeness_quantile = 0.02;
  // Fit window is [fit_start_fraction * R_c, R_c].
  double fit_start_fraction = 0.5;
  int fit_points = 40;
  std::size_t min_elements = 1000;
  std::size_t max_elements = 40'000'000;
  // Orbit counts are taken from a displacement-pruned walk to R_c, so that
  // long words with short displacement (cusp excursions) are not lost to the
  // word-length cutoff. A prefix may exceed R_c by at most this slack.
  double prune_slack = 1.5;
  std::size_t max_nodes = 200'000'000;
};

struct CriticalExponentEstimate {
  double value = 0.0;       // clamped to [0, n]
  double raw_slope = 0.0;   // unclamped least-squares slope
  double residual = 0.0;    // RMS residual of log N(R)
  int max_length = 0;
  std::size_t nodes_visited = 0;
  double radius_lo = 0.0;
  double radius_hi = 0.0;
  std::size_t elements = 0;
  std::vector<double> radii;
  std::vector<double> counts;
};

CriticalExponentEstimate estimate_delta(const GroupPresentation& g, int max_length, const hyp::InteriorPoint& x0,
                                        const DeltaOptions& options = {});

struct BoxDimensionResult {
  double value = 0.0;
  double residual = 0.0;
  std::vector<double> scales;
  std::vector<double> counts;
};

// Slope of log(occupied grid cells) against log(1/scale) in the ambient
// R^{n+1} coordinates of the cloud.
BoxDimensionResult box_dimension(const BoundaryCloud& cloud, const std::vector<double>& scales);

// Geometric scale list from `coarse` down to `fine`.
std::vector<double> geometric_scales(double coarse, double fine, int count);

struct ConjugacySample {
  double source_angle = 0.0;
  hyp::Vec source;  // point of S^1 in R^2
  hyp::Vec target;  // point of S^{n'} in R^{n'+1}
  Word word;
};

// Boundary map phi between the round circle of a Fuchsian group and the
// limit set of a deformation, known on attracting fixed points of hyperbolic
// words and extended by circular piecewise-linear interpolation in angle.
class BoundaryConjugacy {
 public:
  BoundaryConjugacy(std::vector<ConjugacySample> samples, std::vector<Word> skipped, int target_n);

  const std::vector<ConjugacySample>& samples() const { return samples_; }
  const std::vector<Word>& skipped() const { return skipped_; }
  int target_n() const { return target_n_; }
  static constexpr const char* interpolation_rule() { return "circular-piecewise-linear-in-angle"; }

  hyp::Vec operator()(double theta) const;

  // Largest angular gap between consecutive samples.
  double max_gap() const;

 private:
  std::vector<ConjugacySample> samples_;
  std::vector<Word> skipped_;
  int target_n_;
};

BoundaryConjugacy boundary_conjugacy(const GroupPresentation& fuchsian, const GroupPresentation& deformed,
                                     int max_length);

// Attracting fixed point of a loxodromic isometry by power iteration on the
// boundary action (any n).
hyp::BoundaryPoint attracting_fixed_point(const hyp::Isometry& g, int max_iterations = 200);

// Shortest nontrivial displacement over the ball of radius L; a runaway-orbit
// heuristic for non-certified groups.
double shortest_displacement(const GroupPresentation& g, int max_length, const hyp::InteriorPoint& x0);

}  // namespace limitlab::groups
