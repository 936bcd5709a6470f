#pragma once

// The algebraic crossed product C(Lambda) x| Gamma at finite truncation:
// finite sums f = sum_g f_g g with black-box boundary coefficients.

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "limitlab/groups.hpp"
#include "limitlab/operators.hpp"
#include "limitlab/patterson_sullivan.hpp"

namespace limitlab::cp {

using Complex = std::complex<double>;
using BoundaryFunction = std::function<Complex(const hyp::Vec&)>;
using GroupPtr = std::shared_ptr<const groups::GroupPresentation>;

struct Coefficient {
  BoundaryFunction f;
  std::optional<double> lipschitz;
};

class CrossedProductElement {
 public:
  explicit CrossedProductElement(GroupPtr group);

  static CrossedProductElement unit(GroupPtr group);
  static CrossedProductElement monomial(GroupPtr group, const Word& g, BoundaryFunction f,
                                        std::optional<double> lipschitz = std::nullopt);

  // Adds f to the coefficient of g (the word is reduced first).
  void add_term(const Word& g, BoundaryFunction f, std::optional<double> lipschitz = std::nullopt);

  const GroupPtr& group() const { return group_; }
  const std::map<Word, Coefficient>& terms() const { return terms_; }
  std::vector<Word> support() const;
  std::size_t max_support_length() const;

  // f_g(xi); zero outside the support.
  Complex coefficient(const Word& g, const hyp::Vec& xi) const;

  // xi.g for a word of this element's group.
  hyp::Vec act(const hyp::Vec& xi, const Word& g) const;

 private:
  GroupPtr group_;
  std::map<Word, Coefficient> terms_;
};

// (ff')_gamma(xi) = sum_{g g' = gamma} f_g(xi) f'_{g'}(xi.g)
CrossedProductElement cp_mul(const CrossedProductElement& f, const CrossedProductElement& fp);
// (f*)_g(xi) = conj(f_{g^{-1}}(xi.g))
CrossedProductElement cp_star(const CrossedProductElement& f);
CrossedProductElement cp_scale(const CrossedProductElement& f, Complex lambda);
CrossedProductElement cp_add(const CrossedProductElement& f, const CrossedProductElement& fp);

// Kernel k_{gamma, gamma'}(xi) = f_{gamma gamma'^{-1}}(xi gamma^{-1}) over the
// ball labels.
TruncatedOperator represent(const CrossedProductElement& f, const hyp::Vec& xi, const groups::WordBall& ball);

// Largest truncated operator norm over the samples (a lower bound for the
// sup of ||pi^xi(f)|| over Lambda).
double norm_lower_bound(const CrossedProductElement& f, const std::vector<hyp::Vec>& samples, const groups::WordBall& ball);

// (alpha_t f)_g(xi) = e^{i t D(x, x g^{-1}, xi)} f_g(xi)
CrossedProductElement automorphism(const CrossedProductElement& f, double t, const hyp::InteriorPoint& x);

// Diagonal e^{i t D(x gamma, x, xi)} over the ball labels.
CVec covariance_unitary(double t, const hyp::Vec& xi, const groups::WordBall& ball, const hyp::InteriorPoint& x);

// || pi(alpha_t f) - U pi(f) U^{-1} ||_F
double covariance_defect(const CrossedProductElement& f, double t, const hyp::Vec& xi, const groups::WordBall& ball,
                         const hyp::InteriorPoint& x);

// Homomorphism defect max |pi(ff') - pi(f) pi(f')| over rows gamma with
// |gamma| <= L - (support length of f), where the truncated product is exact.
double homomorphism_defect(const CrossedProductElement& f, const CrossedProductElement& fp, const hyp::Vec& xi,
                           const groups::WordBall& ball);

// tau(f) = int f_e dmu
Complex tau(const CrossedProductElement& f, const ps::AtomicBoundaryMeasure& mu);

struct KmsReport {
  Complex lhs;  // F(t + i delta) by the explicit weight insertion
  Complex rhs;  // tau(alpha_t(f') f)
  double defect = 0.0;
};

KmsReport kms(const CrossedProductElement& f, const CrossedProductElement& fp, double t, double delta,
              const ps::AtomicBoundaryMeasure& mu);
double kms_defect(const CrossedProductElement& f, const CrossedProductElement& fp, double t, double delta,
                  const ps::AtomicBoundaryMeasure& mu);

// (gamma.f)_g(xi) = f_{gamma^{-1} g gamma}(xi gamma)
CrossedProductElement group_action(const CrossedProductElement& f, const Word& gamma);

// |tau_{x gamma}(f) - tau_x(gamma.f)| from measures built directly at x and
// at x gamma.
double equivariance_defect(const CrossedProductElement& f, const Word& gamma, const ps::AtomicBoundaryMeasure& mu_x,
                           const ps::AtomicBoundaryMeasure& mu_xgamma);

}  // namespace limitlab::cp
