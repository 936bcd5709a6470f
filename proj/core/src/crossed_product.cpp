#include "limitlab/crossed_product.hpp"

#include <cmath>

namespace limitlab::cp {

namespace {

void require_same_group(const CrossedProductElement& a, const CrossedProductElement& b, const char* what) {
  if (a.group() != b.group()) throw Error(std::string(what) + ": elements belong to different groups");
}

// xi.M for a Lorentz matrix M acting on null lifts.
hyp::Vec boundary_apply(const hyp::Mat& m, const hyp::Vec& xi) {
  hyp::Vec lift(xi.size() + 1);
  lift(0) = 1.0;
  lift.tail(xi.size()) = xi;
  const hyp::Vec v = m * lift;
  const hyp::Vec dir = v.tail(xi.size());
  return dir / dir.norm();
}

// xi.w applied one letter at a time. The product matrix of a long word has
// entries ~e^d, and its time row cancels near the attracting direction; the
// letter-by-letter error only grows with the derivative of the map itself.
class WordAction {
 public:
  WordAction(const groups::GroupPresentation& g, const Word& w) {
    for (char c : w) letters_.push_back(g.letter_matrix(c));
  }
  hyp::Vec operator()(hyp::Vec xi) const {
    for (const auto& m : letters_) xi = boundary_apply(m, xi);
    return xi;
  }

 private:
  std::vector<hyp::Mat> letters_;
};

}  // namespace

CrossedProductElement::CrossedProductElement(GroupPtr group) : group_(std::move(group)) {
  if (!group_) throw Error("CrossedProductElement: null group");
}

CrossedProductElement CrossedProductElement::unit(GroupPtr group) {
  return monomial(std::move(group), Word{}, [](const hyp::Vec&) { return Complex(1.0, 0.0); }, 0.0);
}

CrossedProductElement CrossedProductElement::monomial(GroupPtr group, const Word& g, BoundaryFunction f,
                                                      std::optional<double> lipschitz) {
  CrossedProductElement e(std::move(group));
  e.add_term(g, std::move(f), lipschitz);
  return e;
}

void CrossedProductElement::add_term(const Word& g, BoundaryFunction f, std::optional<double> lipschitz) {
  if (!word_is_valid(g, group_->rank())) throw Error("CrossedProductElement: word '" + g + "' is not valid for the group");
  const Word w = word_reduce(g);
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, Coefficient{std::move(f), lipschitz});
    return;
  }
  BoundaryFunction old = it->second.f;
  it->second.f = [old, f](const hyp::Vec& xi) { return old(xi) + f(xi); };
  if (it->second.lipschitz && lipschitz) {
    it->second.lipschitz = *it->second.lipschitz + *lipschitz;
  } else {
    it->second.lipschitz.reset();
  }
}

std::vector<Word> CrossedProductElement::support() const {
  std::vector<Word> out;
  for (const auto& [w, c] : terms_) out.push_back(w);
  return out;
}

std::size_t CrossedProductElement::max_support_length() const {
  std::size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.size());
  return m;
}

Complex CrossedProductElement::coefficient(const Word& g, const hyp::Vec& xi) const {
  auto it = terms_.find(word_reduce(g));
  if (it == terms_.end()) return Complex(0.0, 0.0);
  return it->second.f(xi);
}

hyp::Vec CrossedProductElement::act(const hyp::Vec& xi, const Word& g) const {
  return WordAction(*group_, word_reduce(g))(xi);
}

CrossedProductElement cp_mul(const CrossedProductElement& f, const CrossedProductElement& fp) {
  require_same_group(f, fp, "cp_mul");
  CrossedProductElement out(f.group());
  for (const auto& [g, cg] : f.terms()) {
    const WordAction act_g(*f.group(), g);
    for (const auto& [gp, cgp] : fp.terms()) {
      BoundaryFunction a = cg.f, b = cgp.f;
      out.add_term(word_multiply(g, gp), [a, b, act_g](const hyp::Vec& xi) { return a(xi) * b(act_g(xi)); });
    }
  }
  return out;
}

CrossedProductElement cp_star(const CrossedProductElement& f) {
  CrossedProductElement out(f.group());
  for (const auto& [h, ch] : f.terms()) {
    const Word g = word_inverse(h);
    const WordAction act_g(*f.group(), g);
    BoundaryFunction a = ch.f;
    out.add_term(g, [a, act_g](const hyp::Vec& xi) { return std::conj(a(act_g(xi))); }, ch.lipschitz);
  }
  return out;
}

CrossedProductElement cp_scale(const CrossedProductElement& f, Complex lambda) {
  CrossedProductElement out(f.group());
  for (const auto& [g, c] : f.terms()) {
    BoundaryFunction a = c.f;
    std::optional<double> lip;
    if (c.lipschitz) lip = std::abs(lambda) * *c.lipschitz;
    out.add_term(g, [a, lambda](const hyp::Vec& xi) { return lambda * a(xi); }, lip);
  }
  return out;
}

CrossedProductElement cp_add(const CrossedProductElement& f, const CrossedProductElement& fp) {
  require_same_group(f, fp, "cp_add");
  CrossedProductElement out = f;
  for (const auto& [g, c] : fp.terms()) out.add_term(g, c.f, c.lipschitz);
  return out;
}

TruncatedOperator represent(const CrossedProductElement& f, const hyp::Vec& xi, const groups::WordBall& ball) {
  const auto n = static_cast<Eigen::Index>(ball.size());
  TruncatedOperator op;
  op.matrix = CMat::Zero(n, n);
  op.labels = ball.words();
  op.basis = "group-words";
  op.truncation = ball.max_length();
  op.xi = xi;
  op.truncation_warning = static_cast<int>(f.max_support_length()) > ball.max_length() / 2;
  // xi.gamma^{-1} for every label.
  std::vector<hyp::Vec> xi_inv(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) xi_inv[i] = WordAction(*f.group(), word_inverse(ball.word(i)))(xi);
  for (std::size_t col = 0; col < ball.size(); ++col) {
    for (const auto& [g, c] : f.terms()) {
      const auto row = ball.index_of(word_multiply(g, ball.word(col)));
      if (!row) continue;
      op.matrix(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col)) += c.f(xi_inv[*row]);
    }
  }
  return op;
}

double norm_lower_bound(const CrossedProductElement& f, const std::vector<hyp::Vec>& samples, const groups::WordBall& ball) {
  if (samples.empty()) throw Error("norm_lower_bound: need at least one sample");
  double best = 0.0;
  for (const auto& xi : samples) best = std::max(best, operator_norm(represent(f, xi, ball).matrix));
  return best;
}

CrossedProductElement automorphism(const CrossedProductElement& f, double t, const hyp::InteriorPoint& x) {
  CrossedProductElement out(f.group());
  for (const auto& [g, c] : f.terms()) {
    const hyp::InteriorPoint xg_inv = f.group()->element(word_inverse(g)).act(x);
    BoundaryFunction a = c.f;
    out.add_term(g, [a, x, xg_inv, t](const hyp::Vec& xi) {
      const double d = hyp::busemann(x, xg_inv, hyp::BoundaryPoint(xi));
      return std::polar(1.0, t * d) * a(xi);
    });
  }
  return out;
}

CVec covariance_unitary(double t, const hyp::Vec& xi, const groups::WordBall& ball, const hyp::InteriorPoint& x) {
  if (!ball.has_elements()) throw Error("covariance_unitary: word ball must store group elements");
  CVec u(static_cast<Eigen::Index>(ball.size()));
  const hyp::BoundaryPoint b(xi);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    u(static_cast<Eigen::Index>(i)) = std::polar(1.0, t * hyp::busemann(ball.element(i).act(x), x, b));
  }
  return u;
}

double covariance_defect(const CrossedProductElement& f, double t, const hyp::Vec& xi, const groups::WordBall& ball,
                         const hyp::InteriorPoint& x) {
  const CMat lhs = represent(automorphism(f, t, x), xi, ball).matrix;
  const CVec u = covariance_unitary(t, xi, ball, x);
  const CMat rhs = u.asDiagonal() * represent(f, xi, ball).matrix * u.conjugate().asDiagonal();
  return (lhs - rhs).norm();
}

double homomorphism_defect(const CrossedProductElement& f, const CrossedProductElement& fp, const hyp::Vec& xi,
                           const groups::WordBall& ball) {
  const CMat p = represent(cp_mul(f, fp), xi, ball).matrix;
  const CMat a = represent(f, xi, ball).matrix;
  const CMat b = represent(fp, xi, ball).matrix;
  const int interior = ball.max_length() - static_cast<int>(f.max_support_length());
  if (interior < 0) throw Error("homomorphism_defect: support of f longer than the ball");
  double worst = 0.0;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (ball.length(i) > interior) continue;
    const auto r = static_cast<Eigen::Index>(i);
    worst = std::max(worst, (p.row(r) - a.row(r) * b).cwiseAbs().maxCoeff());
  }
  return worst;
}

Complex tau(const CrossedProductElement& f, const ps::AtomicBoundaryMeasure& mu) {
  auto it = f.terms().find(Word{});
  if (it == f.terms().end()) return Complex(0.0, 0.0);
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) sum += mu.weights[i] * it->second.f(mu.points[i]);
  return sum;
}

KmsReport kms(const CrossedProductElement& f, const CrossedProductElement& fp, double t, double delta,
              const ps::AtomicBoundaryMeasure& mu) {
  require_same_group(f, fp, "kms");
  const hyp::InteriorPoint& x = mu.basepoint;
  KmsReport r;
  for (const auto& [g, c] : f.terms()) {
    const Word g_inv = word_inverse(g);
    auto itp = fp.terms().find(g_inv);
    if (itp == fp.terms().end()) continue;
    const WordAction act_g(*f.group(), g);
    const hyp::InteriorPoint xg_inv = f.group()->element(g_inv).act(x);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const hyp::Vec& xi = mu.points[i];
      const double d = hyp::busemann(xg_inv, x, hyp::BoundaryPoint(xi));
      const Complex phase = std::exp(Complex(-delta * d, t * d));
      r.lhs += mu.weights[i] * c.f(xi) * phase * itp->second.f(act_g(xi));
    }
  }
  r.rhs = tau(cp_mul(automorphism(fp, t, x), f), mu);
  r.defect = std::abs(r.lhs - r.rhs);
  return r;
}

double kms_defect(const CrossedProductElement& f, const CrossedProductElement& fp, double t, double delta,
                  const ps::AtomicBoundaryMeasure& mu) {
  return kms(f, fp, t, delta, mu).defect;
}

CrossedProductElement group_action(const CrossedProductElement& f, const Word& gamma) {
  CrossedProductElement out(f.group());
  const WordAction act_gamma(*f.group(), gamma);
  const Word gamma_inv = word_inverse(gamma);
  for (const auto& [h, c] : f.terms()) {
    BoundaryFunction a = c.f;
    out.add_term(word_multiply(word_multiply(gamma, h), gamma_inv),
                 [a, act_gamma](const hyp::Vec& xi) { return a(act_gamma(xi)); });
  }
  return out;
}

double equivariance_defect(const CrossedProductElement& f, const Word& gamma, const ps::AtomicBoundaryMeasure& mu_x,
                           const ps::AtomicBoundaryMeasure& mu_xgamma) {
  const hyp::InteriorPoint expected = f.group()->element(gamma).act(mu_x.basepoint);
  if (hyp::distance(expected, mu_xgamma.basepoint) > 1e-8) {
    throw Error("equivariance_defect: second measure is not based at x.gamma");
  }
  return std::abs(tau(f, mu_xgamma) - tau(group_action(f, gamma), mu_x));
}

}  // namespace limitlab::cp
