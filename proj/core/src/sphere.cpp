#include "limitlab/sphere.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "limitlab/error.hpp"

namespace limitlab::sphere {

namespace {

constexpr double kPi = std::numbers::pi;

// Nodes and weights of n-point Gauss-Legendre on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

// Orthonormal associated Legendre functions at x = cos(theta), without the
// Condon-Shortley phase, tabulated as [l][m] for 0 <= m <= l <= lmax:
//   P  = Pbar_l^m,
//   Q  = Pbar_l^m / sin(theta) for m >= 1 (finite at the poles),
//   dP = d/dtheta Pbar_l^m.
// The three-term recurrence in l has coefficients depending on x only, so it
// applies to Q unchanged.
struct LegendreTable {
  std::vector<std::vector<double>> P, Q, dP;

  void fill(int lmax, double x) {
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    const auto n = static_cast<std::size_t>(lmax + 1);
    P.assign(n, std::vector<double>(n, 0.0));
    Q = P;
    dP = P;
    auto run = [&](std::vector<std::vector<double>>& T, int m, double start) {
      const auto um = static_cast<std::size_t>(m);
      T[um][um] = start;
      if (m + 1 <= lmax) T[um + 1][um] = x * std::sqrt(2.0 * m + 3.0) * start;
      for (int l = m + 2; l <= lmax; ++l) {
        const double dl = l, dm = m;
        const double a = std::sqrt((4.0 * dl * dl - 1.0) / (dl * dl - dm * dm));
        const double b = std::sqrt(((dl - 1.0) * (dl - 1.0) - dm * dm) / (4.0 * (dl - 1.0) * (dl - 1.0) - 1.0));
        const auto ul = static_cast<std::size_t>(l);
        T[ul][um] = a * (x * T[ul - 1][um] - b * T[ul - 2][um]);
      }
    };
    // pmm = sqrt((2m+1)!! / (4 pi (2m)!!)) s^m; qmm carries s^{m-1}.
    double c = std::sqrt(1.0 / (4.0 * kPi));
    run(P, 0, c);
    double smm1 = 1.0;  // s^{m-1}
    for (int m = 1; m <= lmax; ++m) {
      c *= std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      run(Q, m, c * smm1);
      run(P, m, c * smm1 * s);
      smm1 *= s;
    }
    for (int l = 0; l <= lmax; ++l) {
      const auto ul = static_cast<std::size_t>(l);
      // m = 0: d/dtheta Pbar_l^0 = -sqrt(l(l+1)) Pbar_l^1 (this normalization).
      dP[ul][0] = l >= 1 ? -std::sqrt(l * (l + 1.0)) * P[ul][1] : 0.0;
      // m >= 1: d/dtheta Pbar_l^m = l x Q_l^m - sqrt((2l+1)/(2l-1) (l^2 - m^2)) Q_{l-1}^m.
      for (int m = 1; m <= l; ++m) {
        const auto um = static_cast<std::size_t>(m);
        const double prev = m <= l - 1 ? Q[ul - 1][um] : 0.0;
        const double k = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0) * (static_cast<double>(l) * l - static_cast<double>(m) * m));
        dP[ul][um] = l * x * Q[ul][um] - k * prev;
      }
    }
  }
};

// Surface gradients of e_j = dY_j / sqrt(l(l+1)) at the unit vector p; the
// co-exact partner is p x grad. Uses the (theta, phi) frame except exactly
// at the poles, where only m = +-1 survives and the frame is taken with
// phi = 0.
void eval_fields(const Eigen::Vector3d& p, int l_max, const std::vector<HarmonicLabel>& harmonics,
                 LegendreTable& table, Eigen::Ref<Eigen::MatrixXd> exact, Eigen::Ref<Eigen::MatrixXd> coexact) {
  const double x = std::clamp(p(2), -1.0, 1.0);
  const double st = std::hypot(p(0), p(1));
  const double phi = st > 0.0 ? std::atan2(p(1), p(0)) : 0.0;
  table.fill(l_max, x);
  const Eigen::Vector3d e_theta(x * std::cos(phi), x * std::sin(phi), -st);
  const Eigen::Vector3d e_phi(-std::sin(phi), std::cos(phi), 0.0);
  for (std::size_t j = 0; j < harmonics.size(); ++j) {
    const int l = harmonics[j].l;
    const int m = harmonics[j].m;
    const int am = std::abs(m);
    const auto ul = static_cast<std::size_t>(l), um = static_cast<std::size_t>(am);
    const double norm = m == 0 ? 1.0 : std::sqrt(2.0);
    const double trig = m > 0 ? std::cos(am * phi) : (m < 0 ? std::sin(am * phi) : 1.0);
    // (d/dphi trig) / sin(theta), with the 1/sin(theta) absorbed in Q.
    const double dtrig_over_s = m > 0 ? -am * std::sin(am * phi) * table.Q[ul][um]
                                      : (m < 0 ? am * std::cos(am * phi) * table.Q[ul][um] : 0.0);
    const Eigen::Vector3d grad =
        norm * (table.dP[ul][um] * trig * e_theta + dtrig_over_s * e_phi) / std::sqrt(l * (l + 1.0));
    exact.col(static_cast<Eigen::Index>(j)) = grad;
    coexact.col(static_cast<Eigen::Index>(j)) = p.cross(grad);
  }
}

Eigen::Index block_count(int l_max) { return static_cast<Eigen::Index>(l_max) * (l_max + 2); }

}  // namespace

Quadrature product_quadrature(int degree) {
  if (degree < 1) throw Error("product_quadrature: degree must be positive");
  Quadrature q;
  q.degree = degree;
  // n Gauss points integrate degree 2n - 1 in cos(theta); n_phi uniform
  // points integrate trigonometric degree n_phi - 1 in phi.
  const int n_theta = degree / 2 + 1;
  const int n_phi = degree + 1;
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);
  for (int i = 0; i < n_theta; ++i) {
    const double st = std::sqrt(1.0 - x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * kPi * j / n_phi;
      hyp::Vec p(3);
      p << st * std::cos(phi), st * std::sin(phi), x[static_cast<std::size_t>(i)];
      q.points.push_back(std::move(p));
      q.weights.push_back(w[static_cast<std::size_t>(i)] * 2.0 * kPi / n_phi);
    }
  }
  return q;
}

FormBasis form_basis(int l_max, int quadrature_degree) {
  if (l_max < 2) throw Error("form_basis: l_max must be at least 2");
  if (quadrature_degree < 0) quadrature_degree = 2 * l_max + 2;
  if (quadrature_degree < 2 * l_max + 2) {
    throw Error("form_basis: quadrature degree " + std::to_string(quadrature_degree) +
                " under-resolves harmonic products (need >= " + std::to_string(2 * l_max + 2) + ")");
  }
  FormBasis fb;
  fb.l_max = l_max;
  fb.quad = product_quadrature(quadrature_degree);
  for (int l = 1; l <= l_max; ++l)
    for (int m = -l; m <= l; ++m) fb.harmonics.push_back({l, m});
  const Eigen::Index nb = fb.size();
  const auto nodes = static_cast<Eigen::Index>(fb.quad.points.size());
  fb.fields = Eigen::MatrixXd::Zero(3 * nodes, 2 * nb);

  LegendreTable table;
  Eigen::MatrixXd ex(3, nb), co(3, nb);
  for (Eigen::Index q = 0; q < nodes; ++q) {
    eval_fields(fb.quad.points[static_cast<std::size_t>(q)].head<3>(), l_max, fb.harmonics, table, ex, co);
    fb.fields.block(3 * q, 0, 3, nb) = ex;
    fb.fields.block(3 * q, nb, 3, nb) = co;
  }
  return fb;
}

std::vector<Eigen::Index> interior_indices(int l_max, int l_block) {
  std::vector<Eigen::Index> out;
  const Eigen::Index nb = block_count(l_max);
  const Eigen::Index inner = block_count(std::min(l_block, l_max));
  for (Eigen::Index j = 0; j < inner; ++j) out.push_back(j);
  for (Eigen::Index j = 0; j < inner; ++j) out.push_back(nb + j);
  return out;
}

namespace {

// U^dagger G U for the columns u+ = (e - i c)/sqrt 2, u- = (e + i c)/sqrt 2,
// written out per 2x2 block of G = [[Aee, Aec], [Ace, Acc]].
CMat to_u_basis(const Eigen::MatrixXd& G, Eigen::Index nb) {
  const auto Aee = G.topLeftCorner(nb, nb), Aec = G.topRightCorner(nb, nb);
  const auto Ace = G.bottomLeftCorner(nb, nb), Acc = G.bottomRightCorner(nb, nb);
  const std::complex<double> I(0.0, 1.0);
  CMat out(2 * nb, 2 * nb);
  const Eigen::MatrixXd sym_pp = 0.5 * (Aee + Acc), sym_pm = 0.5 * (Aee - Acc);
  const Eigen::MatrixXd cross_d = 0.5 * (Ace - Aec), cross_s = 0.5 * (Aec + Ace);
  out.topLeftCorner(nb, nb) = sym_pp.cast<std::complex<double>>() + I * cross_d.cast<std::complex<double>>();
  out.topRightCorner(nb, nb) = sym_pm.cast<std::complex<double>>() + I * cross_s.cast<std::complex<double>>();
  out.bottomLeftCorner(nb, nb) = sym_pm.cast<std::complex<double>>() - I * cross_s.cast<std::complex<double>>();
  out.bottomRightCorner(nb, nb) = sym_pp.cast<std::complex<double>>() - I * cross_d.cast<std::complex<double>>();
  return out;
}

std::vector<std::string> u_labels(int l_max) {
  std::vector<std::string> plus, minus;
  for (int l = 1; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      plus.push_back("u+(" + std::to_string(l) + "," + std::to_string(m) + ")");
      minus.push_back("u-(" + std::to_string(l) + "," + std::to_string(m) + ")");
    }
  }
  plus.insert(plus.end(), minus.begin(), minus.end());
  return plus;
}

}  // namespace

kc::FiniteKCycle sphere_signature_operator(int l_max) {
  if (l_max < 2) throw Error("sphere_signature_operator: l_max must be at least 2");
  const Eigen::Index nb = block_count(l_max);
  // With * e = c and * c = -e, gamma = i * sends u+ -> u+ and u- -> -u-,
  // and F = diag(+1 exact, -1 co-exact) sends u+ <-> u-.
  kc::FiniteKCycle k;
  k.labels = u_labels(l_max);
  Eigen::VectorXd gamma(2 * nb);
  gamma.head(nb).setOnes();
  gamma.tail(nb).setConstant(-1.0);
  k.gamma = gamma;
  k.F = CMat::Zero(2 * nb, 2 * nb);
  for (Eigen::Index j = 0; j < nb; ++j) {
    k.F(j, nb + j) = 1.0;
    k.F(nb + j, j) = 1.0;
  }
  k.weights = Eigen::VectorXd::Ones(2 * nb);
  k.kernel = Eigen::VectorXd::Zero(2 * nb);
  return k;
}

TruncatedOperator moebius_pullback(int l_max, const hyp::Isometry& g, int quadrature_degree) {
  if (g.matrix().rows() != 4) throw DimensionMismatch("moebius_pullback: needs an isometry of H^3");
  const FormBasis fb = form_basis(l_max, quadrature_degree);
  const Eigen::Index nb = fb.size();
  const auto nodes = static_cast<Eigen::Index>(fb.quad.points.size());
  const hyp::Mat& M = g.matrix();

  // Pulled-back fields at the nodes: (g*W)(p) = Pi_p Dg_p^T W(g(p)), with
  // Dg_p v = (M_s v - g(p) (M_0 v)) / y_0 for y = M (1, p).
  std::vector<hyp::Vec> images(static_cast<std::size_t>(nodes));
  Eigen::MatrixXd jac_t(3 * nodes, 3);  // stacked Pi_p Dg_p^T
  for (Eigen::Index q = 0; q < nodes; ++q) {
    const hyp::Vec& p = fb.quad.points[static_cast<std::size_t>(q)];
    hyp::Vec lift(4);
    lift << 1.0, p(0), p(1), p(2);
    const hyp::Vec y = M * lift;
    const Eigen::Vector3d gp = y.tail<3>() / y(0);
    images[static_cast<std::size_t>(q)] = gp / gp.norm();
    const Eigen::Matrix3d Ms = M.block<3, 3>(1, 1);
    const Eigen::RowVector3d M0 = M.block<1, 3>(0, 1);
    const Eigen::Matrix3d D = (Ms - gp * M0) / y(0);
    const Eigen::Vector3d n = p.head<3>();
    const Eigen::Matrix3d proj = Eigen::Matrix3d::Identity() - n * n.transpose();
    jac_t.block<3, 3>(3 * q, 0) = proj * D.transpose();
  }

  // Basis fields at the image points, hit by Pi_p Dg_p^T.
  Eigen::MatrixXd at_image(3 * nodes, 2 * nb);
  {
    LegendreTable table;
    Eigen::MatrixXd ex(3, nb), co(3, nb);
    for (Eigen::Index q = 0; q < nodes; ++q) {
      eval_fields(images[static_cast<std::size_t>(q)].head<3>(), l_max, fb.harmonics, table, ex, co);
      const Eigen::Matrix3d J = jac_t.block<3, 3>(3 * q, 0);
      at_image.block(3 * q, 0, 3, nb) = J * ex;
      at_image.block(3 * q, nb, 3, nb) = J * co;
    }
  }

  // Galerkin matrix <b_i, g* b_j> by quadrature.
  Eigen::MatrixXd weighted = fb.fields;
  for (Eigen::Index q = 0; q < nodes; ++q) weighted.middleRows(3 * q, 3) *= fb.quad.weights[static_cast<std::size_t>(q)];
  const Eigen::MatrixXd G = weighted.transpose() * at_image;

  TruncatedOperator out;
  out.matrix = to_u_basis(G, nb);
  out.labels = u_labels(l_max);
  out.basis = "sphere-forms";
  out.truncation = l_max;
  return out;
}

double commutator_defect(const TruncatedOperator& pullback, int l_max, int l_block) {
  const Eigen::Index nb = block_count(l_max);
  if (pullback.dim() != 2 * nb) throw DimensionMismatch("commutator_defect: pullback size does not match l_max");
  // F swaps u+_j and u-_j, so (F P)_{ij} = P_{s(i) j} and (P F)_{ij} = P_{i s(j)}.
  auto swap = [nb](Eigen::Index i) { return i < nb ? i + nb : i - nb; };
  const auto idx = interior_indices(l_max, l_block);
  const auto n = static_cast<Eigen::Index>(idx.size());
  const CMat& P = pullback.matrix;
  CMat sub(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index r = idx[static_cast<std::size_t>(i)], c = idx[static_cast<std::size_t>(j)];
      sub(i, j) = P(swap(r), c) - P(r, swap(c));
    }
  }
  return operator_norm(sub);
}

}  // namespace limitlab::sphere
