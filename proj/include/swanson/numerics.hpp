#ifndef SWANSON_NUMERICS_HPP
#define SWANSON_NUMERICS_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "swanson/catalog.hpp"
#include "swanson/eigenfunctions.hpp"
#include "swanson/errors.hpp"
#include "swanson/potentials.hpp"

namespace swanson {

struct Grid {
  double x0 = 0.0;  // window edges; Dirichlet nodes sit strictly inside
  double x1 = 0.0;
  double h = 0.0;
  int N = 0;
  std::vector<double> x;
  Domain domain;
};

namespace detail {

inline Grid make_grid(double x0, double x1, int N, const Domain& dom) {
  Grid g;
  g.x0 = x0;
  g.x1 = x1;
  g.N = N;
  g.h = (x1 - x0) / double(N + 1);
  g.x.resize(N);
  for (int i = 0; i < N; ++i) g.x[i] = x0 + g.h * double(i + 1);
  g.domain = dom;
  return g;
}

}  // namespace detail

// window selection: finite boxes use the domain; semi-infinite wells use the
// slowest closed-form decay rate; symmetric lines double a default box until
// the target state's tails fall under 1e-10 of its peak
inline Grid build_grid(const ModelSpec& m, int N,
                       std::optional<std::pair<double, double>> window = std::nullopt,
                       const PartnerParameters* partner = nullptr, int nmax = 3) {
  if (N < 16) raise(ErrorCode::InvalidConfig, "grid needs N >= 16");
  if (window) {
    if (!(window->first < window->second))
      raise(ErrorCode::InvalidConfig, "window must satisfy lo < hi");
    if (m.domain.left != EndpointKind::Infinite && window->first < m.domain.lo - 1e-12)
      raise(ErrorCode::InvalidConfig, "window extends past the left domain edge");
    if (m.domain.right != EndpointKind::Infinite && window->second > m.domain.hi + 1e-12)
      raise(ErrorCode::InvalidConfig, "window extends past the right domain edge");
    return detail::make_grid(window->first, window->second, N, m.domain);
  }
  if (m.domain.finite()) return detail::make_grid(m.domain.lo, m.domain.hi, N, m.domain);
  if (!partner) {
    // no decay information; fall back to a stock box
    if (m.domain.semi_infinite()) return detail::make_grid(0.0, 12.0, N, m.domain);
    return detail::make_grid(-12.0, 12.0, N, m.domain);
  }
  auto [a1, b1] = native_partner(m, partner->lambda1, partner->delta1);
  const int bm = bound_max_index(m, *partner);
  const int top = std::min(nmax, bm);
  if (m.id == ModelId::Morse) {
    const double xl = -std::log(80.0 / (2.0 * b1));
    const double xr = 25.0 / std::max(0.5, a1 - double(top));
    return detail::make_grid(xl, xr, N, m.domain);
  }
  if (m.domain.semi_infinite()) {
    double kappa = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= top; ++n) {
      if (m.id == ModelId::Eckart)
        kappa = std::min(kappa, b1 / (a1 + n) - (a1 + n));
      else  // poschl-teller
        kappa = std::min(kappa, partner->lambda1 - double(n));
    }
    const double L = std::max(12.0, 2.0 + 9.0 / std::max(0.05, kappa));
    return detail::make_grid(0.0, L, N, m.domain);
  }
  double L = 12.0;
  for (int iter = 0; iter < 7; ++iter) {
    const int npts = 4001;
    double mx = 0.0, edge = 0.0;
    for (int i = 0; i < npts; ++i) {
      const double x = -L + 2.0 * L * double(i) / double(npts - 1);
      const double a = std::abs(psi_minus(m, *partner, top, x));
      mx = std::max(mx, a);
      if (i == 0 || i == npts - 1) edge = std::max(edge, a);
    }
    if (edge <= 1e-10 * mx) return detail::make_grid(-L, L, N, m.domain);
    L *= 2.0;
  }
  raise(ErrorCode::WindowNotConverged,
        "state envelope still reaches the window edge after 6 doublings");
}

enum class OperatorTag {
  GaugedHMinus,
  GaugedHPlus,
  SwansonHMinus,
  SwansonHPlus,
  DPlus,
  DMinus,
  Atilde,
  AtildeDagger,
  Rho,
  Eta,
  Identity,
  Custom,
};

inline const char* operator_tag_string(OperatorTag t) {
  switch (t) {
    case OperatorTag::GaugedHMinus:  return "h-";
    case OperatorTag::GaugedHPlus:   return "h+";
    case OperatorTag::SwansonHMinus: return "H-";
    case OperatorTag::SwansonHPlus:  return "H+";
    case OperatorTag::DPlus:         return "D+";
    case OperatorTag::DMinus:        return "D-";
    case OperatorTag::Atilde:        return "Atilde";
    case OperatorTag::AtildeDagger:  return "AtildeDagger";
    case OperatorTag::Rho:           return "rho";
    case OperatorTag::Eta:           return "eta";
    case OperatorTag::Identity:      return "identity";
    case OperatorTag::Custom:        return "custom";
  }
  return "?";
}

struct GridOperator {
  Eigen::MatrixXd matrix;
  Grid grid;
  bool symmetric = false;
  OperatorTag tag = OperatorTag::Custom;
};

inline Eigen::MatrixXd d1_matrix(const Grid& g) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(g.N, g.N);
  const double c = 1.0 / (2.0 * g.h);
  for (int i = 0; i + 1 < g.N; ++i) {
    d(i, i + 1) = c;
    d(i + 1, i) = -c;
  }
  return d;
}

inline Eigen::MatrixXd d2_matrix(const Grid& g) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(g.N, g.N);
  const double c = 1.0 / (g.h * g.h);
  for (int i = 0; i < g.N; ++i) {
    d(i, i) = -2.0 * c;
    if (i + 1 < g.N) {
      d(i, i + 1) = c;
      d(i + 1, i) = c;
    }
  }
  return d;
}

// -d2/dx2 + V with Dirichlet walls; the optional flag swaps in the
// pentadiagonal fourth-order stencil (ghost nodes closed by odd reflection)
inline GridOperator discretize_hermitian(const std::function<double(double)>& V,
                                         const Grid& g, bool fourth_order = false) {
  GridOperator op;
  op.grid = g;
  op.symmetric = true;
  op.tag = OperatorTag::GaugedHMinus;
  op.matrix = Eigen::MatrixXd::Zero(g.N, g.N);
  const double c = 1.0 / (g.h * g.h);
  for (int i = 0; i < g.N; ++i) {
    const double vi = V(g.x[i]);
    if (!std::isfinite(vi)) {
      std::ostringstream os;
      os << "potential is not finite at x = " << g.x[i];
      raise(ErrorCode::NonFiniteValue, os.str());
    }
    if (fourth_order) {
      op.matrix(i, i) = 2.5 * c + vi;
      if (i + 1 < g.N) {
        op.matrix(i, i + 1) = -4.0 * c / 3.0;
        op.matrix(i + 1, i) = -4.0 * c / 3.0;
      }
      if (i + 2 < g.N) {
        op.matrix(i, i + 2) = c / 12.0;
        op.matrix(i + 2, i) = c / 12.0;
      }
    } else {
      op.matrix(i, i) = 2.0 * c + vi;
      if (i + 1 < g.N) {
        op.matrix(i, i + 1) = -c;
        op.matrix(i + 1, i) = -c;
      }
    }
  }
  if (fourth_order && g.N >= 2) {
    // the wide stencil reaches one node past each Dirichlet wall; odd
    // reflection (psi(-h) = -psi(h)) keeps those rows fourth order
    op.matrix(0, 0) -= c / 12.0;
    op.matrix(g.N - 1, g.N - 1) -= c / 12.0;
  }
  return op;
}

// s * (-D2 + mu(W D1 + D1 W) - mu^2 W^2 + V), the non-Hermitian form
inline GridOperator discretize_swanson(const ModelSpec& m,
                                       const std::function<double(double)>& V,
                                       const Grid& g,
                                       OperatorTag tag = OperatorTag::SwansonHMinus) {
  GridOperator op;
  op.grid = g;
  op.symmetric = false;
  op.tag = tag;
  const double s = m.couple.s, mu = m.couple.mu;
  Eigen::VectorXd W(g.N), Vd(g.N);
  for (int i = 0; i < g.N; ++i) {
    W(i) = structure_eval(m, g.x[i]).W;
    Vd(i) = V(g.x[i]);
    if (!std::isfinite(Vd(i)) || !std::isfinite(W(i))) {
      std::ostringstream os;
      os << "operator coefficients not finite at x = " << g.x[i];
      raise(ErrorCode::NonFiniteValue, os.str());
    }
  }
  Eigen::MatrixXd d1 = d1_matrix(g);
  op.matrix = -d2_matrix(g);
  op.matrix.noalias() += mu * (W.asDiagonal() * d1);
  op.matrix.noalias() += mu * (d1 * Eigen::MatrixXd(W.asDiagonal()));
  for (int i = 0; i < g.N; ++i)
    op.matrix(i, i) += -mu * mu * W(i) * W(i) + Vd(i);
  op.matrix *= s;
  return op;
}

enum class FirstOrderKind { Atilde, AtildeDagger, DPlus, DMinus };

// Atilde = d/dx + w, its formal transpose-conjugate, and the gauge-dressed
// ladder pair D-/D+ = sqrt(s)(±d/dx ∓ mu W + w); the negative branch picks
// the -sqrt(s) root, which flips the overall sign
inline GridOperator first_order_operator(const ModelSpec& m, const PartnerParameters& p,
                                         FirstOrderKind kind, const Grid& g,
                                         bool negative_branch = false) {
  GridOperator op;
  op.grid = g;
  op.symmetric = false;
  Eigen::VectorXd w(g.N), W(g.N);
  for (int i = 0; i < g.N; ++i) {
    auto sv = susy_superpotential(p, m, g.x[i]);
    w(i) = sv.w;
    W(i) = structure_eval(m, g.x[i]).W;
  }
  const double rs = std::sqrt(m.couple.s), mu = m.couple.mu;
  Eigen::MatrixXd d1 = d1_matrix(g);
  switch (kind) {
    case FirstOrderKind::Atilde:
      op.tag = OperatorTag::Atilde;
      op.matrix = d1;
      op.matrix += Eigen::MatrixXd(w.asDiagonal());
      break;
    case FirstOrderKind::AtildeDagger:
      op.tag = OperatorTag::AtildeDagger;
      op.matrix = -d1;
      op.matrix += Eigen::MatrixXd(w.asDiagonal());
      break;
    case FirstOrderKind::DMinus:
      op.tag = OperatorTag::DMinus;
      op.matrix = d1;
      for (int i = 0; i < g.N; ++i) op.matrix(i, i) += w(i) - mu * W(i);
      op.matrix *= rs;
      break;
    case FirstOrderKind::DPlus:
      op.tag = OperatorTag::DPlus;
      op.matrix = -d1;
      for (int i = 0; i < g.N; ++i) op.matrix(i, i) += w(i) + mu * W(i);
      op.matrix *= rs;
      break;
  }
  if (negative_branch &&
      (kind == FirstOrderKind::DMinus || kind == FirstOrderKind::DPlus))
    op.matrix *= -1.0;
  return op;
}

// diag(e^{-power*mu*intW}); power 1 gives rho, 2 gives eta, negative powers
// their inverses
inline GridOperator gauge_diagonal(const ModelSpec& m, const Grid& g, int power) {
  if (power != 1 && power != -1 && power != 2 && power != -2)
    raise(ErrorCode::InvalidConfig, "gauge power must be one of {1,-1,2,-2}");
  GridOperator op;
  op.grid = g;
  op.symmetric = true;
  op.tag = power == 1 ? OperatorTag::Rho : (power == 2 ? OperatorTag::Eta : OperatorTag::Custom);
  op.matrix = Eigen::MatrixXd::Zero(g.N, g.N);
  for (int i = 0; i < g.N; ++i) {
    const double e = -double(power) * m.couple.mu * structure_eval(m, g.x[i]).intW;
    if (std::abs(e) > 600.0) {
      std::ostringstream os;
      os << "gauge exponent " << e << " at x = " << g.x[i] << " exceeds the overflow guard";
      raise(ErrorCode::GaugeOverflow, os.str());
    }
    op.matrix(i, i) = std::exp(e);
  }
  return op;
}

struct EigResult {
  std::vector<std::complex<double>> values;  // the k requested, sorted
  Eigen::MatrixXcd vectors;                  // column per value when requested
  std::vector<double> residuals;             // ||Mv - lambda v|| per returned pair
};

namespace detail {

inline bool is_tridiagonal(const Eigen::MatrixXd& M) {
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j)
      if (std::abs(i - j) > 1 && M(i, j) != 0.0) return false;
  return true;
}

// one inverse-iteration pass with a partial-pivot tridiagonal solve;
// pivoting introduces a single fill-in band above the superdiagonal
inline Eigen::VectorXd tridiag_inverse_iteration(const Eigen::VectorXd& diag,
                                                 const Eigen::VectorXd& sub,
                                                 double lambda, double norm_scale) {
  const int n = int(diag.size());
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  for (int pass = 0; pass < 8; ++pass) {
    Eigen::VectorXd d(n), du = Eigen::VectorXd::Zero(n), du2 = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd b = v;
    for (int i = 0; i < n; ++i) d(i) = diag(i) - lambda;
    for (int i = 0; i + 1 < n; ++i) du(i) = sub(i);
    for (int i = 0; i + 1 < n; ++i) {
      const double dl = sub(i);
      if (std::abs(dl) > std::abs(d(i))) {
        // swap rows i and i+1, then eliminate
        const double mlt = d(i) / dl;
        const double dnext = d(i + 1);
        const double dunext = i + 2 < n ? du(i + 1) : 0.0;
        const double dui = du(i);
        d(i) = dl;
        du(i) = dnext;
        du2(i) = dunext;
        d(i + 1) = dui - mlt * dnext;
        if (i + 2 < n) du(i + 1) = -mlt * dunext;
        std::swap(b(i), b(i + 1));
        b(i + 1) -= mlt * b(i);
      } else {
        if (d(i) == 0.0) d(i) = 1e-300;
        const double mlt = dl / d(i);
        d(i + 1) -= mlt * du(i);
        b(i + 1) -= mlt * b(i);
      }
    }
    if (d(n - 1) == 0.0) d(n - 1) = 1e-300;
    Eigen::VectorXd y(n);
    y(n - 1) = b(n - 1) / d(n - 1);
    if (n > 1) y(n - 2) = (b(n - 2) - du(n - 2) * y(n - 1)) / d(n - 2);
    for (int i = n - 3; i >= 0; --i)
      y(i) = (b(i) - du(i) * y(i + 1) - du2(i) * y(i + 2)) / d(i);
    const double nrm = y.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
    v = y / nrm;
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
      double t = (diag(i) - lambda) * v(i);
      if (i > 0) t += sub(i - 1) * v(i - 1);
      if (i + 1 < n) t += sub(i) * v(i + 1);
      res += t * t;
    }
    if (std::sqrt(res) <= 1e-10 * norm_scale) break;
  }
  // fix an overall sign for determinism: largest entry positive
  int kmax = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(v(i)) > std::abs(v(kmax))) kmax = i;
  if (v(kmax) < 0.0) v = -v;
  return v;
}

}  // namespace detail

inline EigResult eig_symmetric(const GridOperator& op, int k, bool want_vectors = true) {
  const Eigen::MatrixXd& M = op.matrix;
  const int n = int(M.rows());
  if (k < 1 || k > n) raise(ErrorCode::InvalidConfig, "requested eigenpair count out of range");
  const double scale = std::max(1.0, M.cwiseAbs().rowwise().sum().maxCoeff());
  if (!op.symmetric) raise(ErrorCode::NotSymmetric, "operator was not built symmetric");
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale)
    raise(ErrorCode::NotSymmetric, "matrix entries are not symmetric to round-off");
  EigResult out;
  if (detail::is_tridiagonal(M)) {
    Eigen::VectorXd diag(n), sub(std::max(0, n - 1));
    for (int i = 0; i < n; ++i) diag(i) = M(i, i);
    for (int i = 0; i < n - 1; ++i) sub(i) = 0.5 * (M(i, i + 1) + M(i + 1, i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      raise(ErrorCode::ConvergenceFailure, "tridiagonal eigensolve did not converge");
    out.values.reserve(k);
    for (int i = 0; i < k; ++i) out.values.emplace_back(es.eigenvalues()(i), 0.0);
    if (want_vectors) {
      out.vectors = Eigen::MatrixXcd::Zero(n, k);
      out.residuals.resize(k);
      for (int i = 0; i < k; ++i) {
        Eigen::VectorXd v =
            detail::tridiag_inverse_iteration(diag, sub, es.eigenvalues()(i), scale);
        out.vectors.col(i) = v.cast<std::complex<double>>();
        out.residuals[i] = (M * v - es.eigenvalues()(i) * v).norm();
        if (out.residuals[i] > 1e-8 * scale)
          raise(ErrorCode::ConvergenceFailure,
                "inverse iteration residual above tolerance");
      }
    }
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (M + M.transpose()),
      want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    raise(ErrorCode::ConvergenceFailure, "symmetric eigensolve did not converge");
  out.values.reserve(k);
  for (int i = 0; i < k; ++i) out.values.emplace_back(es.eigenvalues()(i), 0.0);
  if (want_vectors) {
    out.vectors = Eigen::MatrixXcd::Zero(n, k);
    out.residuals.resize(k);
    for (int i = 0; i < k; ++i) {
      Eigen::VectorXd v = es.eigenvectors().col(i);
      out.vectors.col(i) = v.cast<std::complex<double>>();
      out.residuals[i] = (M * v - es.eigenvalues()(i) * v).norm();
    }
  }
  return out;
}

inline EigResult eig_general(const GridOperator& op, int k, bool want_vectors = false) {
  const Eigen::MatrixXd& M = op.matrix;
  const int n = int(M.rows());
  if (n > 1600)
    raise(ErrorCode::SizeGuard,
          "dense nonsymmetric eigensolve capped at N = 1600; shrink the grid");
  if (k < 1 || k > n) raise(ErrorCode::InvalidConfig, "requested eigenpair count out of range");
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, want_vectors);
  if (es.info() != Eigen::Success)
    raise(ErrorCode::ConvergenceFailure, "nonsymmetric eigensolve did not converge");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  const auto& vals = es.eigenvalues();
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (vals(a).real() != vals(b).real()) return vals(a).real() < vals(b).real();
    return vals(a).imag() < vals(b).imag();
  });
  EigResult out;
  out.values.reserve(k);
  for (int i = 0; i < k; ++i) out.values.push_back(vals(idx[i]));
  if (want_vectors) {
    out.vectors = Eigen::MatrixXcd::Zero(n, k);
    out.residuals.resize(k);
    for (int i = 0; i < k; ++i) {
      Eigen::VectorXcd v = es.eigenvectors().col(idx[i]);
      out.vectors.col(i) = v;
      out.residuals[i] = (M.cast<std::complex<double>>() * v - vals(idx[i]) * v).norm() /
                         v.norm();
    }
  }
  return out;
}

}  // namespace swanson

#endif  // SWANSON_NUMERICS_HPP
