#include "gvmm/momentum.hpp"

#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

namespace gvmm {

namespace {

Mat default_exp(const Mat& a) {
  if (a.imag().norm() == 0.0) return RMat(a.real().exp()).cast<cplx>();
  return a.exp();
}

Mat group_exp(const SymplecticSample& sys, const Mat& a) { return sys.exp ? sys.exp(a) : default_exp(a); }

double wrap(double d, double period) { return d - period * std::round(d / period); }

Mat momentum_checked(const SymplecticSample& sys, const Vec& m) {
  if (sys.in_chart && !sys.in_chart(m))
    throw Error(ErrorCode::ChartBoundary, sys.name + ": evaluation point leaves the chart");
  Mat j = sys.momentum(m);
  if (!j.allFinite()) throw Error(ErrorCode::ChartBoundary, sys.name + ": momentum not finite near point");
  return j;
}

// Left logarithmic derivative of J along X at m, second order central differences.
Mat delta_j(const SymplecticSample& sys, const Vec& m, const Vec& x, double h) {
  if (sys.in_chart && (!sys.in_chart(m + 2 * h * x) || !sys.in_chart(m - 2 * h * x)))
    throw Error(ErrorCode::ChartBoundary, sys.name + ": neighbourhood leaves the chart");
  const Mat jp = momentum_checked(sys, m + h * x);
  const Mat jm = momentum_checked(sys, m - h * x);
  switch (sys.dual) {
    case DualKind::Additive:
      return (jp - jm) / (2 * h);
    case DualKind::MatrixGroup: {
      const Mat j0 = momentum_checked(sys, m);
      return j0.partialPivLu().solve(Mat((jp - jm) / (2 * h)));
    }
    case DualKind::Torus: {
      Mat d = Mat::Zero(jp.rows(), jp.cols());
      for (Eigen::Index i = 0; i < jp.rows(); ++i)
        d(i, i) = wrap((jp(i, i) - jm(i, i)).real(), sys.torus_periods(i)) / (2 * h);
      return d;
    }
  }
  return {};
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat r = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  r.topLeftCorner(a.rows(), a.cols()) = a;
  r.bottomRightCorner(b.rows(), b.cols()) = b;
  return r;
}

}  // namespace

OmegaCheck check_omega(const SymplecticSample& sys) {
  const RMat w = sys.omega(sys.point);
  OmegaCheck c;
  c.antisymmetry = (w + w.transpose()).norm();
  Eigen::JacobiSVD<RMat> svd(w);
  const auto& s = svd.singularValues();
  c.condition = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
  return c;
}

double inf_action_consistency(const SymplecticSample& sys, const Mat& a, double step) {
  const Vec vp = sys.action(group_exp(sys, step * a), sys.point);
  const Vec vm = sys.action(group_exp(sys, -step * a), sys.point);
  return ((vp - vm) / (2 * step) - sys.inf_action(a, sys.point)).norm();
}

double momentum_residual_at(const SymplecticSample& sys, const Vec& m, const Mat& a, const PairingFn& kappa,
                            double fd_step) {
  const RMat w = sys.omega(m);
  const Vec astar = sys.inf_action(a, m);
  const Vec wa = w.transpose() * astar;  // omega(A*, X) = A*^T W X
  double res = 0.0;
  Vec x = Vec::Zero(m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    x.setZero();
    x(i) = 1.0;
    const Mat dj = delta_j(sys, m, x, fd_step);
    res = std::max(res, std::abs(wa(i) + kappa(a, dj)));
  }
  return res;
}

double momentum_residual(const SymplecticSample& sys, const Mat& a, const PairingFn& kappa, double fd_step) {
  return momentum_residual_at(sys, sys.point, a, kappa, fd_step);
}

double momentum_residual_all(const SymplecticSample& sys, const PairingFn& kappa, double fd_step) {
  double r = 0.0;
  for (const Mat& a : sys.generators) r = std::max(r, momentum_residual(sys, a, kappa, fd_step));
  return r;
}

double circle_momentum_residual(const SymplecticSample& sys, double fd_step) {
  SymplecticSample s = sys;
  s.dual = DualKind::Torus;
  if (s.torus_periods.size() == 0) s.torus_periods = Vec::Ones(1);
  const Mat one = Mat::Ones(1, 1);
  return momentum_residual(s, one, [](const Mat& a, const Mat& b) { return (a(0, 0) * b(0, 0)).real(); },
                           fd_step);
}

Vec hamiltonian_gradient(const Hamiltonian& h, const Vec& z, double step) {
  if (h.gradient) return h.gradient(z);
  Vec g(z.size());
  Vec zp = z, zm = z;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    zp(i) = z(i) + step;
    zm(i) = z(i) - step;
    g(i) = (h.value(zp) - h.value(zm)) / (2 * step);
    zp(i) = zm(i) = z(i);
  }
  return g;
}

Vec hamiltonian_vector_field(const SymplecticSample& sys, const Hamiltonian& h, const Vec& z) {
  // omega(X, Y) = X^T W Y = dH(Y)  =>  W^T X = grad H
  const RMat w = sys.omega(z);
  return w.transpose().partialPivLu().solve(hamiltonian_gradient(h, z));
}

Vec implicit_midpoint_step(const SymplecticSample& sys, const Hamiltonian& h, const Vec& z, double dt,
                           int* iterations) {
  Vec z1 = z + dt * hamiltonian_vector_field(sys, h, z);
  for (int it = 1; it <= 50; ++it) {
    const Vec next = z + dt * hamiltonian_vector_field(sys, h, 0.5 * (z + z1));
    const double delta = (next - z1).norm();
    z1 = next;
    if (!z1.allFinite()) break;
    if (delta <= 1e-12 * std::max(1.0, z1.norm())) {
      if (iterations) *iterations = it;
      return z1;
    }
  }
  throw Error(ErrorCode::IntegratorDiverged, sys.name + ": fixed point iteration did not converge");
}

Vec rk4_step(const SymplecticSample& sys, const Hamiltonian& h, const Vec& z, double dt) {
  const Vec k1 = hamiltonian_vector_field(sys, h, z);
  const Vec k2 = hamiltonian_vector_field(sys, h, z + 0.5 * dt * k1);
  const Vec k3 = hamiltonian_vector_field(sys, h, z + 0.5 * dt * k2);
  const Vec k4 = hamiltonian_vector_field(sys, h, z + dt * k3);
  return z + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
}

double momentum_distance(const SymplecticSample& sys, const Mat& j0, const Mat& j1) {
  switch (sys.dual) {
    case DualKind::Additive:
      return (j1 - j0).norm();
    case DualKind::MatrixGroup: {
      const Mat r = j0.partialPivLu().solve(j1);
      return Mat(r.log()).norm();
    }
    case DualKind::Torus: {
      double s = 0.0;
      for (Eigen::Index i = 0; i < j0.rows(); ++i) {
        const double d = wrap((j1(i, i) - j0(i, i)).real(), sys.torus_periods(i));
        s += d * d;
      }
      return std::sqrt(s);
    }
  }
  return 0.0;
}

NoetherReport noether_drift(const SymplecticSample& sys, const Hamiltonian& h, double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw Error(ErrorCode::PreconditionFailed, "noether_drift needs dt > 0");
  NoetherReport rep;
  const Vec grad = hamiltonian_gradient(h, sys.point);
  for (const Mat& a : sys.generators)
    rep.invariance = std::max(rep.invariance, std::abs(grad.dot(sys.inf_action(a, sys.point))));
  const Mat j0 = sys.momentum(sys.point);
  Vec z = sys.point;
  rep.steps = static_cast<int>(std::llround(t_end / dt));
  for (int s = 0; s < rep.steps; ++s) {
    int it = 0;
    z = implicit_midpoint_step(sys, h, z, dt, &it);
    rep.max_iterations = std::max(rep.max_iterations, it);
    rep.drift = std::max(rep.drift, momentum_distance(sys, j0, sys.momentum(z)));
  }
  rep.final_point = z;
  return rep;
}

RMat nonequivariance_cocycle(const SymplecticSample& sys, const std::vector<Mat>& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const RMat w = sys.omega(sys.point);
  std::vector<Vec> stars;
  for (const Mat& a : basis) stars.push_back(sys.inf_action(a, sys.point));
  RMat sigma = RMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      sigma(i, j) = stars[i].dot(w * stars[j]);
      sigma(j, i) = -sigma(i, j);
    }
  return sigma;
}

double cocycle_cyclic_residual(const SymplecticSample& sys, const std::vector<Mat>& basis) {
  const RMat w = sys.omega(sys.point);
  auto sigma = [&](const Mat& a, const Mat& b) {
    return sys.inf_action(a, sys.point).dot(w * sys.inf_action(b, sys.point));
  };
  double r = 0.0;
  for (const Mat& a : basis)
    for (const Mat& b : basis)
      for (const Mat& c : basis) {
        const double v = sigma(commutator(a, b), c) + sigma(commutator(b, c), a) + sigma(commutator(c, a), b);
        r = std::max(r, std::abs(v));
      }
  return r;
}

double poisson_map_residual(const SymplecticSample& sys, const DualPoissonFn& pi, const PairingFn& kappa,
                            const std::vector<Mat>& basis) {
  const RMat w = sys.omega(sys.point);
  const Mat j = sys.momentum(sys.point);
  double r = 0.0;
  for (const Mat& a : basis) {
    const Vec as = sys.inf_action(a, sys.point);
    for (const Mat& b : basis) {
      const double lhs = as.dot(w * sys.inf_action(b, sys.point));
      r = std::max(r, std::abs(lhs - kappa(a, pi(j, b))));
    }
  }
  return r;
}

ExtensionResult extension_momentum(const SymplecticSample& h_part, const PairingFn& kappa_h,
                                   const SymplecticSample& sigma_part, const PairingFn& kappa_g,
                                   double fd_step) {
  if (h_part.generators.empty() || sigma_part.generators.empty())
    throw Error(ErrorCode::PreconditionFailed, "extension needs generators on both parts");
  if (h_part.dual != sigma_part.dual)
    throw Error(ErrorCode::PreconditionFailed, "extension parts must use the same kind of dual group");
  ExtensionResult out;
  out.residual_h = momentum_residual_all(h_part, kappa_h, fd_step);
  out.residual_sigma = momentum_residual_all(sigma_part, kappa_g, fd_step);
  if (out.residual_h > 1e-5 || out.residual_sigma > 1e-5)
    throw Error(ErrorCode::PreconditionFailed, "extension parts are not momentum maps (residuals " +
                                                   std::to_string(out.residual_h) + ", " +
                                                   std::to_string(out.residual_sigma) + ")");

  const Eigen::Index ar = h_part.generators[0].rows(), ac = h_part.generators[0].cols();
  const Mat jh0 = h_part.momentum(h_part.point);
  const Eigen::Index jr = jh0.rows(), jc = jh0.cols();
  const Eigen::Index br = sigma_part.generators[0].rows(), bc = sigma_part.generators[0].cols();
  const Mat js0 = sigma_part.momentum(sigma_part.point);
  const Eigen::Index sr = js0.rows(), sc = js0.cols();

  SymplecticSample k;
  k.name = h_part.name + "+" + sigma_part.name;
  k.point = h_part.point;
  k.omega = h_part.omega;
  k.dual = h_part.dual;
  if (k.dual == DualKind::Torus) {
    k.torus_periods.resize(h_part.torus_periods.size() + sigma_part.torus_periods.size());
    k.torus_periods << h_part.torus_periods, sigma_part.torus_periods;
  }
  k.in_chart = h_part.in_chart;
  for (const Mat& a : h_part.generators) k.generators.push_back(block_diag(a, Mat::Zero(br, bc)));
  for (const Mat& b : sigma_part.generators) k.generators.push_back(block_diag(Mat::Zero(ar, ac), b));
  k.inf_action = [h_part, sigma_part, ar, ac, br, bc](const Mat& x, const Vec& m) {
    return Vec(h_part.inf_action(x.topLeftCorner(ar, ac), m) +
               sigma_part.inf_action(x.bottomRightCorner(br, bc), m));
  };
  k.exp = [h_part, sigma_part, ar, ac, br, bc](const Mat& x) {
    return block_diag(group_exp(h_part, x.topLeftCorner(ar, ac)), group_exp(sigma_part, x.bottomRightCorner(br, bc)));
  };
  k.action = [h_part, sigma_part, ar, ac, br, bc](const Mat& g, const Vec& m) {
    return h_part.action(g.topLeftCorner(ar, ac), sigma_part.action(g.bottomRightCorner(br, bc), m));
  };
  k.momentum = [h_part, sigma_part](const Vec& m) {
    return block_diag(h_part.momentum(m), sigma_part.momentum(m));
  };
  out.kappa = [kappa_h, kappa_g, ar, ac, br, bc, jr, jc, sr, sc](const Mat& x, const Mat& mu) {
    return kappa_h(x.topLeftCorner(ar, ac), mu.topLeftCorner(jr, jc)) +
           kappa_g(x.bottomRightCorner(br, bc), mu.bottomRightCorner(sr, sc));
  };
  out.residual_combined = momentum_residual_all(k, out.kappa, fd_step);
  out.combined = std::move(k);
  return out;
}

std::function<Mat(const Vec&)> lift_momentum(std::function<Mat(const Vec&)> j_sigma,
                                             std::function<Mat(const Vec&)> j_h,
                                             std::function<Mat(const Mat&)> tau_star, GroupModel dual) {
  return [=](const Vec& m) { return dual.mul(j_sigma(m), dual.exp(tau_star(j_h(m)))); };
}

SymplecticSample subgroup_momentum(const SymplecticSample& sys, const DualPairing& kappa_g,
                                   const DualPairing& kappa_h, std::function<Mat(const Mat&)> iota,
                                   std::function<Mat(const Mat&)> rho) {
  double defect = 0.0;
  for (const Mat& b : kappa_h.basis_left())
    for (const Mat& mu : kappa_g.basis_right())
      defect = std::max(defect, std::abs(kappa_h(b, rho(mu)) - kappa_g(iota(b), mu)));
  if (defect > 1e-10)
    throw Error(ErrorCode::AdjointMismatch, "rho is not adjoint to the inclusion (defect " +
                                                std::to_string(defect) + ")");
  SymplecticSample h = sys;
  h.name = sys.name + "|H";
  h.generators.clear();
  for (const Mat& b : kappa_h.basis_left()) h.generators.push_back(b);
  h.inf_action = [sys, iota](const Mat& b, const Vec& m) { return sys.inf_action(iota(b), m); };
  h.exp = [sys, iota](const Mat& b) { return group_exp(sys, iota(b)); };
  h.momentum = [sys, rho](const Vec& m) { return rho(sys.momentum(m)); };
  if (sys.dual == DualKind::Torus) {
    // Smallest positive image of the period generators; the images need not form a lattice.
    const auto n = sys.torus_periods.size();
    Vec best;
    for (Eigen::Index i = 0; i < n; ++i) {
      Mat p = Mat::Zero(n, n);
      p(i, i) = sys.torus_periods(i);
      const Vec img = rho(p).diagonal().real().cwiseAbs();
      if (best.size() == 0) best = Vec::Constant(img.size(), std::numeric_limits<double>::infinity());
      for (Eigen::Index k = 0; k < img.size(); ++k)
        if (img(k) > 1e-12) best(k) = std::min(best(k), img(k));
    }
    h.torus_periods = best;
  }
  return h;
}

}  // namespace gvmm
