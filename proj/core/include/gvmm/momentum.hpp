#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gvmm/lie.hpp"

namespace gvmm {

/// kappa(A, mu) between an acting algebra and the dual algebra.
using PairingFn = std::function<double(const Mat&, const Mat&)>;

inline PairingFn as_fn(const DualPairing& p) {
  return [p](const Mat& a, const Mat& mu) { return p(a, mu); };
}

/// How momentum values are compared and differentiated.
enum class DualKind {
  Additive,     ///< vector group g*: delta J = dJ
  MatrixGroup,  ///< matrix group G*: delta J = J^{-1} dJ
  Torus,        ///< diagonal entries taken modulo `torus_periods`
};

struct SymplecticSample {
  std::string name;
  Vec point;
  std::function<RMat(const Vec&)> omega;
  /// g . m for a group element g (as returned by `exp`).
  std::function<Vec(const Mat&, const Vec&)> action;
  /// Group exponential of the acting group; matrix exponential when empty.
  std::function<Mat(const Mat&)> exp;
  /// Fundamental vector field A*_m.
  std::function<Vec(const Mat&, const Vec&)> inf_action;
  std::function<Mat(const Vec&)> momentum;
  DualKind dual = DualKind::Additive;
  Vec torus_periods;
  /// Basis of the acting algebra.
  std::vector<Mat> generators;
  /// Optional chart domain test.
  std::function<bool(const Vec&)> in_chart;
};

inline constexpr double kFdStep = 1e-5;

/// ||omega - omega^T|| and condition number of omega at the sample point.
struct OmegaCheck {
  double antisymmetry = 0.0;
  double condition = 0.0;
};
OmegaCheck check_omega(const SymplecticSample& sys);

/// |A*_m - d/dt action(exp(tA), m)| by central differences.
double inf_action_consistency(const SymplecticSample& sys, const Mat& a, double step = kFdStep);

/// max_X |omega(A*, X) + kappa(A, delta J(X))| over chart basis directions.
double momentum_residual(const SymplecticSample& sys, const Mat& a, const PairingFn& kappa,
                         double fd_step = kFdStep);
/// Same at an explicit point.
double momentum_residual_at(const SymplecticSample& sys, const Vec& m, const Mat& a, const PairingFn& kappa,
                            double fd_step = kFdStep);
/// Maximum over sys.generators.
double momentum_residual_all(const SymplecticSample& sys, const PairingFn& kappa, double fd_step = kFdStep);

/// Circle-valued momentum with values in R/Z and pairing kappa(a, b) = ab.
double circle_momentum_residual(const SymplecticSample& sys, double fd_step = kFdStep);

struct Hamiltonian {
  std::function<double(const Vec&)> value;
  /// Optional analytic gradient; central differences otherwise.
  std::function<Vec(const Vec&)> gradient;
};

Vec hamiltonian_gradient(const Hamiltonian& h, const Vec& z, double step = 1e-6);
/// X_H with X_H contracted into omega equal to dH.
Vec hamiltonian_vector_field(const SymplecticSample& sys, const Hamiltonian& h, const Vec& z);

struct NoetherReport {
  double drift = 0.0;
  double invariance = 0.0;  // max |dH(A*)| at the initial point
  int steps = 0;
  int max_iterations = 0;
  Vec final_point;
};

/// Implicit midpoint integration of X_H; drift of J measured in G*.
NoetherReport noether_drift(const SymplecticSample& sys, const Hamiltonian& h, double t_end, double dt);

/// Distance between two momentum values according to the dual kind.
double momentum_distance(const SymplecticSample& sys, const Mat& j0, const Mat& j1);

/// One implicit midpoint step; throws IntegratorDiverged.
Vec implicit_midpoint_step(const SymplecticSample& sys, const Hamiltonian& h, const Vec& z, double dt,
                           int* iterations = nullptr);
/// Classical RK4 step of X_H.
Vec rk4_step(const SymplecticSample& sys, const Hamiltonian& h, const Vec& z, double dt);

/// sigma_m(A_i, A_j) = omega_m(A_i*, A_j*); antisymmetric by construction.
RMat nonequivariance_cocycle(const SymplecticSample& sys, const std::vector<Mat>& basis);

/// Residual of sigma([A,B],C) + cyclic over all basis triples.
double cocycle_cyclic_residual(const SymplecticSample& sys, const std::vector<Mat>& basis);

/// pi(eta, B) in g* for eta in G*, B in g.
using DualPoissonFn = std::function<Mat(const Mat&, const Mat&)>;

/// max |omega(A*, B*) - kappa(A, pi(J(m), B))| over basis pairs.
double poisson_map_residual(const SymplecticSample& sys, const DualPoissonFn& pi, const PairingFn& kappa,
                            const std::vector<Mat>& basis);

struct ExtensionResult {
  SymplecticSample combined;
  PairingFn kappa;
  double residual_h = 0.0;
  double residual_sigma = 0.0;
  double residual_combined = 0.0;
};

/// Combined momentum (J_H, J_sigma) of the extension K acting through H and the splitting sigma.
/// Both inputs share point and omega. Throws PreconditionFailed if a part residual exceeds 1e-5.
ExtensionResult extension_momentum(const SymplecticSample& h_part, const PairingFn& kappa_h,
                                   const SymplecticSample& sigma_part, const PairingFn& kappa_g,
                                   double fd_step = kFdStep);

/// J_chi = J_sigma * exp(tau*(J_H)) on the group model of G*.
std::function<Mat(const Vec&)> lift_momentum(std::function<Mat(const Vec&)> j_sigma,
                                             std::function<Mat(const Vec&)> j_h,
                                             std::function<Mat(const Mat&)> tau_star, GroupModel dual);

/// Momentum for the subgroup H with inclusion iota: h -> g and projection rho: g* -> h*.
/// Throws AdjointMismatch unless kappa_h(B, rho mu) = kappa_g(iota B, mu) on bases.
SymplecticSample subgroup_momentum(const SymplecticSample& sys, const DualPairing& kappa_g,
                                   const DualPairing& kappa_h, std::function<Mat(const Mat&)> iota,
                                   std::function<Mat(const Mat&)> rho);

}  // namespace gvmm
