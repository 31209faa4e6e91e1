#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gvmm/momentum.hpp"

namespace gvmm {

/// g*-valued 1-form alpha with kappa(A, alpha_m(X)) = omega_m(X, A*_m).
struct PrimitiveForm {
  std::function<Mat(const Vec&, const Vec&)> alpha;
  int dim = 0;
  /// Largest defining-relation defect measured at construction.
  double defining_residual = 0.0;
};

/// Throws NoSolution if alpha cannot satisfy the relation for every generator of `sys`.
PrimitiveForm build_primitive(const SymplecticSample& sys, const DualPairing& pairing);

/// Piecewise linear closed curve, closed up to the chart lattice.
struct LoopPath {
  std::vector<double> t;
  std::vector<Vec> points;
  /// Period of each coordinate (0 for non-periodic); closure is checked modulo these.
  Vec lattice;
  /// Smooth curve the samples came from; when set, loop_eval uses it instead of the polygon.
  std::function<Vec(double)> curve;
};

inline constexpr int kLoopSamples = 2000;

/// Samples curve(t) on [0, 1]; throws ConstraintViolation if it does not close.
LoopPath make_loop(const std::function<Vec(double)>& curve, int samples = kLoopSamples, Vec lattice = Vec());
/// Straight loop winding once along a lattice vector from `base`.
LoopPath lattice_loop(const Vec& base, const Vec& winding, const Vec& lattice, int samples = kLoopSamples);
/// Same geometric loop with parameter s = t + a sin(2 pi t) / (2 pi).
LoopPath reparametrize(const LoopPath& loop, double a);
/// Loop followed by loop (both rescaled to half the parameter interval).
LoopPath concatenate(const LoopPath& a, const LoopPath& b);
/// Position and velocity at parameter t (velocity by a 4th order stencil when the curve is known).
std::pair<Vec, Vec> loop_eval(const LoopPath& loop, double t);

enum class DualGroupKind { Real, Torus, Matrix };

struct DualGroup {
  DualGroupKind kind = DualGroupKind::Real;
  /// Torus periods per diagonal entry.
  Vec periods;
  /// Matrix group model (Matrix kind only).
  GroupModel model;
};

struct PeriodValue {
  Mat value;
  /// max correction applied by re-projection.
  double projection_correction = 0.0;
  int steps = 0;
};

/// eta' = eta a(t), eta(0) = e, RK4 with re-projection every 100 steps.
PeriodValue integrate_log_derivative(const std::function<Mat(double)>& a, const DualGroup& group, double dt,
                                     int size);
/// Period of alpha along the loop.
PeriodValue period_homomorphism(const PrimitiveForm& alpha, const LoopPath& loop, const DualGroup& group,
                                double dt = 1e-3);

struct VerdictReport {
  bool exists = true;
  std::vector<double> periods;      // first diagonal entry (abelian) or ||eta - e|| (matrix)
  std::vector<double> distances;    // distance to the identity class
  std::vector<int> offending;
  std::string verdict() const { return exists ? "EXISTS" : "OBSTRUCTED"; }
};

inline constexpr double kPeriodTol = 1e-6;

VerdictReport existence_verdict(const PrimitiveForm& alpha, const std::vector<LoopPath>& generators,
                                const DualGroup& group, double dt = 1e-3);

/// max |d alpha(e_i, e_j) + [alpha(e_i), alpha(e_j)]| over points and coordinate pairs.
double maurer_cartan_residual(const PrimitiveForm& alpha, const std::function<Mat(const Mat&, const Mat&)>& bracket,
                              const std::vector<Vec>& points, double step = 1e-5);

/// J(m) by integrating delta eta = gamma* alpha along the segment from base to m (additive G*).
std::function<Mat(const Vec&)> integrate_momentum(const PrimitiveForm& alpha, const Vec& base, int samples = 200);

}  // namespace gvmm
