#pragma once

#include <vector>

#include "gvmm/forms.hpp"
#include "gvmm/lie.hpp"
#include "gvmm/momentum.hpp"
#include "gvmm/period.hpp"

namespace gvmm {

/// v^flat for a flat diagonal metric (empty metric = Euclidean).
FormField flat(const VectorFieldGrid& v, const std::vector<double>& metric = {});
/// int v^flat ^ d v^flat on a 3-torus; throws DimensionMismatch otherwise.
double helicity(const VectorFieldGrid& v, const std::vector<double>& metric = {});
/// Helicity of a 1-form.
double helicity(const FormField& a);

/// (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x).
VectorFieldGrid abc_flow(const Grid& g, double a, double b, double c);

struct ClebschTriple {
  Array f, g, h;
};
/// f = y sin z - x cos z, g = z, h = x sin z + y cos z on the covering chart [0, L)^3.
ClebschTriple abc_clebsch_triple(const Grid& g);

struct ClebschResidual {
  /// Max-norm with 10th order one-sided-free differences on nodes at least `band` away from the chart edge.
  double interior = 0.0;
  /// Max-norm with periodic spectral derivatives, which sees the seam of non-periodic data.
  double seam = 0.0;
};
inline constexpr int kClebschBand = 5;

/// || v^flat - f dg - dh ||_inf
ClebschResidual clebsch_residual(const VectorFieldGrid& v, const Array& f, const Array& g, const Array& h,
                                 int band = kClebschBand);
/// 10th order central difference along one axis, valid at least 5 nodes from the chart edge.
Array central_difference10(const Grid& g, const Array& f, int axis);

/// || v^flat + phi^*theta - nu ||_inf; throws NotClosedNu if ||d nu||_inf > 1e-9.
double generalized_clebsch_residual(const VectorFieldGrid& v, const SectionGrid& phi, const FormField& phi_theta,
                                    const FormField& nu);

struct HopfSample {
  /// Lift to S^3 in R^4 = (x1, y1, x2, y2).
  SectionGrid psi;
  /// Hopf projection to S^2.
  SectionGrid phi;
  /// psi^* theta for theta = (x1 dy1 - y1 dx1 + x2 dy2 - y2 dx2) / 2 pi.
  FormField theta;
};
/// Degree one map of a ball of radius `radius` centred in the box onto S^3, constant outside.
HopfSample hopf_sample(const Grid& g, double radius);
/// The Hopf map S^3 -> S^2.
Eigen::Vector3d hopf_map(const Eigen::Vector4d& z);

/// int_loop theta by the midpoint rule on the loop samples.
double liouville_class(const LoopPath& loop, const std::function<Vec(const Vec&)>& theta);

/// omega = dy1 ^ dy2 on the fiber R^2 of M x R^2.
TotalForm fiber_area_form(int base_dim);
/// Counter-clockwise rotation generator (y1, y2) -> (-y2, y1).
Eigen::VectorXd rotation_generator(const Eigen::VectorXd& y);

struct GaugeMomentum {
  /// J-bar o phi per node.
  Array density;
  /// Max defining-relation defect over the test parameters.
  double residual = 0.0;
};

/// Momentum of the gauge group acting through fiber rotations, checked against
/// Omega(xi*, Y) + d<xi, J>(Y) = 0 with random xi, Y.
GaugeMomentum gauge_momentum_pushforward(const SectionGrid& phi, const std::function<double(const Eigen::VectorXd&)>& jbar,
                                         const FormField& mu, int tests = 4, unsigned seed = 11,
                                         double fd_step = 1e-5);

/// Sections M -> R^2 as a finite symplectic system; gauge parameters are N x 1 columns.
SymplecticSample grid_gauge_system(const SectionGrid& phi);
PairingFn grid_gauge_pairing();
/// Base translations acting on sections, generator -d_a phi, J_a = 1/2 int omega(d_a phi, phi) mu.
SymplecticSample grid_translation_system(const SectionGrid& phi);

/// -2k|phi|^2 mu + (i/2) dphi ^ dphi-bar on a 2-torus. Throws NonRealOutput.
FormField quantomorphism_momentum(const SectionGrid& phi, int k, const FormField& omega_base);

/// Form with values in a matrix Lie algebra, stored by coefficients in `basis`.
struct AlgebraForm {
  Grid grid;
  int degree = 0;
  std::vector<Mat> basis;
  /// coeffs[b] is the scalar form multiplying basis[b].
  std::vector<FormField> coeffs;

  /// Matrix value of component `comp` at a node.
  Mat value(std::size_t comp, Eigen::Index node) const;
  double max_abs() const;
};

/// Coefficients of x in `basis` (least squares over real and imaginary parts).
Vec algebra_coordinates(const std::vector<Mat>& basis, const Mat& x);
/// AlgebraForm from matrix values per component and node.
AlgebraForm algebra_form(const Grid& g, int degree, const std::vector<Mat>& basis,
                         const std::function<Mat(std::size_t comp, Eigen::Index node)>& values);

/// curv Gamma ^ sigma^{n-1} with curv = dGamma + 1/2 [Gamma ^ Gamma]; sigma^0 = 1.
AlgebraForm curvature_momentum(const AlgebraForm& gamma, const FormField& sigma, int n);
/// g^{-1} dg for a group-valued field (entries differentiated spectrally).
AlgebraForm pure_gauge(const Grid& g, const std::vector<Mat>& basis, const std::vector<Mat>& gfield);
/// g Gamma g^{-1} + g d(g^{-1}).
AlgebraForm gauge_transform(const AlgebraForm& gamma, const std::vector<Mat>& gfield);
/// Pointwise conjugation g F g^{-1}.
AlgebraForm conjugate(const AlgebraForm& f, const std::vector<Mat>& gfield);

}  // namespace gvmm
