#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gvmm/lie.hpp"

namespace gvmm {

enum class OrbitKind { elliptic, hyperbolic, parabolic_plus, parabolic_minus, zero };

const char* orbit_kind_name(OrbitKind kind);

struct OrbitClass {
  OrbitKind kind = OrbitKind::zero;
  double lambda = 0.0;
  double det = 0.0;
  /// |det| inside [tol, 1e-6]: classification is numerically fragile.
  bool near_degenerate = false;
  Mat normal_form;
  /// g with g A g^{-1} = normal_form, det g = 1.
  Mat conjugator;
};

inline constexpr double kOrbitTol = 1e-10;
inline constexpr double kNearDegenerateBand = 1e-6;

/// N_e = lambda h, N_h = lambda e_-, N_p^+ = E12, N_p^- = E21.
Mat orbit_normal_form(OrbitKind kind, double lambda);

OrbitClass classify_orbit(const AlgebraElement& a, double tol = kOrbitTol);
std::vector<Mat> stabilizer_basis(const OrbitClass& cls);

/// kappa(nu, [A, B]).
double kks_form(const Mat& nu, const Mat& a, const Mat& b, const DualPairing& pairing);

/// U(1)-valued character of the stabilizer integrating kappa(mu, .).
struct Character {
  std::string name;
  Mat generator;       // stabilizer direction s
  double derivative;   // d/dt arg rho(exp(t s)) at 0
  std::function<cplx(const Mat&)> eval;
};

/// Throws NotPrequantizable for elliptic orbits with non-integer lambda.
std::vector<Character> prequantization_character(const OrbitClass& cls);

/// Random element of the stabilizer group of the normal form (both components for SO(1,1) and P+-).
Mat stabilizer_sample(const OrbitClass& cls, double param, bool negative_component);

/// -1/4 tr(B^{-1} C1 B^{-1} N_e B^{-1} C2) on positive definite symmetric B with det 1.
double pushed_orbit_form(const RMat& b, const RMat& c1, const RMat& c2, double lambda);

struct MatrixDualPairSample {
  RMat x;
  RMat j_sp;  // -X X^T J
  RMat j_o;   // X^T J X
  RMat standard_J;
  double sp_defect = 0.0;
  double o_defect = 0.0;
};

MatrixDualPairSample matrix_dual_pair(const RMat& x);

/// U(n) inside Sp(2n) as [[A, -B], [B, A]].
RMat unitary_to_symplectic(const Mat& u);

struct SiegelReport {
  double level_set_defect = 0.0;     // ||X^T J X - J||
  double complex_structure = 0.0;    // ||I^2 + 1||
  double metric_symmetry = 0.0;      // ||G - G^T||, G(a, b) = omega_0(I a, b)
  double metric_min_eigenvalue = 0.0;
  double stabilizer_momentum = 0.0;  // max ||J_O(X u) - J_O(X)||
  double stabilizer_structure = 0.0; // max ||I(X u) - I(X)||
  RMat complex_structure_matrix;
};

/// `unitaries` are sampled elements of U(n); throws NotInLevelSet if X^T J X != J.
SiegelReport siegel_reduction_check(const RMat& x, int n, const std::vector<Mat>& unitaries);

struct OrbitTableRow {
  std::string kind;
  std::string stabilizer;
  std::string quantizable;
  std::vector<std::string> characters;
};

/// Rebuilt from classification, stabilizer and character computations.
std::vector<OrbitTableRow> orbit_table();

}  // namespace gvmm
