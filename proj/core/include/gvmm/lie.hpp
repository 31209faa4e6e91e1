#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gvmm/errors.hpp"

namespace gvmm {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Identity of a matrix Lie algebra (and of the group it exponentiates to).
enum class Tag {
  sl2R,   ///< sl(2,R) / SL(2,R)
  sp2nR,  ///< sp(2n,R) / Sp(2n,R), standard J = [[0, I], [-I, 0]]
  un,     ///< u(n) / U(n)
  su_n,   ///< su(n) / SU(n)
  so2,    ///< so(2) / SO(2)
  so11,   ///< so(1,1) / SO(1,1) inside SL(2,R), form diag(1,-1)
  o_n,    ///< o(n) / O(n)
  b_n,    ///< upper triangular, real diagonal, traceless / positive diagonal, det 1
  sl_nC,  ///< sl(n,C) / SL(n,C)
  rn,     ///< abelian R^n as real diagonal matrices
  gl_nR,  ///< gl(n,R) / GL(n,R)
};

inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kGroupTol = 1e-10;
/// Tolerance applied to results of arithmetic on already validated inputs.
inline constexpr double kDerivedTol = 1e-9;

const char* tag_name(Tag tag);
std::optional<Tag> tag_from_name(const std::string& name);
bool tag_is_real(Tag tag);
bool tag_dim_ok(Tag tag, int n);

/// Standard symplectic matrix [[0, I], [-I, 0]] of size 2n.
RMat standard_J(int n);

/// Defect of the linear constraints defining the algebra `tag`; 0 means exactly inside.
double algebra_defect(const Mat& x, Tag tag);
/// Defect of the constraints defining the group `tag`.
double group_defect(const Mat& g, Tag tag);

/// Smallest tag containing both; throws TagMismatch if the sizes differ.
Tag join_tags(Tag a, Tag b, int n);

class AlgebraElement {
 public:
  AlgebraElement(Mat entries, Tag tag, double tol = kAlgebraTol);
  AlgebraElement(const RMat& entries, Tag tag, double tol = kAlgebraTol)
      : AlgebraElement(Mat(entries.cast<cplx>()), tag, tol) {}
  static AlgebraElement unchecked(Mat entries, Tag tag);
  static AlgebraElement zero(Tag tag, int n);

  const Mat& entries() const { return entries_; }
  RMat real() const { return entries_.real(); }
  Tag tag() const { return tag_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  double norm() const { return entries_.norm(); }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(double s) const;

 private:
  AlgebraElement() = default;
  Mat entries_;
  Tag tag_ = Tag::gl_nR;
};

class GroupElement {
 public:
  GroupElement(Mat entries, Tag tag, double tol = kGroupTol);
  GroupElement(const RMat& entries, Tag tag, double tol = kGroupTol)
      : GroupElement(Mat(entries.cast<cplx>()), tag, tol) {}
  static GroupElement unchecked(Mat entries, Tag tag);
  static GroupElement identity(Tag tag, int n);

  const Mat& entries() const { return entries_; }
  RMat real() const { return entries_.real(); }
  Tag tag() const { return tag_; }
  int dim() const { return static_cast<int>(entries_.rows()); }

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;

 private:
  GroupElement() = default;
  Mat entries_;
  Tag tag_ = Tag::gl_nR;
};

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

GroupElement exp_matrix(const AlgebraElement& a);
/// Requires ||g - I||_2 < 1; throws OutOfInjectivityRadius otherwise.
AlgebraElement log_matrix(const GroupElement& g);
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& a);

/// Real basis of the algebra `tag` at matrix size n.
std::vector<Mat> algebra_basis(Tag tag, int n);

/// Bilinear pairing kappa(A, mu) between two matrix algebras with stored bases.
class DualPairing {
 public:
  using Form = std::function<double(const Mat&, const Mat&)>;

  DualPairing() = default;
  DualPairing(Tag left, Tag right, int n_left, int n_right, Form form,
              std::vector<Mat> basis_left, std::vector<Mat> basis_right);

  double operator()(const Mat& a, const Mat& mu) const { return form_(a, mu); }
  double operator()(const AlgebraElement& a, const AlgebraElement& mu) const {
    return form_(a.entries(), mu.entries());
  }

  Tag left_tag() const { return left_; }
  Tag right_tag() const { return right_; }
  int n_left() const { return n_left_; }
  int n_right() const { return n_right_; }
  const std::vector<Mat>& basis_left() const { return basis_left_; }
  const std::vector<Mat>& basis_right() const { return basis_right_; }
  const RMat& gram() const { return gram_; }
  double condition_number() const { return condition_; }

  /// Element nu of the right algebra with kappa(basis_left[i], nu) = rhs[i].
  Mat solve_right(const Vec& rhs) const;
  /// Element A of the left algebra with kappa(A, basis_right[j]) = rhs[j].
  Mat solve_left(const Vec& rhs) const;
  /// Coordinates of x in basis_left.
  Vec left_coordinates(const Mat& x) const;
  /// Same pairing read from the other side: kappa'(mu, A) = kappa(A, mu).
  DualPairing swapped() const;

 private:
  Tag left_ = Tag::gl_nR, right_ = Tag::gl_nR;
  int n_left_ = 0, n_right_ = 0;
  Form form_;
  std::vector<Mat> basis_left_, basis_right_;
  RMat gram_;
  Eigen::FullPivLU<RMat> lu_;
  double condition_ = 0.0;
};

/// kappa(A, B) = scale * Re tr(AB) on a single algebra.
DualPairing trace_pairing(Tag tag, int n, double scale);
/// kappa(A, B) = 1/2 tr(AB) on sl(2,R).
DualPairing killing_sl2R();
/// kappa(A, mu) = Im tr(A mu) between su(n) and b_n.
DualPairing iwasawa_pairing(int n);
/// kappa(a, b) = sum a_i b_i on diagonal R^n.
DualPairing abelian_pairing(int n);

/// Coad_g mu defined by kappa(A, Coad_g mu) = kappa(Ad_g A, mu).
AlgebraElement coadjoint(const GroupElement& g, const AlgebraElement& mu, const DualPairing& pairing);
/// coad_A mu defined by kappa(B, coad_A mu) = kappa([A, B], mu).
AlgebraElement infinitesimal_coadjoint(const AlgebraElement& a, const AlgebraElement& mu,
                                       const DualPairing& pairing);

// Unvalidated matrix-level versions used inside the verification engines.
Mat coadjoint_mat(const Mat& g, const Mat& mu, const DualPairing& pairing);
Mat infinitesimal_coadjoint_mat(const Mat& a, const Mat& mu, const DualPairing& pairing);

/// g(t)^{-1} g'(t) with fourth order central differences of step `step`.
AlgebraElement log_derivative(const std::function<Mat(double)>& curve, double t, Tag tag,
                              double step = 1e-3);

/// Group operations on either a matrix group or an additive vector group
/// whose elements are stored as matrices of the algebra.
struct GroupModel {
  Tag tag = Tag::gl_nR;
  int n = 1;
  bool additive = false;

  Mat identity() const;
  Mat mul(const Mat& a, const Mat& b) const;
  Mat inv(const Mat& a) const;
  Mat exp(const Mat& x) const;
  Mat Ad(const Mat& eta, const Mat& x) const;
  /// eta^{-1} . v for a tangent vector v at eta.
  Mat left_trivialize(const Mat& eta, const Mat& v) const;
  /// Lie bracket of the group's algebra (zero for additive groups).
  Mat bracket(const Mat& a, const Mat& b) const;
};

}  // namespace gvmm
