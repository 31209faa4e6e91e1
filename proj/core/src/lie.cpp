#include "gvmm/lie.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

namespace gvmm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat unit(int n, int r, int c, cplx v = 1.0) {
  Mat m = Mat::Zero(n, n);
  m(r, c) = v;
  return m;
}

Mat E_so11() {
  Mat e = Mat::Zero(2, 2);
  e(0, 0) = 1.0;
  e(1, 1) = -1.0;
  return e;
}

double imag_norm(const Mat& x) { return x.imag().norm(); }

double strict_lower_norm(const Mat& x) {
  double s = 0.0;
  for (int c = 0; c < x.cols(); ++c)
    for (int r = c + 1; r < x.rows(); ++r) s += std::norm(x(r, c));
  return std::sqrt(s);
}

double off_diag_norm(const Mat& x) {
  Mat d = x;
  d.diagonal().setZero();
  return d.norm();
}

bool is_real_matrix(const Mat& x) { return imag_norm(x) == 0.0; }

void check_dim(Tag tag, int n, const char* what) {
  if (!tag_dim_ok(tag, n))
    throw Error(ErrorCode::ConstraintViolation,
                std::string(what) + " of size " + std::to_string(n) + " does not fit tag " + tag_name(tag));
}

bool contains(Tag big, Tag small) {
  if (big == small) return true;
  switch (big) {
    case Tag::gl_nR:
      return tag_is_real(small);
    case Tag::sl_nC:
      return small != Tag::un && small != Tag::gl_nR && small != Tag::rn;
    case Tag::sl2R:
      return small == Tag::so2 || small == Tag::so11 || small == Tag::sp2nR;
    case Tag::sp2nR:
      return small == Tag::sl2R || small == Tag::so2 || small == Tag::so11;
    case Tag::un:
      return small == Tag::su_n;
    case Tag::o_n:
      return small == Tag::so2;
    default:
      return false;
  }
}

bool traceless(Tag t) { return t != Tag::un && t != Tag::rn && t != Tag::gl_nR; }

}  // namespace

const char* tag_name(Tag tag) {
  switch (tag) {
    case Tag::sl2R: return "sl2R";
    case Tag::sp2nR: return "sp2nR";
    case Tag::un: return "un";
    case Tag::su_n: return "su_n";
    case Tag::so2: return "so2";
    case Tag::so11: return "so11";
    case Tag::o_n: return "o_n";
    case Tag::b_n: return "b_n";
    case Tag::sl_nC: return "sl_nC";
    case Tag::rn: return "rn";
    case Tag::gl_nR: return "gl_nR";
  }
  return "?";
}

std::optional<Tag> tag_from_name(const std::string& name) {
  for (Tag t : {Tag::sl2R, Tag::sp2nR, Tag::un, Tag::su_n, Tag::so2, Tag::so11, Tag::o_n, Tag::b_n,
                Tag::sl_nC, Tag::rn, Tag::gl_nR})
    if (name == tag_name(t)) return t;
  return std::nullopt;
}

bool tag_is_real(Tag tag) {
  switch (tag) {
    case Tag::un:
    case Tag::su_n:
    case Tag::b_n:
    case Tag::sl_nC:
      return false;
    default:
      return true;
  }
}

bool tag_dim_ok(Tag tag, int n) {
  if (n < 1) return false;
  switch (tag) {
    case Tag::sl2R:
    case Tag::so2:
    case Tag::so11:
      return n == 2;
    case Tag::sp2nR:
      return n % 2 == 0;
    default:
      return true;
  }
}

RMat standard_J(int n) {
  RMat j = RMat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -RMat::Identity(n, n);
  return j;
}

Tag join_tags(Tag a, Tag b, int n) {
  if (!tag_dim_ok(a, n) || !tag_dim_ok(b, n))
    throw Error(ErrorCode::TagMismatch, std::string(tag_name(a)) + " / " + tag_name(b) + " at size " +
                                            std::to_string(n));
  if (contains(a, b)) return a;
  if (contains(b, a)) return b;
  if (n == 2 && (contains(Tag::sl2R, a) || a == Tag::sl2R) && (contains(Tag::sl2R, b) || b == Tag::sl2R))
    return Tag::sl2R;
  if (tag_is_real(a) && tag_is_real(b)) return Tag::gl_nR;
  if (traceless(a) && traceless(b)) return Tag::sl_nC;
  throw Error(ErrorCode::TagMismatch, std::string("no common algebra for ") + tag_name(a) + " and " + tag_name(b));
}

double algebra_defect(const Mat& x, Tag tag) {
  const int n = static_cast<int>(x.rows());
  if (x.rows() != x.cols() || !tag_dim_ok(tag, n)) return kInf;
  switch (tag) {
    case Tag::sl2R:
      return imag_norm(x) + std::abs(x.trace());
    case Tag::sp2nR: {
      Mat j = standard_J(n / 2).cast<cplx>();
      return imag_norm(x) + (x.transpose() * j + j * x).norm();
    }
    case Tag::un:
      return (x + x.adjoint()).norm();
    case Tag::su_n:
      return (x + x.adjoint()).norm() + std::abs(x.trace());
    case Tag::so2:
    case Tag::o_n:
      return imag_norm(x) + (x + x.transpose()).norm();
    case Tag::so11: {
      Mat e = E_so11();
      return imag_norm(x) + (x.transpose() * e + e * x).norm();
    }
    case Tag::b_n:
      return strict_lower_norm(x) + x.diagonal().imag().norm() + std::abs(x.trace());
    case Tag::sl_nC:
      return std::abs(x.trace());
    case Tag::rn:
      return imag_norm(x) + off_diag_norm(x);
    case Tag::gl_nR:
      return imag_norm(x);
  }
  return kInf;
}

double group_defect(const Mat& g, Tag tag) {
  const int n = static_cast<int>(g.rows());
  if (g.rows() != g.cols() || !tag_dim_ok(tag, n)) return kInf;
  const Mat id = Mat::Identity(n, n);
  switch (tag) {
    case Tag::sl2R:
      return imag_norm(g) + std::abs(g.determinant() - 1.0);
    case Tag::sp2nR: {
      Mat j = standard_J(n / 2).cast<cplx>();
      return imag_norm(g) + (g.transpose() * j * g - j).norm();
    }
    case Tag::un:
      return (g.adjoint() * g - id).norm();
    case Tag::su_n:
      return (g.adjoint() * g - id).norm() + std::abs(g.determinant() - 1.0);
    case Tag::so2:
      return imag_norm(g) + (g.transpose() * g - id).norm() + std::abs(g.determinant() - 1.0);
    case Tag::so11: {
      Mat e = E_so11();
      return imag_norm(g) + (g.transpose() * e * g - e).norm() + std::abs(g.determinant() - 1.0);
    }
    case Tag::o_n:
      return imag_norm(g) + (g.transpose() * g - id).norm();
    case Tag::b_n: {
      for (int i = 0; i < n; ++i)
        if (g(i, i).real() <= 0.0) return kInf;
      return strict_lower_norm(g) + g.diagonal().imag().norm() + std::abs(g.determinant() - 1.0);
    }
    case Tag::sl_nC:
      return std::abs(g.determinant() - 1.0);
    case Tag::rn: {
      for (int i = 0; i < n; ++i)
        if (g(i, i).real() <= 0.0) return kInf;
      return imag_norm(g) + off_diag_norm(g);
    }
    case Tag::gl_nR:
      if (std::abs(g.determinant()) == 0.0) return kInf;
      return imag_norm(g);
  }
  return kInf;
}

// ---------------------------------------------------------------------------

AlgebraElement::AlgebraElement(Mat entries, Tag tag, double tol) : entries_(std::move(entries)), tag_(tag) {
  if (entries_.rows() != entries_.cols())
    throw Error(ErrorCode::ConstraintViolation, "algebra element must be square");
  check_dim(tag, dim(), "algebra element");
  const double d = algebra_defect(entries_, tag);
  if (!(d <= tol * std::max(1.0, entries_.norm())))
    throw Error(ErrorCode::ConstraintViolation,
                std::string("not in ") + tag_name(tag) + " (defect " + std::to_string(d) + ")");
}

AlgebraElement AlgebraElement::unchecked(Mat entries, Tag tag) {
  AlgebraElement a;
  a.entries_ = std::move(entries);
  a.tag_ = tag;
  return a;
}

AlgebraElement AlgebraElement::zero(Tag tag, int n) { return AlgebraElement(Mat(Mat::Zero(n, n)), tag); }

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  Tag t = join_tags(tag_, o.tag_, dim());
  return AlgebraElement(Mat(entries_ + o.entries_), t, kDerivedTol);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  Tag t = join_tags(tag_, o.tag_, dim());
  return AlgebraElement(Mat(entries_ - o.entries_), t, kDerivedTol);
}

AlgebraElement AlgebraElement::operator*(double s) const { return unchecked(entries_ * s, tag_); }

GroupElement::GroupElement(Mat entries, Tag tag, double tol) : entries_(std::move(entries)), tag_(tag) {
  if (entries_.rows() != entries_.cols()) throw Error(ErrorCode::ConstraintViolation, "group element must be square");
  check_dim(tag, dim(), "group element");
  const double d = group_defect(entries_, tag);
  const double scale = std::pow(std::max(1.0, entries_.norm()), std::max(2, dim()));
  if (!(d <= tol * scale))
    throw Error(ErrorCode::ConstraintViolation,
                std::string("not in group ") + tag_name(tag) + " (defect " + std::to_string(d) + ")");
}

GroupElement GroupElement::unchecked(Mat entries, Tag tag) {
  GroupElement g;
  g.entries_ = std::move(entries);
  g.tag_ = tag;
  return g;
}

GroupElement GroupElement::identity(Tag tag, int n) { return GroupElement(Mat(Mat::Identity(n, n)), tag); }

GroupElement GroupElement::operator*(const GroupElement& o) const {
  Tag t = join_tags(tag_, o.tag_, dim());
  return GroupElement(Mat(entries_ * o.entries_), t);
}

GroupElement GroupElement::inverse() const { return GroupElement(Mat(entries_.inverse()), tag_); }

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  Tag t = join_tags(a.tag(), b.tag(), a.dim());
  return AlgebraElement(commutator(a.entries(), b.entries()), t, kDerivedTol);
}

GroupElement exp_matrix(const AlgebraElement& a) {
  const Mat& x = a.entries();
  Mat g;
  if (is_real_matrix(x)) {
    RMat r = x.real();
    g = RMat(r.exp()).cast<cplx>();
  } else {
    g = x.exp();
  }
  return GroupElement(std::move(g), a.tag());
}

AlgebraElement log_matrix(const GroupElement& g) {
  const Mat& m = g.entries();
  const int n = g.dim();
  Eigen::JacobiSVD<Mat> svd(m - Mat::Identity(n, n));
  const double dist = svd.singularValues()(0);
  if (!(dist < 1.0))
    throw Error(ErrorCode::OutOfInjectivityRadius, "||g - I|| = " + std::to_string(dist));
  Mat x;
  if (is_real_matrix(m)) {
    RMat r = m.real();
    x = RMat(r.log()).cast<cplx>();
  } else {
    x = m.log();
  }
  if (!x.allFinite()) throw Error(ErrorCode::OutOfInjectivityRadius, "logarithm did not converge");
  return AlgebraElement(std::move(x), g.tag(), kDerivedTol);
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& a) {
  if (g.dim() != a.dim()) throw Error(ErrorCode::TagMismatch, "adjoint: size mismatch");
  Tag t = join_tags(g.tag(), a.tag(), a.dim());
  Mat r = g.entries() * a.entries() * g.entries().inverse();
  return AlgebraElement(std::move(r), t, kDerivedTol);
}

std::vector<Mat> algebra_basis(Tag tag, int n) {
  check_dim(tag, n, "basis");
  const cplx I(0.0, 1.0);
  std::vector<Mat> out;
  switch (tag) {
    case Tag::sl2R: {
      Mat ep = unit(2, 0, 0) - unit(2, 1, 1);
      Mat em = unit(2, 0, 1) + unit(2, 1, 0);
      Mat h = unit(2, 0, 1) - unit(2, 1, 0);
      out = {ep, em, h};
      break;
    }
    case Tag::sp2nR: {
      const int m = n / 2;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out.push_back(unit(n, i, j) - unit(n, m + j, m + i));
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          Mat b = unit(n, i, m + j);
          if (i != j) b += unit(n, j, m + i);
          out.push_back(b);
        }
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          Mat c = unit(n, m + i, j);
          if (i != j) c += unit(n, m + j, i);
          out.push_back(c);
        }
      break;
    }
    case Tag::un:
    case Tag::su_n: {
      if (tag == Tag::un)
        for (int j = 0; j < n; ++j) out.push_back(unit(n, j, j, I));
      else
        for (int j = 0; j + 1 < n; ++j) out.push_back(unit(n, j, j, I) - unit(n, j + 1, j + 1, I));
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          out.push_back(unit(n, j, k) - unit(n, k, j));
          out.push_back(unit(n, j, k, I) + unit(n, k, j, I));
        }
      break;
    }
    case Tag::so2:
      out = {unit(2, 0, 1) - unit(2, 1, 0)};
      break;
    case Tag::so11:
      out = {unit(2, 0, 1) + unit(2, 1, 0)};
      break;
    case Tag::o_n:
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) out.push_back(unit(n, j, k) - unit(n, k, j));
      break;
    case Tag::b_n:
      for (int j = 0; j + 1 < n; ++j) out.push_back(unit(n, j, j) - unit(n, j + 1, j + 1));
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          out.push_back(unit(n, j, k));
          out.push_back(unit(n, j, k, I));
        }
      break;
    case Tag::sl_nC:
      for (int j = 0; j + 1 < n; ++j) {
        out.push_back(unit(n, j, j) - unit(n, j + 1, j + 1));
        out.push_back(unit(n, j, j, I) - unit(n, j + 1, j + 1, I));
      }
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (j != k) {
            out.push_back(unit(n, j, k));
            out.push_back(unit(n, j, k, I));
          }
      break;
    case Tag::rn:
      for (int j = 0; j < n; ++j) out.push_back(unit(n, j, j));
      break;
    case Tag::gl_nR:
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) out.push_back(unit(n, j, k));
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------

DualPairing::DualPairing(Tag left, Tag right, int n_left, int n_right, Form form, std::vector<Mat> basis_left,
                         std::vector<Mat> basis_right)
    : left_(left),
      right_(right),
      n_left_(n_left),
      n_right_(n_right),
      form_(std::move(form)),
      basis_left_(std::move(basis_left)),
      basis_right_(std::move(basis_right)) {
  const auto p = static_cast<Eigen::Index>(basis_left_.size());
  if (p == 0 || static_cast<Eigen::Index>(basis_right_.size()) != p)
    throw Error(ErrorCode::SingularPairing, "bases have different lengths");
  gram_.resize(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j) gram_(i, j) = form_(basis_left_[i], basis_right_[j]);
  lu_.compute(gram_);
  if (!lu_.isInvertible()) throw Error(ErrorCode::SingularPairing, "Gram matrix is singular");
  Eigen::JacobiSVD<RMat> svd(gram_);
  const auto& s = svd.singularValues();
  condition_ = s(0) / s(p - 1);
  if (!std::isfinite(condition_) || condition_ > 1e12)
    throw Error(ErrorCode::SingularPairing, "Gram matrix condition number " + std::to_string(condition_));
}

Mat DualPairing::solve_right(const Vec& rhs) const {
  Vec c = lu_.solve(rhs);
  if (!c.allFinite()) throw Error(ErrorCode::SingularPairing, "Gram solve failed");
  Mat nu = Mat::Zero(n_right_, n_right_);
  for (std::size_t j = 0; j < basis_right_.size(); ++j) nu += c(static_cast<Eigen::Index>(j)) * basis_right_[j];
  return nu;
}

Mat DualPairing::solve_left(const Vec& rhs) const {
  Vec a = lu_.transpose().solve(rhs);
  if (!a.allFinite()) throw Error(ErrorCode::SingularPairing, "Gram solve failed");
  Mat x = Mat::Zero(n_left_, n_left_);
  for (std::size_t i = 0; i < basis_left_.size(); ++i) x += a(static_cast<Eigen::Index>(i)) * basis_left_[i];
  return x;
}

Vec DualPairing::left_coordinates(const Mat& x) const {
  Vec rhs(static_cast<Eigen::Index>(basis_right_.size()));
  for (std::size_t j = 0; j < basis_right_.size(); ++j) rhs(static_cast<Eigen::Index>(j)) = form_(x, basis_right_[j]);
  return lu_.transpose().solve(rhs);
}

DualPairing DualPairing::swapped() const {
  Form f = form_;
  return DualPairing(right_, left_, n_right_, n_left_, [f](const Mat& a, const Mat& b) { return f(b, a); },
                     basis_right_, basis_left_);
}

DualPairing trace_pairing(Tag tag, int n, double scale) {
  auto basis = algebra_basis(tag, n);
  return DualPairing(
      tag, tag, n, n, [scale](const Mat& a, const Mat& b) { return scale * (a * b).trace().real(); }, basis,
      basis);
}

DualPairing killing_sl2R() { return trace_pairing(Tag::sl2R, 2, 0.5); }

DualPairing iwasawa_pairing(int n) {
  return DualPairing(
      Tag::su_n, Tag::b_n, n, n, [](const Mat& a, const Mat& b) { return (a * b).trace().imag(); },
      algebra_basis(Tag::su_n, n), algebra_basis(Tag::b_n, n));
}

DualPairing abelian_pairing(int n) { return trace_pairing(Tag::rn, n, 1.0); }

Mat coadjoint_mat(const Mat& g, const Mat& mu, const DualPairing& pairing) {
  const auto& bl = pairing.basis_left();
  const Mat ginv = g.inverse();
  Vec rhs(static_cast<Eigen::Index>(bl.size()));
  for (std::size_t i = 0; i < bl.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = pairing(g * bl[i] * ginv, mu);
  return pairing.solve_right(rhs);
}

Mat infinitesimal_coadjoint_mat(const Mat& a, const Mat& mu, const DualPairing& pairing) {
  const auto& bl = pairing.basis_left();
  Vec rhs(static_cast<Eigen::Index>(bl.size()));
  for (std::size_t i = 0; i < bl.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = pairing(commutator(a, bl[i]), mu);
  return pairing.solve_right(rhs);
}

namespace {
void check_coadjoint_tags(Tag acting, int n, const AlgebraElement& mu, const DualPairing& pairing) {
  if (n != pairing.n_left() || mu.dim() != pairing.n_right())
    throw Error(ErrorCode::TagMismatch, "coadjoint: size mismatch with pairing");
  if (join_tags(acting, pairing.left_tag(), n) != pairing.left_tag())
    throw Error(ErrorCode::TagMismatch, std::string(tag_name(acting)) + " does not act on " +
                                            tag_name(pairing.left_tag()));
  if (join_tags(mu.tag(), pairing.right_tag(), mu.dim()) != pairing.right_tag())
    throw Error(ErrorCode::TagMismatch, std::string(tag_name(mu.tag())) + " is not in " +
                                            tag_name(pairing.right_tag()));
}
}  // namespace

AlgebraElement coadjoint(const GroupElement& g, const AlgebraElement& mu, const DualPairing& pairing) {
  check_coadjoint_tags(g.tag(), g.dim(), mu, pairing);
  return AlgebraElement(coadjoint_mat(g.entries(), mu.entries(), pairing), pairing.right_tag(), kDerivedTol);
}

AlgebraElement infinitesimal_coadjoint(const AlgebraElement& a, const AlgebraElement& mu,
                                       const DualPairing& pairing) {
  check_coadjoint_tags(a.tag(), a.dim(), mu, pairing);
  return AlgebraElement(infinitesimal_coadjoint_mat(a.entries(), mu.entries(), pairing), pairing.right_tag(),
                        kDerivedTol);
}

AlgebraElement log_derivative(const std::function<Mat(double)>& curve, double t, Tag tag, double step) {
  if (!curve || !(step > 0.0) || step > 1e-3)
    throw Error(ErrorCode::InsufficientSamples, "log_derivative needs 0 < step <= 1e-3");
  const double h = step;
  Mat g = curve(t);
  Mat dg = (-curve(t + 2 * h) + 8.0 * curve(t + h) - 8.0 * curve(t - h) + curve(t - 2 * h)) / (12.0 * h);
  Mat x = g.partialPivLu().solve(dg);
  if (!x.allFinite()) throw Error(ErrorCode::InsufficientSamples, "curve is singular at t");
  return AlgebraElement(std::move(x), tag, 1e-6);
}

// ---------------------------------------------------------------------------

Mat GroupModel::identity() const {
  return additive ? Mat(Mat::Zero(n, n)) : Mat(Mat::Identity(n, n));
}

Mat GroupModel::mul(const Mat& a, const Mat& b) const { return additive ? Mat(a + b) : Mat(a * b); }

Mat GroupModel::inv(const Mat& a) const { return additive ? Mat(-a) : Mat(a.inverse()); }

Mat GroupModel::exp(const Mat& x) const {
  if (additive) return x;
  if (is_real_matrix(x)) return RMat(x.real().exp()).cast<cplx>();
  return x.exp();
}

Mat GroupModel::Ad(const Mat& eta, const Mat& x) const {
  return additive ? x : Mat(eta * x * eta.inverse());
}

Mat GroupModel::left_trivialize(const Mat& eta, const Mat& v) const {
  return additive ? v : Mat(eta.partialPivLu().solve(v));
}

Mat GroupModel::bracket(const Mat& a, const Mat& b) const {
  return additive ? Mat(Mat::Zero(a.rows(), a.cols())) : commutator(a, b);
}

}  // namespace gvmm
