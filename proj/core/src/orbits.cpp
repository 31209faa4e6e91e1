#include "gvmm/orbits.hpp"

#include <cmath>
#include <numbers>

namespace gvmm {

namespace {

Mat real2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

// Rescale P to det 1 and return P^{-1}.
Mat conjugator_from(Mat p) {
  const double d = p.determinant().real();
  if (!(d > 0.0)) throw Error(ErrorCode::SingularInput, "degenerate eigenbasis in orbit classification");
  p /= std::sqrt(d);
  return p.inverse();
}

// Unit kernel vector of (A - ev I) for real 2x2 A, first nonzero entry positive.
Eigen::Vector2d kernel_vector(const RMat& a, double ev) {
  Eigen::Vector2d v1(a(0, 1), ev - a(0, 0));
  Eigen::Vector2d v2(ev - a(1, 1), a(1, 0));
  Eigen::Vector2d v = v1.norm() >= v2.norm() ? v1 : v2;
  v.normalize();
  if (v(0) < 0.0 || (v(0) == 0.0 && v(1) < 0.0)) v = -v;
  return v;
}

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

const char* orbit_kind_name(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::elliptic: return "elliptic";
    case OrbitKind::hyperbolic: return "hyperbolic";
    case OrbitKind::parabolic_plus: return "parabolic_plus";
    case OrbitKind::parabolic_minus: return "parabolic_minus";
    case OrbitKind::zero: return "zero";
  }
  return "?";
}

Mat orbit_normal_form(OrbitKind kind, double lambda) {
  switch (kind) {
    case OrbitKind::elliptic: return real2(0, lambda, -lambda, 0);
    case OrbitKind::hyperbolic: return real2(0, lambda, lambda, 0);
    case OrbitKind::parabolic_plus: return real2(0, 1, 0, 0);
    case OrbitKind::parabolic_minus: return real2(0, 0, 1, 0);
    case OrbitKind::zero: return Mat::Zero(2, 2);
  }
  return Mat::Zero(2, 2);
}

OrbitClass classify_orbit(const AlgebraElement& a, double tol) {
  if (a.tag() != Tag::sl2R && join_tags(a.tag(), Tag::sl2R, a.dim()) != Tag::sl2R)
    throw Error(ErrorCode::TagMismatch, "classify_orbit expects sl2R");
  if (a.norm() < tol) throw Error(ErrorCode::ZeroElement, "orbit of 0");
  const RMat x = a.real();
  OrbitClass out;
  out.det = x.determinant();
  const double z = 0.5 * (x(0, 1) - x(1, 0));
  const double ad = std::abs(out.det);
  out.near_degenerate = ad >= tol && ad <= kNearDegenerateBand;

  if (out.det > tol) {
    out.kind = OrbitKind::elliptic;
    out.lambda = sgn(z) * std::sqrt(out.det);
    // P = [v, -A v / lambda] with v = e1 has det = -c / lambda > 0.
    Mat p(2, 2);
    p(0, 0) = 1.0;
    p(1, 0) = 0.0;
    p(0, 1) = -x(0, 0) / out.lambda;
    p(1, 1) = -x(1, 0) / out.lambda;
    out.conjugator = conjugator_from(p);
  } else if (out.det < -tol) {
    out.kind = OrbitKind::hyperbolic;
    out.lambda = std::sqrt(-out.det);
    Eigen::Vector2d u = kernel_vector(x, out.lambda);
    Eigen::Vector2d w = kernel_vector(x, -out.lambda);
    Eigen::Matrix2d p;
    p.col(0) = u + w;
    p.col(1) = u - w;
    if (p.determinant() < 0.0) {
      p.col(0) = u - w;
      p.col(1) = u + w;
    }
    out.conjugator = conjugator_from(Mat(RMat(p).cast<cplx>()));
  } else {
    out.kind = z >= 0.0 ? OrbitKind::parabolic_plus : OrbitKind::parabolic_minus;
    out.lambda = 0.0;
    Eigen::Vector2d e1(1, 0), e2(0, 1);
    Eigen::Vector2d v = (x * e1).norm() >= (x * e2).norm() ? e1 : e2;
    Eigen::Vector2d av = x * v;
    Eigen::Matrix2d p;
    if (out.kind == OrbitKind::parabolic_plus) {
      p.col(0) = av;
      p.col(1) = v;
    } else {
      p.col(0) = v;
      p.col(1) = av;
    }
    out.conjugator = conjugator_from(Mat(RMat(p).cast<cplx>()));
  }
  out.normal_form = orbit_normal_form(out.kind, out.lambda);
  return out;
}

std::vector<Mat> stabilizer_basis(const OrbitClass& cls) {
  switch (cls.kind) {
    case OrbitKind::elliptic: return {real2(0, 1, -1, 0)};
    case OrbitKind::hyperbolic: return {real2(0, 1, 1, 0)};
    case OrbitKind::parabolic_plus: return {real2(0, 1, 0, 0)};
    case OrbitKind::parabolic_minus: return {real2(0, 0, 1, 0)};
    case OrbitKind::zero: return algebra_basis(Tag::sl2R, 2);
  }
  return {};
}

double kks_form(const Mat& nu, const Mat& a, const Mat& b, const DualPairing& pairing) {
  return pairing(commutator(a, b), nu);
}

Mat stabilizer_sample(const OrbitClass& cls, double param, bool negative_component) {
  const double s = negative_component ? -1.0 : 1.0;
  switch (cls.kind) {
    case OrbitKind::elliptic:
      return real2(std::cos(param), std::sin(param), -std::sin(param), std::cos(param));
    case OrbitKind::hyperbolic:
      return s * real2(std::cosh(param), std::sinh(param), std::sinh(param), std::cosh(param));
    case OrbitKind::parabolic_plus: return s * real2(1, param, 0, 1);
    case OrbitKind::parabolic_minus: return s * real2(1, 0, param, 1);
    case OrbitKind::zero: break;
  }
  throw Error(ErrorCode::ZeroElement, "stabilizer of 0 is the whole group");
}

std::vector<Character> prequantization_character(const OrbitClass& cls) {
  const double lambda = cls.lambda;
  const auto stab = stabilizer_basis(cls);
  switch (cls.kind) {
    case OrbitKind::elliptic: {
      if (std::abs(lambda - std::round(lambda)) > 1e-9)
        throw Error(ErrorCode::NotPrequantizable, "elliptic orbit with lambda = " + std::to_string(lambda));
      const double l = std::round(lambda);
      return {{"rho_e", stab[0], -l, [l](const Mat& g) {
                 const double theta = std::atan2(g(0, 1).real(), g(0, 0).real());
                 return std::exp(cplx(0.0, -theta * l));
               }}};
    }
    case OrbitKind::hyperbolic: {
      // g = sign * exp(s e_-)
      auto split = [](const Mat& g) {
        const double sign = sgn(g(0, 0).real());
        return std::pair<double, double>(sign, std::asinh(g(0, 1).real() / sign));
      };
      return {{"rho_h", stab[0], lambda,
               [lambda, split](const Mat& g) { return std::exp(cplx(0.0, split(g).second * lambda)); }},
              {"sqrt_rho_h", stab[0], lambda, [lambda, split](const Mat& g) {
                 auto [sign, s] = split(g);
                 return sign * std::exp(cplx(0.0, s * lambda));
               }}};
    }
    case OrbitKind::parabolic_plus:
    case OrbitKind::parabolic_minus:
      return {{"trivial", stab[0], 0.0, [](const Mat&) { return cplx(1.0, 0.0); }},
              {"sign", stab[0], 0.0, [](const Mat& g) { return cplx(sgn(g(0, 0).real()), 0.0); }}};
    case OrbitKind::zero: break;
  }
  throw Error(ErrorCode::ZeroElement, "no character for the zero orbit");
}

double pushed_orbit_form(const RMat& b, const RMat& c1, const RMat& c2, double lambda) {
  if (b.rows() != 2 || b.cols() != 2 || c1.rows() != 2 || c2.rows() != 2 || c1.cols() != 2 || c2.cols() != 2)
    throw Error(ErrorCode::DimensionMismatch, "pushed_orbit_form works on 2x2 matrices");
  if ((b - b.transpose()).norm() > 1e-12 * std::max(1.0, b.norm()))
    throw Error(ErrorCode::NotPositiveDefinite, "B is not symmetric");
  Eigen::LLT<RMat> llt(b);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "B is not positive definite");
  if (std::abs(b.determinant() - 1.0) > 1e-10)
    throw Error(ErrorCode::NotPositiveDefinite, "det B != 1");
  if ((c1 - c1.transpose()).norm() > 1e-12 * std::max(1.0, c1.norm()) ||
      (c2 - c2.transpose()).norm() > 1e-12 * std::max(1.0, c2.norm()))
    throw Error(ErrorCode::ConstraintViolation, "tangent vectors must be symmetric");
  const RMat bi = b.inverse();
  RMat n(2, 2);
  n << 0, lambda, -lambda, 0;
  return -0.25 * (bi * c1 * bi * n * bi * c2).trace();
}

MatrixDualPairSample matrix_dual_pair(const RMat& x) {
  if (x.rows() != x.cols() || x.rows() % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch, "matrix dual pair needs a square matrix of even size");
  const int n = static_cast<int>(x.rows()) / 2;
  MatrixDualPairSample s;
  s.x = x;
  s.standard_J = standard_J(n);
  s.j_sp = -x * x.transpose() * s.standard_J;
  s.j_o = x.transpose() * s.standard_J * x;
  s.sp_defect = algebra_defect(Mat(s.j_sp.cast<cplx>()), Tag::sp2nR);
  s.o_defect = algebra_defect(Mat(s.j_o.cast<cplx>()), Tag::o_n);
  return s;
}

RMat unitary_to_symplectic(const Mat& u) {
  const auto n = u.rows();
  RMat s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = u.real();
  s.topRightCorner(n, n) = -u.imag();
  s.bottomLeftCorner(n, n) = u.imag();
  s.bottomRightCorner(n, n) = u.real();
  return s;
}

SiegelReport siegel_reduction_check(const RMat& x, int n, const std::vector<Mat>& unitaries) {
  if (x.rows() != 2 * n || x.cols() != 2 * n) throw Error(ErrorCode::DimensionMismatch, "X must be 2n x 2n");
  const RMat j = standard_J(n);
  SiegelReport r;
  r.level_set_defect = (x.transpose() * j * x - j).norm();
  if (r.level_set_defect > 1e-10 * std::max(1.0, x.squaredNorm()))
    throw Error(ErrorCode::NotInLevelSet, "X^T J X != J (defect " + std::to_string(r.level_set_defect) + ")");
  const RMat xi = x.inverse();
  const RMat ic = x * j * xi;
  r.complex_structure_matrix = ic;
  r.complex_structure = (ic * ic + RMat::Identity(2 * n, 2 * n)).norm();
  const RMat g = ic.transpose() * j;
  r.metric_symmetry = (g - g.transpose()).norm();
  Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (g + g.transpose()));
  r.metric_min_eigenvalue = es.eigenvalues().minCoeff();
  const RMat jo = x.transpose() * j * x;
  for (const Mat& u : unitaries) {
    const RMat s = unitary_to_symplectic(u);
    const RMat xu = x * s;
    r.stabilizer_momentum = std::max(r.stabilizer_momentum, (xu.transpose() * j * xu - jo).norm());
    r.stabilizer_structure = std::max(r.stabilizer_structure, (xu * j * xu.inverse() - ic).norm());
  }
  return r;
}

std::vector<OrbitTableRow> orbit_table() {
  const Mat h = real2(0, 1, -1, 0), em = real2(0, 1, 1, 0), ep = real2(1, 0, 0, -1);
  // Representatives are deliberately not in normal form.
  const std::vector<std::pair<std::string, Mat>> reps = {
      {"elliptic", Mat(h + 0.3 * ep)}, {"hyperbolic", Mat(em + 0.4 * h)}, {"parabolic", Mat(0.5 * (em + h))}};
  std::vector<OrbitTableRow> rows;
  for (const auto& [label, a] : reps) {
    OrbitClass cls = classify_orbit(AlgebraElement(a, Tag::sl2R));
    OrbitTableRow row;
    row.kind = label;
    const Mat s = stabilizer_basis(cls)[0];
    const double d = s.real().determinant();
    if (d > kOrbitTol)
      row.stabilizer = "SO(2)";
    else if (d < -kOrbitTol)
      row.stabilizer = "SO(1,1)";
    else
      row.stabilizer = (s(0, 1).real() - s(1, 0).real()) > 0 ? "P+" : "P-";

    // Probe the prequantization condition on integer and non-integer labels.
    auto quantizes = [&](double lambda) {
      OrbitClass probe = cls;
      if (cls.kind == OrbitKind::elliptic || cls.kind == OrbitKind::hyperbolic) probe.lambda = lambda;
      try {
        prequantization_character(probe);
        return true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotPrequantizable) throw;
        return false;
      }
    };
    const bool integers = quantizes(1.0) && quantizes(-2.0);
    const bool others = quantizes(0.5) && quantizes(std::numbers::sqrt2);
    row.quantizable = (integers && others) ? "always" : (integers ? "lambda in Z" : "never");

    OrbitClass unit = cls;
    if (cls.kind == OrbitKind::elliptic || cls.kind == OrbitKind::hyperbolic) unit.lambda = 1.0;
    for (const auto& c : prequantization_character(unit)) row.characters.push_back(c.name);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gvmm
