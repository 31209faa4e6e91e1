#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "gvmm/orbits.hpp"

using namespace gvmm;

namespace {

RMat traceless(double a, double b, double c) {
  RMat m(2, 2);
  m << a, b, c, -a;
  return m;
}

struct Oracle {
  OrbitKind kind;
  double lambda;
};

// Eigenvalues plus the orientation of the real eigenplane.
Oracle eigen_oracle(const RMat& a) {
  Eigen::EigenSolver<RMat> es(a);
  const auto ev = es.eigenvalues();
  if (std::abs(ev(0).imag()) > 0.0) {
    const int j = ev(0).imag() > 0 ? 0 : 1;
    const Eigen::VectorXcd v = es.eigenvectors().col(j);
    RMat plane(2, 2);
    plane.col(0) = v.real();
    plane.col(1) = v.imag();
    return {OrbitKind::elliptic, std::abs(ev(j).imag()) * (plane.determinant() > 0 ? 1.0 : -1.0)};
  }
  return {OrbitKind::hyperbolic, std::abs(ev(0).real())};
}

}  // namespace

TEST(Orbits, AgreesWithEigenvalueOracle) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const RMat a = traceless(u(rng), u(rng), u(rng));
    if (std::abs(a.determinant()) <= kNearDegenerateBand) continue;
    const OrbitClass c = classify_orbit(AlgebraElement(a, Tag::sl2R));
    const Oracle o = eigen_oracle(a);
    ASSERT_EQ(c.kind, o.kind) << a;
    EXPECT_NEAR(c.lambda, o.lambda, 1e-9);
    EXPECT_LT((c.conjugator * Mat(a.cast<cplx>()) * c.conjugator.inverse() - c.normal_form).norm(), 1e-8);
    EXPECT_NEAR(std::abs(c.conjugator.determinant() - 1.0), 0.0, 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 990);
}

TEST(Orbits, ParabolicSigns) {
  EXPECT_EQ(classify_orbit(AlgebraElement(traceless(0, 1, 0), Tag::sl2R)).kind, OrbitKind::parabolic_plus);
  EXPECT_EQ(classify_orbit(AlgebraElement(traceless(0, 0, 1), Tag::sl2R)).kind, OrbitKind::parabolic_minus);
}

TEST(Orbits, ZeroHasNoOrbitClass) {
  EXPECT_THROW(classify_orbit(AlgebraElement(traceless(0, 0, 0), Tag::sl2R)), Error);
}

TEST(Orbits, StabilizerCommutesWithNormalForm) {
  for (const RMat& a : {traceless(0.3, 1, -1), traceless(0.4, 1, 0.7), traceless(0.5, 0.5, -0.5)}) {
    const OrbitClass c = classify_orbit(AlgebraElement(a, Tag::sl2R));
    for (const Mat& s : stabilizer_basis(c)) EXPECT_LT(commutator(s, c.normal_form).norm(), 1e-12);
  }
}

TEST(Orbits, EllipticPrequantizationNeedsIntegerLabel) {
  OrbitClass c = classify_orbit(AlgebraElement(traceless(0, 2, -2), Tag::sl2R));
  ASSERT_EQ(c.kind, OrbitKind::elliptic);
  EXPECT_NO_THROW(prequantization_character(c));
  c.lambda = 0.5;
  EXPECT_THROW(prequantization_character(c), Error);
}

TEST(Orbits, CharactersAreHomomorphisms) {
  for (const RMat& a : {traceless(0, 1, -1), traceless(0, 1, 1), traceless(0, 1, 0)}) {
    const OrbitClass c = classify_orbit(AlgebraElement(a, Tag::sl2R));
    for (const Character& ch : prequantization_character(c)) {
      const Mat g = stabilizer_sample(c, 0.3, false), h = stabilizer_sample(c, -0.7, false);
      EXPECT_LT(std::abs(ch.eval(g * h) - ch.eval(g) * ch.eval(h)), 1e-12) << ch.name;
      EXPECT_NEAR(std::abs(ch.eval(g)), 1.0, 1e-12);
    }
  }
}

TEST(Orbits, TableColumns) {
  const auto rows = orbit_table();
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].stabilizer, "SO(2)");
  EXPECT_EQ(rows[0].quantizable, "lambda in Z");
  EXPECT_EQ(rows[0].characters.size(), 1u);
  EXPECT_EQ(rows[1].stabilizer, "SO(1,1)");
  EXPECT_EQ(rows[1].quantizable, "always");
  EXPECT_EQ(rows[1].characters.size(), 2u);
  EXPECT_EQ(rows[2].stabilizer.substr(0, 1), "P");
  EXPECT_EQ(rows[2].quantizable, "always");
  EXPECT_EQ(rows[2].characters.size(), 2u);
}

TEST(Orbits, KksFormIsSkew) {
  const DualPairing k = killing_sl2R();
  const auto& b = k.basis_left();
  const Mat nu = 0.4 * b[0] - 1.1 * b[2];
  for (const Mat& x : b)
    for (const Mat& y : b) EXPECT_NEAR(kks_form(nu, x, y, k), -kks_form(nu, y, x, k), 1e-14);
}

TEST(Orbits, PushedFormRejectsBadInput) {
  RMat b = RMat::Identity(2, 2), c = RMat::Identity(2, 2);
  b(0, 0) = -1.0;
  EXPECT_THROW(pushed_orbit_form(b, c, c, 1.0), Error);
}

TEST(Orbits, SiegelReduction) {
  // X in the level set J_O = J: any symplectic matrix.
  RMat x = RMat::Identity(4, 4);
  x(0, 2) = 0.3;
  x(1, 3) = 0.3;
  x(2, 0) = 0.0;
  std::vector<Mat> us;
  std::mt19937 rng(1);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 3; ++i) {
    Mat h(2, 2);
    for (Eigen::Index j = 0; j < 4; ++j) h(j) = cplx(nd(rng), nd(rng));
    us.push_back(Mat((0.5 * (h - h.adjoint())).exp()));
  }
  const auto rep = siegel_reduction_check(x, 2, us);
  EXPECT_LT(rep.level_set_defect, 1e-12);
  EXPECT_LT(rep.complex_structure, 1e-10);
  EXPECT_LT(rep.metric_symmetry, 1e-10);
  EXPECT_GT(rep.metric_min_eigenvalue, 0.0);
  EXPECT_LT(rep.stabilizer_momentum, 1e-10);
  EXPECT_LT(rep.stabilizer_structure, 1e-10);
  EXPECT_THROW(siegel_reduction_check(2.0 * x, 2, us), Error);
}
