#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "gvmm/lie.hpp"

using namespace gvmm;

namespace {

Mat real2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Mat combo(const std::vector<Mat>& basis, std::mt19937& rng, double s) {
  std::normal_distribution<double> nd(0.0, s);
  Mat m = Mat::Zero(basis[0].rows(), basis[0].cols());
  for (const Mat& b : basis) m += nd(rng) * b;
  return m;
}

}  // namespace

TEST(Lie, RotationExponentialMatchesClosedForm) {
  const double t = 0.83;
  const GroupElement g = exp_matrix(AlgebraElement(real2(0, t, -t, 0), Tag::sl2R));
  EXPECT_LT((g.entries() - real2(std::cos(t), std::sin(t), -std::sin(t), std::cos(t))).norm(), 1e-13);
}

TEST(Lie, BoostExponentialMatchesClosedForm) {
  const double t = 0.6;
  const GroupElement g = exp_matrix(AlgebraElement(real2(t, 0, 0, -t), Tag::sl2R));
  EXPECT_LT((g.entries() - real2(std::exp(t), 0, 0, std::exp(-t))).norm(), 1e-13);
}

TEST(Lie, LogInvertsExpNearIdentity) {
  std::mt19937 rng(3);
  for (Tag tag : {Tag::sl2R, Tag::su_n, Tag::b_n}) {
    for (int i = 0; i < 20; ++i) {
      const Mat x = combo(algebra_basis(tag, 2), rng, 0.2);
      const AlgebraElement back = log_matrix(exp_matrix(AlgebraElement(x, tag)));
      EXPECT_LT((back.entries() - x).norm(), 1e-11) << tag_name(tag);
    }
  }
}

TEST(Lie, LogRejectsFarElements) {
  const GroupElement g(real2(-1, 0, 0, -1), Tag::sl2R);
  EXPECT_THROW(log_matrix(g), Error);
}

TEST(Lie, MembershipIsValidated) {
  EXPECT_THROW(AlgebraElement(real2(1, 0, 0, 1), Tag::sl2R), Error);
  EXPECT_THROW(GroupElement(real2(2, 0, 0, 1), Tag::sl2R), Error);
  EXPECT_NO_THROW(AlgebraElement(real2(0.5, 1, 2, -0.5), Tag::sl2R));
}

TEST(Lie, AdjointPreservesBracket) {
  std::mt19937 rng(5);
  const auto basis = algebra_basis(Tag::sp2nR, 4);
  for (int i = 0; i < 10; ++i) {
    const GroupElement g = exp_matrix(AlgebraElement(combo(basis, rng, 0.4), Tag::sp2nR));
    const AlgebraElement a(combo(basis, rng, 1.0), Tag::sp2nR), b(combo(basis, rng, 1.0), Tag::sp2nR);
    const Mat lhs = adjoint(g, bracket(a, b)).entries();
    const Mat rhs = bracket(adjoint(g, a), adjoint(g, b)).entries();
    EXPECT_LT((lhs - rhs).norm(), 1e-10);
  }
}

TEST(Lie, BasesLieInTheirAlgebras) {
  for (Tag tag : {Tag::sl2R, Tag::su_n, Tag::b_n, Tag::so2, Tag::sp2nR, Tag::o_n}) {
    const int n = (tag == Tag::sp2nR || tag == Tag::o_n) ? 4 : 2;
    for (const Mat& b : algebra_basis(tag, n)) EXPECT_LT(algebra_defect(b, tag), 1e-14) << tag_name(tag);
  }
}

TEST(Lie, CoadjointIsDefinedThroughThePairing) {
  std::mt19937 rng(9);
  const DualPairing k = killing_sl2R();
  for (int i = 0; i < 10; ++i) {
    const Mat g = exp_matrix(AlgebraElement(combo(k.basis_left(), rng, 0.5), Tag::sl2R)).entries();
    const Mat mu = combo(k.basis_right(), rng, 1.0), a = combo(k.basis_left(), rng, 1.0);
    const Mat c = coadjoint_mat(g, mu, k);
    EXPECT_NEAR(k(a, c), k(Mat(g * a * g.inverse()), mu), 1e-11);
  }
}

TEST(Lie, InfinitesimalCoadjointMatchesBracket) {
  std::mt19937 rng(10);
  const DualPairing k = iwasawa_pairing(2);
  for (int i = 0; i < 10; ++i) {
    const Mat a = combo(k.basis_left(), rng, 1.0), b = combo(k.basis_left(), rng, 1.0);
    const Mat mu = combo(k.basis_right(), rng, 1.0);
    EXPECT_NEAR(k(b, infinitesimal_coadjoint_mat(a, mu, k)), k(commutator(a, b), mu), 1e-11);
  }
}

TEST(Lie, PairingsAreNondegenerate) {
  EXPECT_LT(killing_sl2R().condition_number(), 1e3);
  EXPECT_LT(iwasawa_pairing(2).condition_number(), 1e3);
  const DualPairing k = iwasawa_pairing(2);
  Vec rhs(3);
  rhs << 0.3, -1.0, 2.0;
  const Mat nu = k.solve_right(rhs);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(k(k.basis_left()[i], nu), rhs(i), 1e-12);
}

TEST(Lie, LogDerivativeOfOneParameterSubgroupIsConstant) {
  const Mat x = real2(0.2, 0.7, -0.4, -0.2);
  const AlgebraElement d = log_derivative([&x](double t) { return Mat((t * x).exp()); }, 0.4, Tag::sl2R);
  EXPECT_LT((d.entries() - x).norm(), 1e-10);
}

TEST(Lie, GroupModelAdditiveIsVectorAddition) {
  const GroupModel add{Tag::rn, 2, true};
  Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
  a(0, 0) = 1.5;
  b(1, 1) = -2.0;
  EXPECT_LT((add.mul(a, b) - (a + b)).norm(), 1e-15);
  EXPECT_LT((add.inv(a) + a).norm(), 1e-15);
  EXPECT_LT(add.bracket(a, b).norm(), 1e-15);
}
