#include <random>

#include <gtest/gtest.h>

#include "gvmm/poisson.hpp"

using namespace gvmm;

namespace {

Mat combo(const std::vector<Mat>& basis, std::mt19937& rng, double s) {
  std::normal_distribution<double> nd(0.0, s);
  Mat m = Mat::Zero(basis[0].rows(), basis[0].cols());
  for (const Mat& b : basis) m += nd(rng) * b;
  return m;
}

struct IwasawaSamples {
  std::vector<Mat> k, b;
};

IwasawaSamples iwasawa_samples(int count, unsigned seed) {
  std::mt19937 rng(seed);
  const DualPairing p = iwasawa_pairing(2);
  const GroupModel su{Tag::su_n, 2, false}, bn{Tag::b_n, 2, false};
  IwasawaSamples s;
  for (int i = 0; i < count; ++i) {
    s.k.push_back(su.exp(combo(p.basis_left(), rng, 0.8)));
    s.b.push_back(bn.exp(combo(p.basis_right(), rng, 0.5)));
  }
  return s;
}

}  // namespace

TEST(Poisson, KksStructurePassesAllConditions) {
  std::mt19937 rng(2);
  const DualPairing k = killing_sl2R();
  std::vector<Mat> samples;
  for (int i = 0; i < 6; ++i) samples.push_back(combo(k.basis_right(), rng, 1.0));
  const auto rep = check_poisson_lie(kks_structure(k), samples);
  EXPECT_LT(rep.max(), 1e-8);
}

TEST(Poisson, BrokenStructureFailsSkew) {
  const DualPairing k = killing_sl2R();
  PoissonLieStructure s = kks_structure(k);
  // pi(mu, A) = A read as a dual element is symmetric, not skew.
  s.pi = [](const Mat&, const Mat& a) { return a; };
  std::vector<Mat> samples = {k.basis_right()[0]};
  EXPECT_GT(check_poisson_lie(s, samples).skew, 1e-3);
}

TEST(Iwasawa, DecompositionFactors) {
  std::mt19937 rng(4);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 20; ++i) {
    Mat d(2, 2);
    for (Eigen::Index j = 0; j < 4; ++j) d(j) = cplx(nd(rng), nd(rng));
    d /= std::sqrt(d.determinant());
    const Iwasawa f = iwasawa_decompose(d);
    EXPECT_LT((f.k * f.b - d).norm(), 1e-12);
    EXPECT_LT((f.k.adjoint() * f.k - Mat::Identity(2, 2)).norm(), 1e-12);
    EXPECT_NEAR(std::abs(f.b(1, 0)), 0.0, 1e-14);
    EXPECT_GT(f.b(0, 0).real(), 0.0);
    EXPECT_NEAR(f.b(0, 0).imag(), 0.0, 1e-14);
  }
}

TEST(Iwasawa, DecompositionRejectsSingular) {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1.0;
  EXPECT_THROW(iwasawa_decompose(d), Error);
}

TEST(Iwasawa, ProjectionsSplitTheAlgebra) {
  std::mt19937 rng(6);
  std::normal_distribution<double> nd;
  Mat x(2, 2);
  for (Eigen::Index j = 0; j < 4; ++j) x(j) = cplx(nd(rng), nd(rng));
  x -= 0.5 * x.trace() * Mat::Identity(2, 2);
  EXPECT_LT((proj_k(x) + proj_b(x) - x).norm(), 1e-13);
  EXPECT_LT(algebra_defect(proj_k(x), Tag::su_n), 1e-13);
  EXPECT_LT(algebra_defect(proj_b(x), Tag::b_n), 1e-13);
}

TEST(Iwasawa, MatchedPairOverHundredSamples) {
  const auto s = iwasawa_samples(100, 7);
  const auto rep = check_matched_pair(iwasawa_pair(2), iwasawa_pairing(2), s.k, s.b);
  EXPECT_LT(rep.matched, 1e-9);
  EXPECT_LT(rep.matched_star, 1e-9);
  EXPECT_LT(rep.identity, 1e-9);
  EXPECT_LT(rep.infinitesimal, 1e-6);
  EXPECT_LT(rep.infinitesimal_star, 1e-6);
  EXPECT_LT(factorization_residual(iwasawa_pair(2), s.k, s.b), 1e-9);
}

TEST(Iwasawa, PerturbedPairIsRejected) {
  const auto s = iwasawa_samples(10, 7);
  EXPECT_GT(check_matched_pair(perturbed_iwasawa_pair(2, 0.3), iwasawa_pairing(2), s.k, s.b).residual(), 1e-6);
}

TEST(Iwasawa, DressingStructureMatchesClosedForm) {
  const auto s = iwasawa_samples(4, 11);
  const DualPairing p = iwasawa_pairing(2);
  const auto d = derive_dressing_poisson(iwasawa_pair(2), p, s.k, s.b);
  EXPECT_LT(check_poisson_lie(d.on_gstar, s.b).max(), 1e-6);
  EXPECT_LT(check_poisson_lie(d.on_g, s.k).max(), 1e-6);
  for (const Mat& b : s.b)
    for (const Mat& a : p.basis_left()) EXPECT_LT((d.on_gstar.pi(b, a) - iwasawa_pi_b(b, a)).norm(), 1e-6);
}

TEST(Iwasawa, DressingRefusesPerturbedPair) {
  const auto s = iwasawa_samples(3, 11);
  EXPECT_THROW(derive_dressing_poisson(perturbed_iwasawa_pair(2, 0.3), iwasawa_pairing(2), s.k, s.b), Error);
}

TEST(Poisson, ChevalleyEilenbergSquaresToZero) {
  std::mt19937 rng(12);
  const DualPairing k = killing_sl2R();
  // Linear map sl2 -> sl2* as a 1-cochain with random coefficients.
  const Mat m = combo(k.basis_right(), rng, 1.0);
  Cochain c0{0, [m](const std::vector<Mat>&) { return m; }};
  const Cochain d1 = ce_differential(c0, k);
  const Cochain d2 = ce_differential(d1, k);
  for (int i = 0; i < 5; ++i) {
    const Mat a = combo(k.basis_left(), rng, 1.0), b = combo(k.basis_left(), rng, 1.0);
    EXPECT_LT(d2({a, b}).norm(), 1e-10);
  }
}

TEST(Poisson, AffineStructureFromTorusCocycle) {
  std::mt19937 rng(14);
  std::normal_distribution<double> nd;
  std::vector<Mat> gs;
  for (int i = 0; i < 5; ++i) {
    Mat g = Mat::Zero(2, 2);
    g(0, 0) = nd(rng);
    g(1, 1) = nd(rng);
    gs.push_back(g);
  }
  const auto pair = torus_translation_pair();
  EXPECT_LT(cocycle_law_residual(pair, torus_translation_cocycle(), gs), 1e-10);
  const auto s = affine_structure_from_cocycle(pair, torus_translation_cocycle(), abelian_pairing(2), gs);
  EXPECT_LT(affine_law_residual(s, gs), 1e-8);
}
