#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "gvmm/systems.hpp"

using namespace gvmm;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

RMat random_matrix(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  RMat x(n, n);
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = nd(rng);
  return x;
}

}  // namespace

TEST(Momentum, TranslationSatisfiesDefiningEquation) {
  EXPECT_LT(momentum_residual_all(translation_system(v2(0.4, -0.7)), as_fn(abelian_pairing(2))), 1e-6);
}

TEST(Momentum, WrongSignIsDetected) {
  // J -> -J must fail the defining equation.
  EXPECT_GT(momentum_residual_all(translation_system(v2(0.4, -0.7), -1.0), as_fn(abelian_pairing(2))), 0.5);
}

TEST(Momentum, MatrixDualPair) {
  for (unsigned seed : {1u, 2u, 3u}) {
    const RMat x = random_matrix(4, seed);
    EXPECT_LT(momentum_residual_all(matrix_sp_system(x), as_fn(matrix_pair_pairing(Tag::sp2nR, 4))), 1e-6);
    EXPECT_LT(momentum_residual_all(matrix_o_system(x), as_fn(matrix_pair_pairing(Tag::o_n, 4))), 1e-6);
    const auto dp = matrix_dual_pair(x);
    EXPECT_LT(dp.sp_defect, 1e-9);
    EXPECT_LT(dp.o_defect, 1e-9);
  }
}

TEST(Momentum, KksOrbitsAllKinds) {
  const PairingFn k = as_fn(killing_sl2R());
  EXPECT_LT(momentum_residual_all(kks_orbit_system(OrbitKind::elliptic, 1.5, v2(0.3, -0.4)), k), 1e-6);
  EXPECT_LT(momentum_residual_all(kks_orbit_system(OrbitKind::elliptic, -0.8, v2(-0.5, 0.1)), k), 1e-6);
  EXPECT_LT(momentum_residual_all(kks_orbit_system(OrbitKind::hyperbolic, 0.7, v2(0.2, 0.5)), k), 1e-6);
  EXPECT_LT(momentum_residual_all(kks_orbit_system(OrbitKind::parabolic_plus, 0.0, v2(0.6, -0.2)), k), 1e-6);
  EXPECT_LT(momentum_residual_all(kks_orbit_system(OrbitKind::parabolic_minus, 0.0, v2(0.6, -0.2)), k), 1e-6);
}

TEST(Momentum, InfinitesimalActionMatchesGroupAction) {
  const auto sys = kks_orbit_system(OrbitKind::hyperbolic, 0.7, v2(0.2, 0.5));
  for (const Mat& a : sys.generators) EXPECT_LT(inf_action_consistency(sys, a), 1e-7);
  const auto sp = matrix_sp_system(random_matrix(4, 8));
  for (const Mat& a : sp.generators) EXPECT_LT(inf_action_consistency(sp, a), 1e-6);
}

TEST(Momentum, GroupValuedExamples) {
  EXPECT_LT(momentum_residual_all(sheared_oscillator_system(v2(0.3, 0.45)), sheared_pairing()), 1e-6);
  EXPECT_LT(momentum_residual_all(symplectic_torus_system(v2(0.35, 0.35)), as_fn(abelian_pairing(2))), 1e-6);
  EXPECT_LT(circle_momentum_residual(circle_t2_system(v2(0.2, 0.7))), 1e-6);
}

TEST(Momentum, TranslationCocycle) {
  const auto tr = translation_system(v2(0.4, -0.7));
  const RMat s = nonequivariance_cocycle(tr, tr.generators);
  EXPECT_NEAR(s(0, 1), 1.0, 1e-9);
  EXPECT_NEAR(s(0, 1) + s(1, 0), 0.0, 1e-15);
  EXPECT_LT(cocycle_cyclic_residual(tr, tr.generators), 1e-9);
}

TEST(Momentum, KksIsEquivariant) {
  // Coadjoint orbits carry equivariant momenta, so the cocycle vanishes.
  const auto sys = kks_orbit_system(OrbitKind::elliptic, 1.5, v2(0.3, -0.4));
  const RMat s = nonequivariance_cocycle(sys, sys.generators);
  const DualPairing k = killing_sl2R();
  const Mat nu = sys.momentum(sys.point);
  for (std::size_t i = 0; i < sys.generators.size(); ++i)
    for (std::size_t j = 0; j < sys.generators.size(); ++j)
      EXPECT_NEAR(s(i, j), -k(commutator(sys.generators[i], sys.generators[j]), nu), 1e-8);
}

TEST(Noether, OscillatorMidpointConservesQuadraticMomentum) {
  Hamiltonian h;
  h.value = [](const Vec& z) { return 0.5 * z.squaredNorm(); };
  EXPECT_LT(noether_drift(oscillator_system(v2(0.7, -0.3)), h, 10.0, 1e-3).drift, 1e-10);
}

TEST(Noether, ShearedChartShowsSecondOrderDrift) {
  const double a = 0.2;
  const auto sys = sheared_oscillator_system(v2(a, 0.5 * a + a * a * a));
  const double d1 = noether_drift(sys, sheared_oscillator_hamiltonian(), 10.0, 1e-3).drift;
  const double d2 = noether_drift(sys, sheared_oscillator_hamiltonian(), 10.0, 5e-4).drift;
  EXPECT_LT(d1, 1e-8);
  EXPECT_GT(d1 / d2, 3.5);
  EXPECT_LT(d1 / d2, 4.5);
}

TEST(Noether, QuarticInvariantUnderDiagonalTranslation) {
  Vec w(4);
  w << 0.1, -0.2, 0.3, 0.05;
  const auto rep = noether_drift(quartic_system(w), quartic_hamiltonian(), 10.0, 1e-3);
  EXPECT_LT(rep.invariance, 1e-8);
  EXPECT_LT(rep.drift, 1e-8);
}

TEST(Noether, NonInvariantHamiltonianDrifts) {
  Hamiltonian h;
  h.value = [](const Vec& z) { return z(0) * z(0) + 0.5 * z(1) * z(1) + z(2); };
  Vec w(4);
  w << 0.1, -0.2, 0.3, 0.05;
  EXPECT_GT(noether_drift(quartic_system(w), h, 1.0, 1e-3).drift, 1e-3);
}

TEST(Momentum, ExtensionCombinesParts) {
  const Vec z = v2(0.7, -0.2);
  const auto e = extension_momentum(translation_system(z), as_fn(abelian_pairing(2)), oscillator_system(z),
                                    as_fn(trace_pairing(Tag::so2, 2, 0.5)));
  EXPECT_LT(e.residual_combined, 1e-6);
}

TEST(Momentum, ExtensionRejectsBadParts) {
  const Vec z = v2(0.7, -0.2);
  EXPECT_THROW(extension_momentum(translation_system(z, -1.0), as_fn(abelian_pairing(2)), oscillator_system(z),
                                  as_fn(trace_pairing(Tag::so2, 2, 0.5))),
               Error);
}

TEST(Momentum, SubgroupRestriction) {
  Vec base(4);
  base << 0.3, 0.4, 0.6, 0.2;
  auto iota = [](const Mat& b) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = m(1, 1) = b(0, 0);
    return m;
  };
  auto rho = [](const Mat& mu) {
    Mat m(1, 1);
    m(0, 0) = mu(0, 0) + mu(1, 1);
    return m;
  };
  const auto h = subgroup_momentum(t4_system(base), abelian_pairing(2), abelian_pairing(1), iota, rho);
  EXPECT_LT(momentum_residual_all(h, as_fn(abelian_pairing(1))), 1e-6);
  auto bad_rho = [](const Mat& mu) {
    Mat m(1, 1);
    m(0, 0) = mu(0, 0);
    return m;
  };
  EXPECT_THROW(subgroup_momentum(t4_system(base), abelian_pairing(2), abelian_pairing(1), iota, bad_rho), Error);
}
