#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gvmm/period.hpp"
#include "gvmm/systems.hpp"

using namespace gvmm;

namespace {

Vec unit(int n, int i) {
  Vec v = Vec::Zero(n);
  v(i) = 1.0;
  return v;
}

std::vector<LoopPath> coordinate_loops(const Vec& base) {
  std::vector<LoopPath> loops;
  for (int i = 0; i < base.size(); ++i) loops.push_back(lattice_loop(base, unit(base.size(), i), Vec::Ones(base.size())));
  return loops;
}

}  // namespace

TEST(Period, DiagonalCircleOnT4) {
  const Vec base = Vec::Constant(4, 0.5);
  const auto alpha = build_primitive(t4_diagonal_circle(base), abelian_pairing(1));
  const auto loops = coordinate_loops(base);
  const double expected[4] = {0.0, 1.0, 0.0, std::numbers::sqrt2};
  for (int i = 0; i < 4; ++i)
    EXPECT_NEAR(period_homomorphism(alpha, loops[i], DualGroup{}).value(0, 0).real(), expected[i], 1e-8);
  EXPECT_EQ(existence_verdict(alpha, loops, DualGroup{}).verdict(), "OBSTRUCTED");
  EXPECT_EQ(existence_verdict(alpha, loops, DualGroup{DualGroupKind::Torus, Vec::Ones(1), {}}).verdict(), "OBSTRUCTED");
}

TEST(Period, FullTorusActionOnT4) {
  const Vec base = Vec::Constant(4, 0.5);
  const auto alpha = build_primitive(t4_system(base), abelian_pairing(2));
  Vec periods(2);
  periods << 1.0, std::numbers::sqrt2;
  const auto rep = existence_verdict(alpha, coordinate_loops(base), DualGroup{DualGroupKind::Torus, periods, {}});
  EXPECT_EQ(rep.verdict(), "EXISTS");
  EXPECT_EQ(existence_verdict(alpha, coordinate_loops(base), DualGroup{}).verdict(), "OBSTRUCTED");
}

TEST(Period, SymplecticTorus) {
  const Vec base = Vec::Constant(2, 0.3);
  const auto alpha = build_primitive(symplectic_torus_system(base), abelian_pairing(2));
  const auto loops = coordinate_loops(base);
  EXPECT_EQ(existence_verdict(alpha, loops, DualGroup{}).verdict(), "OBSTRUCTED");
  EXPECT_EQ(existence_verdict(alpha, loops, DualGroup{DualGroupKind::Torus, Vec::Ones(2), {}}).verdict(), "EXISTS");
}

TEST(Period, ReparametrizationInvariance) {
  const Vec base = Vec::Constant(4, 0.5);
  const auto alpha = build_primitive(t4_diagonal_circle(base), abelian_pairing(1));
  const LoopPath l = lattice_loop(base, unit(4, 3), Vec::Ones(4));
  for (double a : {-0.6, 0.3, 0.9}) {
    const double p0 = period_homomorphism(alpha, l, DualGroup{}).value(0, 0).real();
    const double p1 = period_homomorphism(alpha, reparametrize(l, a), DualGroup{}).value(0, 0).real();
    EXPECT_NEAR(p0, p1, 1e-8);
  }
  EXPECT_THROW(reparametrize(l, 1.5), Error);
}

TEST(Period, HomomorphismUnderConcatenation) {
  const Vec base = Vec::Constant(4, 0.5);
  const auto alpha = build_primitive(t4_diagonal_circle(base), abelian_pairing(1));
  const auto loops = coordinate_loops(base);
  const double both = period_homomorphism(alpha, concatenate(loops[1], loops[3]), DualGroup{}).value(0, 0).real();
  EXPECT_NEAR(both, 1.0 + std::numbers::sqrt2, 1e-8);
}

TEST(Period, OpenCurveIsRejected) {
  EXPECT_THROW(make_loop([](double t) { return Vec(Vec::Constant(2, t)); }), Error);
}

TEST(Period, StepTooLarge) {
  const Vec base = Vec::Constant(2, 0.3);
  const auto alpha = build_primitive(symplectic_torus_system(base), abelian_pairing(2));
  EXPECT_THROW(period_homomorphism(alpha, coordinate_loops(base)[0], DualGroup{}, 0.7), Error);
}

TEST(Period, MaurerCartanForAbelianPrimitive) {
  const Vec base = Vec::Constant(2, 0.3);
  const auto alpha = build_primitive(symplectic_torus_system(base), abelian_pairing(2));
  const std::vector<Vec> pts = {base, Vec::Constant(2, 0.8)};
  EXPECT_LT(maurer_cartan_residual(alpha, [](const Mat& a, const Mat&) { return Mat(0.0 * a); }, pts), 1e-8);
}

TEST(Period, IntegratedMomentumSolvesDefiningEquation) {
  Vec z(2);
  z << 0.1, 0.2;
  const auto sys = translation_system(z);
  const auto alpha = build_primitive(sys, abelian_pairing(2));
  const auto j = integrate_momentum(alpha, z);
  Vec m(2);
  m << 0.6, -0.3;
  // Differences of J match the closed-form momentum.
  EXPECT_LT(((j(m) - j(z)) - (sys.momentum(m) - sys.momentum(z))).norm(), 1e-8);
}
