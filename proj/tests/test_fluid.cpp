#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gvmm/fluid.hpp"

using namespace gvmm;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kTorusVolume = std::pow(kTwoPi, 3);

Grid cube(int n) { return Grid::cube(3, n, kTwoPi); }

}  // namespace

TEST(Helicity, AbcSingleMode) {
  const double hel = helicity(abc_flow(cube(64), 1.0, 0.0, 0.0));
  EXPECT_NEAR(hel / kTorusVolume, 1.0, 1e-6);
}

TEST(Helicity, AbcIsBeltrami) {
  // curl v = v, so Hel = int |v|^2 = (A^2 + B^2 + C^2) vol.
  const double a = 0.7, b = -1.2, c = 0.4;
  const double hel = helicity(abc_flow(cube(32), a, b, c));
  EXPECT_NEAR(hel / kTorusVolume, a * a + b * b + c * c, 1e-9);
}

TEST(Helicity, QuadraticScaling) {
  const Grid g = cube(24);
  VectorFieldGrid v = abc_flow(g, 1.0, 0.5, 0.0);
  const double h = helicity(v);
  for (auto& c : v.comps) c *= -2.0;
  EXPECT_NEAR(helicity(v), 4.0 * h, 1e-9 * std::abs(h));
}

TEST(Helicity, GradientFieldsHaveNone) {
  const Grid g = cube(16);
  const Array f = sample(g, [](const std::vector<double>& x) { return std::sin(x[0] + 2 * x[1]) * std::cos(x[2]); });
  EXPECT_NEAR(helicity(exterior_derivative(FormField::scalar(g, f))), 0.0, 1e-10);
}

TEST(Helicity, NeedsThreeDimensions) {
  const Grid g({8, 8}, {kTwoPi, kTwoPi});
  EXPECT_THROW(helicity(FormField::zero(g, 1)), Error);
}

TEST(Clebsch, AbcTripleInterior) {
  const Grid g = cube(64);
  const ClebschTriple t = abc_clebsch_triple(g);
  const ClebschResidual r = clebsch_residual(abc_flow(g, 1.0, 0.0, 0.0), t.f, t.g, t.h);
  EXPECT_LT(r.interior, 1e-8);
  // The triple is not periodic, which the spectral check sees.
  EXPECT_GT(r.seam, 1.0);
}

TEST(Clebsch, TenthOrderDifferenceOnPolynomial) {
  const Grid g({32, 4, 4}, {3.0, 1.0, 1.0});
  const Array f = sample(g, [](const std::vector<double>& x) { return std::pow(x[0], 7) - 2 * x[0]; });
  const Array df = central_difference10(g, f, 0);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const auto node = g.node(i);
    if (node[0] < 5 || node[0] >= 27) continue;
    const double x = g.coords(i)[0];
    EXPECT_NEAR(df(i), 7 * std::pow(x, 6) - 2, 1e-8 * (1 + std::pow(x, 6)));
  }
}

TEST(Hopf, HelicityIsAnInteger) {
  const Grid g = cube(64);
  const HopfSample hs = hopf_sample(g, 2.5);
  const double hel = helicity(hs.theta * -1.0);
  EXPECT_NEAR(hel, std::round(hel), 1e-3);
  EXPECT_NE(std::round(hel), 0.0);
}

TEST(Hopf, MapLandsOnSphere) {
  Eigen::Vector4d z(0.3, -0.5, 0.1, 0.8);
  z.normalize();
  EXPECT_NEAR(hopf_map(z).norm(), 1.0, 1e-14);
  const HopfSample hs = hopf_sample(cube(16), 2.5);
  EXPECT_NO_THROW(SectionGrid(hs.phi).validate());
}

TEST(Hopf, GeneralizedClebschRepresentation) {
  const Grid g = cube(32);
  const HopfSample hs = hopf_sample(g, 2.5);
  const FormField v = hs.theta * -1.0;
  const VectorFieldGrid vf{g, v.comps};
  EXPECT_LT(generalized_clebsch_residual(vf, hs.phi, hs.theta, FormField::zero(g, 1)), 1e-12);
  FormField nu = FormField::zero(g, 1);
  nu.comps[0] = sample(g, [](const std::vector<double>& x) { return std::sin(x[1]); });
  EXPECT_THROW(generalized_clebsch_residual(vf, hs.phi, hs.theta, nu), Error);
}

TEST(Liouville, CircleInCotangentBundle) {
  auto theta = [](const Vec& z) {
    Vec t(2);
    t << z(1), 0.0;
    return t;
  };
  Vec lat(2);
  lat << kTwoPi, 0.0;
  for (double p : {0.0, 0.75, -2.0}) {
    const LoopPath l = make_loop([p](double t) {
      Vec z(2);
      z << kTwoPi * t, p;
      return z;
    }, kLoopSamples, lat);
    EXPECT_NEAR(liouville_class(l, theta), kTwoPi * p, 1e-9);
  }
}

TEST(Gauge, PushforwardOfRotationMomentum) {
  const Grid g = cube(8);
  SectionGrid phi{g, FiberKind::Euclidean, {}};
  phi.comps.push_back(sample(g, [](const std::vector<double>& x) { return std::cos(x[0]) + 0.3 * std::sin(x[1] + x[2]); }));
  phi.comps.push_back(sample(g, [](const std::vector<double>& x) { return std::sin(x[0]) * std::cos(x[2]) + 0.2; }));
  const auto gm = gauge_momentum_pushforward(phi, [](const Eigen::VectorXd& y) { return 0.5 * y.squaredNorm(); },
                                             FormField::volume(g));
  EXPECT_LT(gm.residual, 1e-5);
  const auto sys = grid_gauge_system(phi);
  EXPECT_LT(momentum_residual(sys, Mat::Ones(g.size(), 1), grid_gauge_pairing()), 1e-6);
  EXPECT_LT(momentum_residual_all(grid_translation_system(phi), grid_gauge_pairing()), 1e-6);
}

TEST(Quantomorphism, ClosedForm) {
  const Grid g({32, 32}, {kTwoPi, kTwoPi});
  SectionGrid phi{g, FiberKind::Complex, {}};
  phi.comps.push_back(sample(g, [](const std::vector<double>& x) { return std::cos(x[0]); }));
  phi.comps.push_back(sample(g, [](const std::vector<double>& x) { return std::sin(x[1]); }));
  for (int k : {0, 1, 3}) {
    const FormField j = quantomorphism_momentum(phi, k, FormField::volume(g));
    const Array oracle = sample(g, [k](const std::vector<double>& x) {
      const double c = std::cos(x[0]), s = std::sin(x[1]);
      return -2.0 * k * (c * c + s * s) - std::sin(x[0]) * std::cos(x[1]);
    });
    EXPECT_LT((j.comps[0] - oracle).abs().maxCoeff(), 1e-10) << k;
  }
}

TEST(Curvature, AbelianFieldStrength) {
  const Grid g({32, 32}, {kTwoPi, kTwoPi});
  Mat iu(1, 1);
  iu(0, 0) = cplx(0.0, 1.0);
  const AlgebraForm a = algebra_form(g, 1, {iu}, [&](std::size_t comp, Eigen::Index node) {
    return Mat(comp == 0 ? Mat(std::sin(g.coords(node)[1]) * iu) : Mat(0.0 * iu));
  });
  const AlgebraForm f = curvature_momentum(a, FormField::volume(g), 1);
  double err = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    err = std::max(err, std::abs(f.coeffs[0].comps[0](i) + std::cos(g.coords(i)[1])));
  EXPECT_LT(err, 1e-10);
}

TEST(Curvature, PureGaugeIsFlat) {
  const Grid g({24, 24}, {kTwoPi, kTwoPi});
  const auto basis = algebra_basis(Tag::su_n, 2);
  const GroupModel su{Tag::su_n, 2, false};
  std::vector<Mat> field;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const auto x = g.coords(i);
    field.push_back(su.exp(Mat(std::sin(x[0]) * basis[0] + 0.7 * std::cos(x[1]) * basis[1])));
  }
  EXPECT_LT(curvature_momentum(pure_gauge(g, basis, field), FormField::volume(g), 1).max_abs(), 1e-7);
}

TEST(Curvature, DegreeOverflow) {
  const Grid g({8, 8}, {kTwoPi, kTwoPi});
  Mat iu(1, 1);
  iu(0, 0) = cplx(0.0, 1.0);
  const AlgebraForm a = algebra_form(g, 1, {iu}, [&](std::size_t, Eigen::Index) { return Mat(0.0 * iu); });
  EXPECT_THROW(curvature_momentum(a, FormField::volume(g), 2), Error);
}
