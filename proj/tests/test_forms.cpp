#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "gvmm/fluid.hpp"
#include "gvmm/forms.hpp"
#include "gvmm/grid_io.hpp"

using namespace gvmm;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Random low-mode trigonometric form; spectral derivatives are exact on it.
FormField trig_form(const Grid& g, int degree, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> freq(-2, 2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FormField f = FormField::zero(g, degree);
  for (auto& comp : f.comps) {
    std::vector<int> k(static_cast<std::size_t>(g.dim()));
    for (auto& x : k) x = freq(rng);
    const double a = u(rng), b = u(rng), ph = u(rng);
    comp = sample(g, [&](const std::vector<double>& x) {
      double t = ph;
      for (std::size_t i = 0; i < x.size(); ++i) t += k[i] * kTwoPi / g.length[i] * x[i];
      return a * std::sin(t) + b * std::cos(2.0 * t) + 0.1;
    });
  }
  return f;
}

VectorFieldGrid trig_field(const Grid& g, unsigned seed) {
  return {g, trig_form(g, 1, seed).comps};
}

SectionGrid trig_section(const Grid& g, int d, unsigned seed) {
  SectionGrid s{g, FiberKind::Euclidean, {}};
  for (int i = 0; i < d; ++i) s.comps.push_back(trig_form(g, 0, seed + 17 * i).comps[0]);
  return s;
}

}  // namespace

TEST(Forms, MultiIndexCounts) {
  EXPECT_EQ(multi_indices(5, 2).size(), 10u);
  EXPECT_EQ(multi_indices(4, 4).size(), 1u);
  EXPECT_EQ(multi_index_position(4, {1, 3}), 4);
  EXPECT_EQ(multi_index_position(4, {3, 1}), -1);
}

TEST(Forms, SpectralDerivativeOfSine) {
  const Grid g({32}, {kTwoPi});
  const Array f = sample(g, [](const std::vector<double>& x) { return std::sin(3 * x[0]); });
  const Array df = sample(g, [](const std::vector<double>& x) { return 3 * std::cos(3 * x[0]); });
  EXPECT_LT((partial(g, f, 0) - df).abs().maxCoeff(), 1e-12);
}

TEST(Forms, SpectralShiftMatchesTranslation) {
  const Grid g({24, 16}, {kTwoPi, 3.0});
  auto f = [](double x, double y) { return std::cos(2 * x) * std::sin(kTwoPi * y / 3.0); };
  const Array a = sample(g, [&](const std::vector<double>& x) { return f(x[0], x[1]); });
  const Array s = spectral_shift(g, a, 0, 0.37);
  const Array expect = sample(g, [&](const std::vector<double>& x) { return f(x[0] - 0.37, x[1]); });
  EXPECT_LT((s - expect).abs().maxCoeff(), 1e-12);
  // Whole-node shifts agree with the index shift.
  EXPECT_LT((spectral_shift(g, a, 1, 3 * g.spacing(1)) - shift(g, a, {0, 3})).abs().maxCoeff(), 1e-12);
}

TEST(Forms, DSquaredVanishes) {
  const Grid g = Grid::cube(3, 12, kTwoPi);
  for (int k = 0; k <= 1; ++k)
    EXPECT_LT(exterior_derivative(exterior_derivative(trig_form(g, k, 3 + k))).max_abs(), 1e-11);
}

TEST(Forms, WedgeGradedCommutativity) {
  const Grid g = Grid::cube(4, 6, kTwoPi);
  const FormField a = trig_form(g, 1, 1), b = trig_form(g, 2, 2), c = trig_form(g, 1, 3);
  EXPECT_LT((wedge(a, b) - wedge(b, a)).max_abs(), 1e-12);
  EXPECT_LT((wedge(a, c) + wedge(c, a)).max_abs(), 1e-12);
  EXPECT_LT(wedge(a, a).max_abs(), 1e-12);
}

TEST(Forms, LeibnizRule) {
  // products reach mode 8 per axis, so the grid has to resolve that
  const Grid g = Grid::cube(3, 24, kTwoPi);
  const FormField a = trig_form(g, 1, 4), b = trig_form(g, 1, 5);
  const FormField lhs = exterior_derivative(wedge(a, b));
  const FormField rhs = wedge(exterior_derivative(a), b) - wedge(a, exterior_derivative(b));
  EXPECT_LT((lhs - rhs).max_abs(), 1e-10);
}

TEST(Forms, StokesOnTorus) {
  const Grid g = Grid::cube(3, 10, kTwoPi);
  EXPECT_NEAR(integrate_top(exterior_derivative(trig_form(g, 2, 6))), 0.0, 1e-10);
}

TEST(Forms, InteriorIsAntiderivation) {
  const Grid g = Grid::cube(3, 8, kTwoPi);
  const VectorFieldGrid x = trig_field(g, 7);
  const FormField a = trig_form(g, 1, 8), b = trig_form(g, 1, 9);
  const FormField lhs = interior(x, wedge(a, b));
  const FormField rhs = wedge(interior(x, a), b) - wedge(a, interior(x, b));
  EXPECT_LT((lhs - rhs).max_abs(), 1e-12);
}

TEST(Forms, VolumeIntegral) {
  const Grid g({8, 6, 4}, {1.0, 2.0, 3.0});
  EXPECT_NEAR(integrate_top(FormField::volume(g, 2.0)), 12.0, 1e-12);
}

TEST(Forms, DegreeChecks) {
  const Grid g = Grid::cube(2, 8, kTwoPi);
  EXPECT_THROW(exterior_derivative(FormField::volume(g)), Error);
  EXPECT_THROW(wedge(trig_form(g, 1, 1), FormField::volume(g)), Error);
  EXPECT_THROW(trig_form(g, 1, 1) + FormField::volume(g), Error);
}

class FiberIdentities : public ::testing::Test {
 protected:
  Grid base{{16, 16}, {kTwoPi, kTwoPi}};
  Grid prod = base.product(Grid({16}, {kTwoPi}));
  std::vector<int> over{2};
};

TEST_F(FiberIdentities, UpDown) {
  const FormField beta = trig_form(base, 1, 21), alpha = trig_form(prod, 2, 22);
  const FormField lhs = fiber_integrate(wedge(pull_back_base(beta, prod), alpha), over);
  EXPECT_LT((lhs - wedge(beta, fiber_integrate(alpha, over))).max_abs(), 1e-9);
}

TEST_F(FiberIdentities, CommutesWithD) {
  const FormField a = trig_form(prod, 1, 23);
  EXPECT_LT((fiber_integrate(exterior_derivative(a), over) - exterior_derivative(fiber_integrate(a, over))).max_abs(),
            1e-9);
}

TEST_F(FiberIdentities, VerticalContractionVanishes) {
  VectorFieldGrid y{prod, {Array::Zero(prod.size()), Array::Zero(prod.size()), trig_form(prod, 0, 24).comps[0]}};
  EXPECT_LT(fiber_integrate(interior(y, trig_form(prod, 2, 25)), over).max_abs(), 1e-9);
}

TEST_F(FiberIdentities, TranslationBehaviour) {
  const FormField a = trig_form(prod, 2, 26);
  EXPECT_LT((fiber_integrate(translate(a, {3, -5, 0}), over) - translate(fiber_integrate(a, over), {3, -5})).max_abs(),
            1e-9);
  EXPECT_LT((fiber_integrate(translate(a, {0, 0, 7}), over) - fiber_integrate(a, over)).max_abs(), 1e-9);
}

TEST_F(FiberIdentities, FiberAxesMustTrail) {
  EXPECT_THROW(fiber_integrate(trig_form(prod, 2, 27), {0}), Error);
}

TEST(Hat, SymplecticEvalIsBilinearAndSkew) {
  const Grid g({12, 12}, {kTwoPi, kTwoPi});
  const SectionGrid phi = trig_section(g, 2, 1), y1 = trig_section(g, 2, 2), y2 = trig_section(g, 2, 3);
  const TotalForm w = fiber_area_form(2);
  const FormField mu = FormField::volume(g);
  EXPECT_NEAR(hat_symplectic_eval(phi, y1, y2, w, mu), -hat_symplectic_eval(phi, y2, y1, w, mu), 1e-12);
  EXPECT_NEAR(hat_symplectic_eval(phi, y1, y1, w, mu), 0.0, 1e-12);
  // Oracle: int (y1_1 y2_2 - y1_2 y2_1) dx.
  const double direct = ((y1.comps[0] * y2.comps[1] - y1.comps[1] * y2.comps[0]).sum()) * g.cell_volume();
  EXPECT_NEAR(hat_symplectic_eval(phi, y1, y2, w, mu), direct, 1e-12);
}

TEST(Hat, ContractionWithBaseTranslation) {
  const Grid g({12, 12}, {kTwoPi, kTwoPi});
  const SectionGrid phi = trig_section(g, 2, 4), y1 = trig_section(g, 2, 5);
  const FormField alpha = trig_form(g, 1, 6);
  const TotalForm omega = TotalForm::from_components(4, 3, [](const Eigen::VectorXd& p) {
    return std::vector<double>{std::sin(p(0)) * p(3), 0.5 + p(2) * p(3), std::cos(p(1)) + p(2), 1.0 - 0.3 * p(3)};
  });
  for (int axis = 0; axis < 2; ++axis) {
    VectorFieldGrid e{g, {Array::Zero(g.size()), Array::Zero(g.size())}};
    e.comps[axis].setOnes();
    Eigen::VectorXd ev = Eigen::VectorXd::Zero(4);
    ev(axis) = 1.0;
    const double left = hat_product(alpha, omega, phi, {translation_generator(phi, axis), y1});
    const double right = hat_product(interior(e, alpha), omega, phi, {y1}) -
                         hat_product(alpha, omega.contract([ev](const Eigen::VectorXd&) { return ev; }), phi, {y1});
    EXPECT_NEAR(left, right, 1e-7);
  }
}

TEST(Hat, DegreeMismatch) {
  const Grid g({8, 8}, {kTwoPi, kTwoPi});
  const SectionGrid phi = trig_section(g, 2, 1);
  EXPECT_THROW(hat_product(FormField::volume(g), fiber_area_form(2), phi, {phi}), Error);
}

TEST(GridIo, CsvRoundTripIsExact) {
  const Grid g({4, 5, 3}, {1.0, kTwoPi, 0.5});
  const FormField f = trig_form(g, 2, 3);
  std::stringstream ss;
  write_form_csv(ss, f);
  const FormField back = read_form_csv(ss);
  EXPECT_EQ(back.grid, f.grid);
  EXPECT_EQ(back.degree, 2);
  EXPECT_EQ((back - f).max_abs(), 0.0);
}

TEST(GridIo, BinaryRoundTripIsExact) {
  const Grid g({6, 4}, {kTwoPi, 2.0});
  const FormField f = trig_form(g, 1, 4);
  std::stringstream ss;
  write_form_binary(ss, f);
  const FormField back = read_form_binary(ss);
  EXPECT_EQ(back.grid, f.grid);
  EXPECT_EQ((back - f).max_abs(), 0.0);
}

TEST(GridIo, MalformedInputIsRejected) {
  std::stringstream bad("sizes,4\nlengths,x\n");
  EXPECT_THROW(read_form_csv(bad), Error);
  std::stringstream junk("GVMX");
  EXPECT_THROW(read_form_binary(junk), Error);
  EXPECT_THROW(load_form("/nonexistent/dir/f.csv"), Error);
}

TEST(GridIo, SliceHasOneRowPerNode) {
  const Grid g({4, 3, 2}, {1.0, 1.0, 1.0});
  std::stringstream ss;
  write_slice_csv(ss, trig_form(g, 0, 1), 0, 0, 1, {0, 0, 1});
  int lines = 0;
  for (std::string l; std::getline(ss, l);) ++lines;
  EXPECT_GE(lines, 4);
}
