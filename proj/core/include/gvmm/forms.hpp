#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gvmm/errors.hpp"

namespace gvmm {

using Array = Eigen::ArrayXd;

/// Uniform periodic grid over a flat torus; nodes are stored row-major (last axis fastest).
struct Grid {
  std::vector<int> n;
  std::vector<double> length;

  Grid() = default;
  Grid(std::vector<int> sizes, std::vector<double> lengths);
  static Grid cube(int dim, int size, double len);

  int dim() const { return static_cast<int>(n.size()); }
  Eigen::Index size() const;
  double spacing(int axis) const { return length[axis] / n[axis]; }
  double cell_volume() const;
  double volume() const;
  Eigen::Index stride(int axis) const;
  /// Node multi-index of a flat index.
  std::vector<int> node(Eigen::Index flat) const;
  /// Coordinates of a node.
  std::vector<double> coords(Eigen::Index flat) const;
  bool operator==(const Grid& o) const { return n == o.n && length == o.length; }
  bool operator!=(const Grid& o) const { return !(*this == o); }
  /// Grid made of the given axes of this one.
  Grid sub(const std::vector<int>& axes) const;
  /// This grid followed by the axes of `fiber`.
  Grid product(const Grid& fiber) const;
};

/// Strictly increasing multi-indices of length k in {0..dim-1}, lexicographic.
const std::vector<std::vector<int>>& multi_indices(int dim, int k);
/// Position of `idx` in multi_indices(dim, idx.size()); -1 if not strictly increasing.
int multi_index_position(int dim, const std::vector<int>& idx);

Array sample(const Grid& g, const std::function<double(const std::vector<double>&)>& f);
/// Spectral derivative along one axis (Nyquist mode dropped for even sizes).
Array partial(const Grid& g, const Array& f, int axis);
/// Trigonometric-interpolant translation: result(x) = f(x - s e_axis) for real s.
Array spectral_shift(const Grid& g, const Array& f, int axis, double s);
/// Periodic shift: result(x) = f(x - s h) for integer node offsets s.
Array shift(const Grid& g, const Array& f, const std::vector<int>& offset);

struct FormField {
  Grid grid;
  int degree = 0;
  /// One array per multi-index in multi_indices(dim, degree).
  std::vector<Array> comps;

  static FormField zero(const Grid& g, int k);
  static FormField scalar(const Grid& g, Array f);
  /// 1-form sum_a f_a dx^a.
  static FormField one_form(const Grid& g, const std::vector<Array>& f);
  /// c dx^0 ^ ... ^ dx^{dim-1}.
  static FormField volume(const Grid& g, double c = 1.0);

  Array& operator[](const std::vector<int>& idx);
  const Array& operator[](const std::vector<int>& idx) const;
  FormField operator+(const FormField& o) const;
  FormField operator-(const FormField& o) const;
  FormField operator*(double s) const;
  /// Max over components and nodes of |value|.
  double max_abs() const;
};

FormField exterior_derivative(const FormField& f);
/// Bourbaki (shuffle sum) wedge product.
FormField wedge(const FormField& a, const FormField& b);
/// Pointwise product with a scalar field.
FormField scale(const FormField& f, const Array& s);
double integrate_top(const FormField& f);

struct VectorFieldGrid {
  Grid grid;
  std::vector<Array> comps;
};

FormField interior(const VectorFieldGrid& x, const FormField& a);
/// Pull-back by the translation x -> x + s h (integer node offsets).
FormField translate(const FormField& f, const std::vector<int>& offset);

/// Integrate over the trailing axes `over` of a product grid; throws LayoutMismatch otherwise.
FormField fiber_integrate(const FormField& f, const std::vector<int>& over);
/// pi^* beta from the base grid to base x fiber.
FormField pull_back_base(const FormField& beta, const Grid& product);
/// Vector field on the base lifted as X x 0_F.
VectorFieldGrid lift_base_field(const VectorFieldGrid& x, const Grid& product);

enum class FiberKind { Euclidean, Sphere, Complex };

/// Map from the grid to fiber coordinates.
struct SectionGrid {
  Grid grid;
  FiberKind kind = FiberKind::Euclidean;
  std::vector<Array> comps;

  int fiber_dim() const { return static_cast<int>(comps.size()); }
  /// Throws ConstraintViolation unless sphere-valued sections have unit norm within 1e-12.
  void validate() const;
  Eigen::VectorXd at(Eigen::Index node) const;
};

/// Differential form on the total space M x R^d of a trivial bundle, given by its evaluator.
struct TotalForm {
  int degree = 0;
  std::function<double(const Eigen::VectorXd& point, const std::vector<Eigen::VectorXd>& vectors)> eval;

  /// Form with coefficient functions per multi-index of the total dimension.
  static TotalForm from_components(int total_dim, int degree,
                                   std::function<std::vector<double>(const Eigen::VectorXd&)> coeffs);
  /// v contracted into the first slot.
  TotalForm contract(std::function<Eigen::VectorXd(const Eigen::VectorXd&)> v) const;
  /// Pull-back by an affine map p -> a + L p.
  TotalForm pull_back(const Eigen::VectorXd& a, const Eigen::MatrixXd& l) const;
};

/// (alpha ^ omega)_phi(Y_1..Y_r) = (-1)^{kr} int_M alpha ^ phi^*(Y_r _| ... Y_1 _| omega o phi).
double hat_product(const FormField& alpha, const TotalForm& omega, const SectionGrid& phi,
                   const std::vector<SectionGrid>& ys);
/// int_M omega_phi(Y1, Y2) mu for a fiber 2-form.
double hat_symplectic_eval(const SectionGrid& phi, const SectionGrid& y1, const SectionGrid& y2,
                           const TotalForm& omega, const FormField& mu);

/// Section shifted on the base and mapped by a constant fiber matrix: R phi(x - s h).
SectionGrid transform_section(const SectionGrid& phi, const std::vector<int>& offset, const Eigen::MatrixXd& r);
/// -d_a phi, the vertical generator of the base translation along axis a.
SectionGrid translation_generator(const SectionGrid& phi, int axis);

}  // namespace gvmm
