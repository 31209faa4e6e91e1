#include "gvmm/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace gvmm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_dim(const Grid& g, int dim, const char* what) {
  if (g.dim() != dim) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " needs a grid of dimension " +
                                                                     std::to_string(dim));
}

void require_field(const VectorFieldGrid& v) {
  if (static_cast<int>(v.comps.size()) != v.grid.dim()) throw Error(ErrorCode::ShapeMismatch, "vector field size");
  for (const auto& c : v.comps)
    if (c.size() != v.grid.size()) throw Error(ErrorCode::ShapeMismatch, "vector field component size");
}

bool in_band(const Grid& g, Eigen::Index flat, int band) {
  auto idx = g.node(flat);
  for (int a = 0; a < g.dim(); ++a)
    if (idx[a] < band || idx[a] > g.n[a] - 1 - band) return false;
  return true;
}

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

/// 1 on [0, 0], 0 for s >= 1, smooth in s^2.
double cutoff(double s) {
  const double a = bump(1.0 - s * s), b = bump(s * s);
  return a + b > 0.0 ? a / (a + b) : 0.0;
}

/// Entrywise spectral derivative of a matrix field.
std::vector<Mat> mat_partial(const Grid& g, const std::vector<Mat>& field, int axis) {
  const Eigen::Index n = g.size();
  if (static_cast<Eigen::Index>(field.size()) != n) throw Error(ErrorCode::ShapeMismatch, "matrix field size");
  const Eigen::Index rows = field[0].rows(), cols = field[0].cols();
  std::vector<Mat> out(static_cast<std::size_t>(n), Mat::Zero(rows, cols));
  Array re(n), im(n);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index i = 0; i < n; ++i) {
        re(i) = field[i](r, c).real();
        im(i) = field[i](r, c).imag();
      }
      const Array dre = partial(g, re, axis), dim = partial(g, im, axis);
      for (Eigen::Index i = 0; i < n; ++i) out[i](r, c) = {dre(i), dim(i)};
    }
  return out;
}

/// Real least-squares coordinates against a fixed basis.
class Coordinates {
 public:
  explicit Coordinates(const std::vector<Mat>& basis) {
    if (basis.empty()) throw Error(ErrorCode::ShapeMismatch, "empty algebra basis");
    const Eigen::Index sz = basis[0].size();
    RMat m(2 * sz, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t b = 0; b < basis.size(); ++b) m.col(static_cast<Eigen::Index>(b)) = stack(basis[b]);
    qr_.compute(m);
  }
  Vec operator()(const Mat& x) const { return qr_.solve(stack(x)); }

 private:
  static Vec stack(const Mat& x) {
    const Eigen::Index sz = x.size();
    Vec v(2 * sz);
    for (Eigen::Index i = 0; i < sz; ++i) {
      v(i) = x(i).real();
      v(sz + i) = x(i).imag();
    }
    return v;
  }
  Eigen::ColPivHouseholderQR<RMat> qr_;
};

AlgebraForm from_matrix_components(const Grid& g, int degree, const std::vector<Mat>& basis,
                                   const std::vector<std::vector<Mat>>& values) {
  AlgebraForm out;
  out.grid = g;
  out.degree = degree;
  out.basis = basis;
  out.coeffs.assign(basis.size(), FormField::zero(g, degree));
  Coordinates coords(basis);
  for (std::size_t c = 0; c < values.size(); ++c)
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const Vec x = coords(values[c][i]);
      for (std::size_t b = 0; b < basis.size(); ++b) out.coeffs[b].comps[c](i) = x(static_cast<Eigen::Index>(b));
    }
  return out;
}

std::vector<Mat> inverse_field(const std::vector<Mat>& g) {
  std::vector<Mat> out;
  out.reserve(g.size());
  for (const auto& m : g) out.push_back(m.inverse());
  return out;
}

}  // namespace

FormField flat(const VectorFieldGrid& v, const std::vector<double>& metric) {
  require_field(v);
  if (!metric.empty() && static_cast<int>(metric.size()) != v.grid.dim())
    throw Error(ErrorCode::ShapeMismatch, "metric size");
  std::vector<Array> c = v.comps;
  if (!metric.empty())
    for (std::size_t a = 0; a < c.size(); ++a) c[a] *= metric[a];
  return FormField::one_form(v.grid, c);
}

double helicity(const FormField& a) {
  require_dim(a.grid, 3, "helicity");
  if (a.degree != 1) throw Error(ErrorCode::DegreeMismatch, "helicity of a non 1-form");
  return integrate_top(wedge(a, exterior_derivative(a)));
}

double helicity(const VectorFieldGrid& v, const std::vector<double>& metric) {
  require_dim(v.grid, 3, "helicity");
  return helicity(flat(v, metric));
}

VectorFieldGrid abc_flow(const Grid& g, double a, double b, double c) {
  require_dim(g, 3, "abc_flow");
  VectorFieldGrid v{g, {Array(g.size()), Array(g.size()), Array(g.size())}};
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const auto p = g.coords(i);
    const double x = p[0], y = p[1], z = p[2];
    v.comps[0](i) = a * std::sin(z) + c * std::cos(y);
    v.comps[1](i) = b * std::sin(x) + a * std::cos(z);
    v.comps[2](i) = c * std::sin(y) + b * std::cos(x);
  }
  return v;
}

ClebschTriple abc_clebsch_triple(const Grid& g) {
  require_dim(g, 3, "abc_clebsch_triple");
  ClebschTriple t{Array(g.size()), Array(g.size()), Array(g.size())};
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const auto p = g.coords(i);
    const double x = p[0], y = p[1], z = p[2];
    t.f(i) = y * std::sin(z) - x * std::cos(z);
    t.g(i) = z;
    t.h(i) = x * std::sin(z) + y * std::cos(z);
  }
  return t;
}

Array central_difference10(const Grid& g, const Array& f, int axis) {
  static constexpr double c[] = {5.0 / 6.0, -5.0 / 21.0, 5.0 / 84.0, -5.0 / 504.0, 1.0 / 1260.0};
  const int n = g.n[axis];
  if (n < 11) throw Error(ErrorCode::ShapeMismatch, "10th order stencil needs at least 11 nodes");
  const Eigen::Index s = g.stride(axis);
  const double h = g.spacing(axis);
  Array out = Array::Zero(f.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const int k = static_cast<int>((i / s) % n);
    const Eigen::Index base = i - k * s;
    double acc = 0.0;
    for (int m = 1; m <= 5; ++m) {
      const int up = (k + m) % n, dn = ((k - m) % n + n) % n;
      acc += c[m - 1] * (f(base + up * s) - f(base + dn * s));
    }
    out(i) = acc / h;
  }
  return out;
}

ClebschResidual clebsch_residual(const VectorFieldGrid& v, const Array& f, const Array& g, const Array& h, int band) {
  require_field(v);
  const Grid& gr = v.grid;
  for (const Array* a : {&f, &g, &h})
    if (a->size() != gr.size()) throw Error(ErrorCode::ShapeMismatch, "Clebsch potential size");
  ClebschResidual r;
  for (int a = 0; a < gr.dim(); ++a) {
    const Array fd = v.comps[a] - f * central_difference10(gr, g, a) - central_difference10(gr, h, a);
    const Array sp = v.comps[a] - f * partial(gr, g, a) - partial(gr, h, a);
    for (Eigen::Index i = 0; i < gr.size(); ++i)
      if (in_band(gr, i, band)) r.interior = std::max(r.interior, std::abs(fd(i)));
    r.seam = std::max(r.seam, sp.abs().maxCoeff());
  }
  return r;
}

double generalized_clebsch_residual(const VectorFieldGrid& v, const SectionGrid& phi, const FormField& phi_theta,
                                    const FormField& nu) {
  require_field(v);
  if (phi.grid != v.grid || phi_theta.grid != v.grid || nu.grid != v.grid)
    throw Error(ErrorCode::ShapeMismatch, "grids differ");
  if (phi_theta.degree != 1 || nu.degree != 1) throw Error(ErrorCode::DegreeMismatch, "expected 1-forms");
  phi.validate();
  const double dnu = exterior_derivative(nu).max_abs();
  if (dnu > 1e-9) throw Error(ErrorCode::NotClosedNu, "||d nu|| = " + std::to_string(dnu));
  return (flat(v) + phi_theta - nu).max_abs();
}

Eigen::Vector3d hopf_map(const Eigen::Vector4d& z) {
  const std::complex<double> z1(z(0), z(1)), z2(z(2), z(3));
  const std::complex<double> w = z1 * std::conj(z2);
  return {2.0 * w.real(), 2.0 * w.imag(), std::norm(z1) - std::norm(z2)};
}

HopfSample hopf_sample(const Grid& g, double radius) {
  require_dim(g, 3, "hopf_sample");
  for (int a = 0; a < 3; ++a)
    if (2.0 * radius >= g.length[a]) throw Error(ErrorCode::ShapeMismatch, "ball does not fit in the box");
  const Eigen::Index n = g.size();
  HopfSample out;
  out.psi = SectionGrid{g, FiberKind::Sphere, std::vector<Array>(4, Array(n))};
  out.phi = SectionGrid{g, FiberKind::Sphere, std::vector<Array>(3, Array(n))};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto p = g.coords(i);
    Eigen::Vector3d d(p[0] - g.length[0] / 2, p[1] - g.length[1] / 2, p[2] - g.length[2] / 2);
    const double r = d.norm();
    const double th = std::numbers::pi * cutoff(r / radius);
    const Eigen::Vector3d u = r > 0.0 ? Eigen::Vector3d(d / r) : Eigen::Vector3d(0, 0, 1);
    Eigen::Vector4d z(std::cos(th), std::sin(th) * u(0), std::sin(th) * u(1), std::sin(th) * u(2));
    z.normalize();
    const Eigen::Vector3d w = hopf_map(z);
    for (int c = 0; c < 4; ++c) out.psi.comps[c](i) = z(c);
    for (int c = 0; c < 3; ++c) out.phi.comps[c](i) = w(c);
  }
  std::vector<Array> th(3, Array::Zero(n));
  const auto& q = out.psi.comps;
  for (int a = 0; a < 3; ++a) {
    std::vector<Array> dq;
    for (const auto& c : q) dq.push_back(partial(g, c, a));
    th[a] = (q[0] * dq[1] - q[1] * dq[0] + q[2] * dq[3] - q[3] * dq[2]) / kTwoPi;
  }
  out.theta = FormField::one_form(g, th);
  return out;
}

double liouville_class(const LoopPath& loop, const std::function<Vec(const Vec&)>& theta) {
  if (loop.points.size() < 2) throw Error(ErrorCode::InsufficientSamples, "loop needs at least two samples");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < loop.points.size(); ++i) {
    Vec dp = loop.points[i + 1] - loop.points[i];
    for (Eigen::Index k = 0; k < loop.lattice.size() && k < dp.size(); ++k)
      if (loop.lattice(k) > 0.0) dp(k) -= loop.lattice(k) * std::round(dp(k) / loop.lattice(k));
    acc += theta(loop.points[i] + 0.5 * dp).dot(dp);
  }
  return acc;
}

TotalForm fiber_area_form(int base_dim) {
  TotalForm w;
  w.degree = 2;
  w.eval = [base_dim](const Eigen::VectorXd&, const std::vector<Eigen::VectorXd>& v) {
    const int m = base_dim;
    return v[0](m) * v[1](m + 1) - v[0](m + 1) * v[1](m);
  };
  return w;
}

Eigen::VectorXd rotation_generator(const Eigen::VectorXd& y) {
  if (y.size() != 2) throw Error(ErrorCode::ShapeMismatch, "rotation generator needs R^2");
  return Eigen::Vector2d(-y(1), y(0));
}

GaugeMomentum gauge_momentum_pushforward(const SectionGrid& phi, const std::function<double(const Eigen::VectorXd&)>& jbar,
                                         const FormField& mu, int tests, unsigned seed, double fd_step) {
  if (phi.fiber_dim() != 2) throw Error(ErrorCode::ShapeMismatch, "gauge momentum needs R^2 fibers");
  if (mu.grid != phi.grid) throw Error(ErrorCode::ShapeMismatch, "grids differ");
  const Grid& g = phi.grid;
  const Eigen::Index n = g.size();
  GaugeMomentum out;
  out.density.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.density(i) = jbar(phi.at(i));

  const TotalForm omega = fiber_area_form(g.dim());
  auto pair_j = [&](const Array& xi, const SectionGrid& s) {
    Array v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = xi(i) * jbar(s.at(i));
    return integrate_top(scale(mu, v));
  };
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < tests; ++t) {
    Array xi(n);
    SectionGrid y{g, FiberKind::Euclidean, {Array(n), Array(n)}};
    for (Eigen::Index i = 0; i < n; ++i) {
      xi(i) = u(rng);
      y.comps[0](i) = u(rng);
      y.comps[1](i) = u(rng);
    }
    SectionGrid xs = y;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::VectorXd r = rotation_generator(phi.at(i));
      xs.comps[0](i) = xi(i) * r(0);
      xs.comps[1](i) = xi(i) * r(1);
    }
    SectionGrid plus = phi, minus = phi;
    plus.kind = minus.kind = FiberKind::Euclidean;
    for (int c = 0; c < 2; ++c) {
      plus.comps[c] += fd_step * y.comps[c];
      minus.comps[c] -= fd_step * y.comps[c];
    }
    const double dj = (pair_j(xi, plus) - pair_j(xi, minus)) / (2.0 * fd_step);
    const double w = hat_symplectic_eval(phi, xs, y, omega, mu);
    out.residual = std::max(out.residual, std::abs(w + dj));
  }
  return out;
}

namespace {

Vec flatten(const SectionGrid& phi) {
  const Eigen::Index n = phi.grid.size();
  Vec m(phi.fiber_dim() * n);
  for (int c = 0; c < phi.fiber_dim(); ++c) m.segment(c * n, n) = phi.comps[c].matrix();
  return m;
}

RMat area_matrix(Eigen::Index n, double dv) {
  RMat w = RMat::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i, n + i) = dv;
    w(n + i, i) = -dv;
  }
  return w;
}

}  // namespace

PairingFn grid_gauge_pairing() {
  return [](const Mat& a, const Mat& mu) { return (a.array() * mu.array()).real().sum(); };
}

SymplecticSample grid_gauge_system(const SectionGrid& phi) {
  if (phi.fiber_dim() != 2) throw Error(ErrorCode::ShapeMismatch, "gauge system needs R^2 fibers");
  const Eigen::Index n = phi.grid.size();
  const double dv = phi.grid.cell_volume();
  SymplecticSample s;
  s.name = "gauge-rotation";
  s.point = flatten(phi);
  const RMat w = area_matrix(n, dv);
  s.omega = [w](const Vec&) { return w; };
  s.exp = [](const Mat& a) { return a; };
  s.action = [n](const Mat& g, const Vec& m) {
    Vec out = m;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double c = std::cos(g(i, 0).real()), sn = std::sin(g(i, 0).real());
      out(i) = c * m(i) - sn * m(n + i);
      out(n + i) = sn * m(i) + c * m(n + i);
    }
    return out;
  };
  s.inf_action = [n](const Mat& a, const Vec& m) {
    Vec out(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double xi = a(i, 0).real();
      out(i) = -xi * m(n + i);
      out(n + i) = xi * m(i);
    }
    return out;
  };
  s.momentum = [n, dv](const Vec& m) {
    Mat j(n, 1);
    for (Eigen::Index i = 0; i < n; ++i) j(i, 0) = 0.5 * dv * (m(i) * m(i) + m(n + i) * m(n + i));
    return j;
  };
  s.dual = DualKind::Additive;
  for (Eigen::Index i = 0; i < n; ++i) {
    Mat e = Mat::Zero(n, 1);
    e(i, 0) = 1.0;
    s.generators.push_back(e);
  }
  return s;
}

SymplecticSample grid_translation_system(const SectionGrid& phi) {
  if (phi.fiber_dim() != 2) throw Error(ErrorCode::ShapeMismatch, "translation system needs R^2 fibers");
  const Grid g = phi.grid;
  const Eigen::Index n = g.size();
  const int dim = g.dim();
  const double dv = g.cell_volume();
  SymplecticSample s;
  s.name = "base-translation";
  s.point = flatten(phi);
  const RMat w = area_matrix(n, dv);
  s.omega = [w](const Vec&) { return w; };
  s.exp = [](const Mat& a) { return a; };
  s.action = [g, n, dim](const Mat& t, const Vec& m) {
    Array a = m.head(n).array(), b = m.tail(n).array();
    for (int ax = 0; ax < dim; ++ax) {
      const double sh = t(ax, 0).real();
      if (sh == 0.0) continue;
      a = spectral_shift(g, a, ax, sh);
      b = spectral_shift(g, b, ax, sh);
    }
    Vec out(2 * n);
    out << a.matrix(), b.matrix();
    return out;
  };
  s.inf_action = [g, n, dim](const Mat& t, const Vec& m) {
    Vec out = Vec::Zero(2 * n);
    const Array a = m.head(n).array(), b = m.tail(n).array();
    for (int ax = 0; ax < dim; ++ax) {
      const double c = t(ax, 0).real();
      if (c == 0.0) continue;
      out.head(n) -= c * partial(g, a, ax).matrix();
      out.tail(n) -= c * partial(g, b, ax).matrix();
    }
    return out;
  };
  s.momentum = [g, n, dim, dv](const Vec& m) {
    const Array a = m.head(n).array(), b = m.tail(n).array();
    Mat j(dim, 1);
    for (int ax = 0; ax < dim; ++ax)
      j(ax, 0) = 0.5 * dv * (partial(g, a, ax) * b - partial(g, b, ax) * a).sum();
    return j;
  };
  s.dual = DualKind::Additive;
  for (int ax = 0; ax < dim; ++ax) {
    Mat e = Mat::Zero(dim, 1);
    e(ax, 0) = 1.0;
    s.generators.push_back(e);
  }
  return s;
}

FormField quantomorphism_momentum(const SectionGrid& phi, int k, const FormField& omega_base) {
  require_dim(phi.grid, 2, "quantomorphism_momentum");
  if (phi.kind != FiberKind::Complex || phi.fiber_dim() != 2)
    throw Error(ErrorCode::ShapeMismatch, "expected a complex section (re, im)");
  if (omega_base.grid != phi.grid || omega_base.degree != 2)
    throw Error(ErrorCode::DegreeMismatch, "omega must be a 2-form on the same grid");
  const Grid& g = phi.grid;
  const Array &re = phi.comps[0], &im = phi.comps[1];
  const Array rx = partial(g, re, 0), ix = partial(g, im, 0), ry = partial(g, re, 1), iy = partial(g, im, 1);
  FormField out = omega_base * 0.0;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const std::complex<double> px(rx(i), ix(i)), py(ry(i), iy(i));
    const std::complex<double> d = std::complex<double>(0.0, 0.5) * (px * std::conj(py) - py * std::conj(px));
    worst = std::max(worst, std::abs(d.imag()));
    const double mod2 = re(i) * re(i) + im(i) * im(i);
    out.comps[0](i) = -2.0 * k * mod2 * omega_base.comps[0](i) + d.real();
  }
  if (worst > 1e-12) throw Error(ErrorCode::NonRealOutput, "imaginary part " + std::to_string(worst));
  return out;
}

Mat AlgebraForm::value(std::size_t comp, Eigen::Index node) const {
  Mat m = Mat::Zero(basis[0].rows(), basis[0].cols());
  for (std::size_t b = 0; b < basis.size(); ++b) m += coeffs[b].comps[comp](node) * basis[b];
  return m;
}

double AlgebraForm::max_abs() const {
  double m = 0.0;
  for (std::size_t c = 0; c < multi_indices(grid.dim(), degree).size(); ++c)
    for (Eigen::Index i = 0; i < grid.size(); ++i) m = std::max(m, value(c, i).cwiseAbs().maxCoeff());
  return m;
}

Vec algebra_coordinates(const std::vector<Mat>& basis, const Mat& x) { return Coordinates(basis)(x); }

AlgebraForm algebra_form(const Grid& g, int degree, const std::vector<Mat>& basis,
                         const std::function<Mat(std::size_t comp, Eigen::Index node)>& values) {
  const std::size_t nc = multi_indices(g.dim(), degree).size();
  std::vector<std::vector<Mat>> v(nc);
  for (std::size_t c = 0; c < nc; ++c)
    for (Eigen::Index i = 0; i < g.size(); ++i) v[c].push_back(values(c, i));
  return from_matrix_components(g, degree, basis, v);
}

AlgebraForm curvature_momentum(const AlgebraForm& gamma, const FormField& sigma, int n) {
  if (gamma.degree != 1) throw Error(ErrorCode::DegreeMismatch, "connection must be a 1-form");
  if (n < 1) throw Error(ErrorCode::DegreeMismatch, "n must be positive");
  if (2 * n > gamma.grid.dim()) throw Error(ErrorCode::DegreeOverflow, "2n exceeds the base dimension");
  if (sigma.grid != gamma.grid || sigma.degree != 2) throw Error(ErrorCode::DegreeMismatch, "sigma must be a 2-form");
  const std::size_t nb = gamma.basis.size();
  Coordinates coords(gamma.basis);
  // structure constants f^a_{bc}
  std::vector<Vec> f(nb * nb);
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t c = 0; c < nb; ++c) {
      const Mat& x = gamma.basis[b];
      const Mat& y = gamma.basis[c];
      f[b * nb + c] = coords(x * y - y * x);
    }
  FormField power = FormField::scalar(gamma.grid, Array::Ones(gamma.grid.size()));
  for (int i = 1; i < n; ++i) power = wedge(power, sigma);

  AlgebraForm out;
  out.grid = gamma.grid;
  out.degree = 2 * n;
  out.basis = gamma.basis;
  for (std::size_t a = 0; a < nb; ++a) {
    FormField curv = exterior_derivative(gamma.coeffs[a]);
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t c = 0; c < nb; ++c) {
        const double s = f[b * nb + c](static_cast<Eigen::Index>(a));
        if (std::abs(s) < 1e-14) continue;
        curv = curv + wedge(gamma.coeffs[b], gamma.coeffs[c]) * (0.5 * s);
      }
    out.coeffs.push_back(wedge(curv, power));
  }
  return out;
}

AlgebraForm pure_gauge(const Grid& g, const std::vector<Mat>& basis, const std::vector<Mat>& gfield) {
  const auto inv = inverse_field(gfield);
  std::vector<std::vector<Mat>> v;
  for (int a = 0; a < g.dim(); ++a) {
    const auto d = mat_partial(g, gfield, a);
    std::vector<Mat> comp;
    for (std::size_t i = 0; i < gfield.size(); ++i) comp.push_back(inv[i] * d[i]);
    v.push_back(std::move(comp));
  }
  return from_matrix_components(g, 1, basis, v);
}

AlgebraForm gauge_transform(const AlgebraForm& gamma, const std::vector<Mat>& gfield) {
  if (gamma.degree != 1) throw Error(ErrorCode::DegreeMismatch, "connection must be a 1-form");
  const Grid& g = gamma.grid;
  const auto inv = inverse_field(gfield);
  std::vector<std::vector<Mat>> v;
  for (int a = 0; a < g.dim(); ++a) {
    const auto d = mat_partial(g, inv, a);
    std::vector<Mat> comp;
    for (Eigen::Index i = 0; i < g.size(); ++i)
      comp.push_back(gfield[i] * gamma.value(a, i) * inv[i] + gfield[i] * d[i]);
    v.push_back(std::move(comp));
  }
  return from_matrix_components(g, 1, gamma.basis, v);
}

AlgebraForm conjugate(const AlgebraForm& f, const std::vector<Mat>& gfield) {
  const auto inv = inverse_field(gfield);
  const std::size_t nc = multi_indices(f.grid.dim(), f.degree).size();
  std::vector<std::vector<Mat>> v(nc);
  for (std::size_t c = 0; c < nc; ++c)
    for (Eigen::Index i = 0; i < f.grid.size(); ++i) v[c].push_back(gfield[i] * f.value(c, i) * inv[i]);
  return from_matrix_components(f.grid, f.degree, f.basis, v);
}

}  // namespace gvmm
