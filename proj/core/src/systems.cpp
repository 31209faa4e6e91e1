#include "gvmm/systems.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace gvmm {

namespace {

RMat std_omega2() {
  RMat w(2, 2);
  w << 0, 1, -1, 0;
  return w;
}

Mat diag(std::initializer_list<double> v) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

Vec flatten(const RMat& x) { return Eigen::Map<const Vec>(x.data(), x.size()); }
RMat unflatten(const Vec& v, Eigen::Index n) { return Eigen::Map<const RMat>(v.data(), n, n); }


// omega(X, Y) = tr(X^T J Y) on column-major vec(X): block diagonal with J.
RMat matrix_space_omega(Eigen::Index side) {
  const RMat j = standard_J(static_cast<int>(side / 2));
  RMat w = RMat::Zero(side * side, side * side);
  for (Eigen::Index c = 0; c < side; ++c) w.block(c * side, c * side, side, side) = j;
  return w;
}

Vec coeffs(const Mat& m) {
  Vec c(3);
  c << m(0, 0).real(), 0.5 * (m(0, 1) + m(1, 0)).real(), 0.5 * (m(0, 1) - m(1, 0)).real();
  return c;
}

Mat from_coeffs(const Vec& c) {
  Mat m(2, 2);
  m << c(0), c(1) + c(2), c(1) - c(2), -c(0);
  return m;
}

Vec orbit_coeffs(OrbitKind kind, double lambda, const Vec& u) {
  Vec c(3);
  switch (kind) {
    case OrbitKind::elliptic: {
      const double s = lambda >= 0 ? 1.0 : -1.0;
      c << u(0), u(1), s * std::sqrt(lambda * lambda + u(0) * u(0) + u(1) * u(1));
      break;
    }
    case OrbitKind::hyperbolic: {
      const double r = std::sqrt(lambda * lambda + u(1) * u(1));
      c << r * std::cos(u(0)), r * std::sin(u(0)), u(1);
      break;
    }
    case OrbitKind::parabolic_plus:
    case OrbitKind::parabolic_minus: {
      const double s = kind == OrbitKind::parabolic_plus ? 1.0 : -1.0;
      c << u(0), u(1), s * std::hypot(u(0), u(1));
      break;
    }
    case OrbitKind::zero:
      throw Error(ErrorCode::ZeroElement, "no chart for the zero orbit");
  }
  return c;
}

Vec orbit_chart_inverse(OrbitKind kind, const Vec& c) {
  Vec u(2);
  if (kind == OrbitKind::hyperbolic)
    u << std::atan2(c(1), c(0)), c(2);
  else
    u << c(0), c(1);
  return u;
}

// 3x2 Jacobian of the chart, fourth order differences.
RMat orbit_jacobian(OrbitKind kind, double lambda, const Vec& u) {
  const double h = 1e-4;
  RMat d(3, 2);
  for (int i = 0; i < 2; ++i) {
    Vec e = Vec::Zero(2);
    e(i) = h;
    d.col(i) = (-orbit_coeffs(kind, lambda, u + 2 * e) + 8 * orbit_coeffs(kind, lambda, u + e) -
                8 * orbit_coeffs(kind, lambda, u - e) + orbit_coeffs(kind, lambda, u - 2 * e)) /
               (12 * h);
  }
  return d;
}

// Matrix of B -> [B, nu] on coefficient space.
RMat bracket_matrix(const Mat& nu) {
  const auto basis = algebra_basis(Tag::sl2R, 2);
  RMat m(3, 3);
  for (int j = 0; j < 3; ++j) m.col(j) = coeffs(commutator(basis[j], nu));
  return m;
}

}  // namespace

SymplecticSample translation_system(const Vec& point, double factor) {
  SymplecticSample s;
  s.name = "translation";
  s.point = point;
  s.omega = [](const Vec&) { return std_omega2(); };
  s.exp = [](const Mat& a) { return a; };
  s.action = [](const Mat& g, const Vec& m) { return Vec(m + g.diagonal().real()); };
  s.inf_action = [](const Mat& a, const Vec&) { return Vec(a.diagonal().real()); };
  // omega(v, e1) = -v2, omega(v, e2) = v1
  s.momentum = [factor](const Vec& v) { return Mat(factor * diag({-v(1), v(0)})); };
  s.generators = algebra_basis(Tag::rn, 2);
  return s;
}

SymplecticSample symplectic_torus_system(const Vec& point) {
  SymplecticSample s = translation_system(point);
  s.name = "symplectic-torus";
  s.dual = DualKind::Torus;
  s.torus_periods = Vec::Ones(2);
  s.action = [](const Mat& g, const Vec& m) {
    Vec r = m + g.diagonal().real();
    return Vec(r.array() - r.array().floor());
  };
  s.momentum = [](const Vec& v) {
    Vec w = v.array() - v.array().floor();
    return diag({-w(1), w(0)});
  };
  s.in_chart = [](const Vec& v) {
    Vec w = v.array() - v.array().floor();
    return (w.array() > 0.05).all() && (w.array() < 0.95).all();
  };
  return s;
}

DualPairing matrix_pair_pairing(Tag tag, int size) { return trace_pairing(tag, size, -0.5); }

SymplecticSample matrix_sp_system(const RMat& x) {
  const Eigen::Index side = x.rows();
  SymplecticSample s;
  s.name = "matrix-sp";
  s.point = flatten(x);
  const RMat w = matrix_space_omega(side);
  const RMat j = standard_J(static_cast<int>(side / 2));
  s.omega = [w](const Vec&) { return w; };
  s.action = [side](const Mat& g, const Vec& m) { return flatten(g.real() * unflatten(m, side)); };
  s.inf_action = [side](const Mat& a, const Vec& m) { return flatten(a.real() * unflatten(m, side)); };
  s.momentum = [side, j](const Vec& m) {
    const RMat xm = unflatten(m, side);
    return Mat(RMat(-xm * xm.transpose() * j).cast<cplx>());
  };
  s.generators = algebra_basis(Tag::sp2nR, static_cast<int>(side));
  return s;
}

SymplecticSample matrix_o_system(const RMat& x) {
  const Eigen::Index side = x.rows();
  SymplecticSample s = matrix_sp_system(x);
  s.name = "matrix-o";
  const RMat j = standard_J(static_cast<int>(side / 2));
  s.action = [side](const Mat& g, const Vec& m) {
    return flatten(unflatten(m, side) * g.real().inverse());
  };
  s.inf_action = [side](const Mat& a, const Vec& m) { return flatten(-unflatten(m, side) * a.real()); };
  s.momentum = [side, j](const Vec& m) {
    const RMat xm = unflatten(m, side);
    return Mat(RMat(xm.transpose() * j * xm).cast<cplx>());
  };
  s.generators = algebra_basis(Tag::o_n, static_cast<int>(side));
  return s;
}

Mat kks_orbit_point(OrbitKind kind, double lambda, const Vec& chart_point) {
  return from_coeffs(orbit_coeffs(kind, lambda, chart_point));
}

SymplecticSample kks_orbit_system(OrbitKind kind, double lambda, const Vec& chart_point) {
  SymplecticSample s;
  s.name = std::string("kks-") + orbit_kind_name(kind);
  s.point = chart_point;
  const DualPairing kappa = killing_sl2R();
  s.omega = [kind, lambda, kappa](const Vec& u) {
    const Mat nu = kks_orbit_point(kind, lambda, u);
    const RMat d = orbit_jacobian(kind, lambda, u);
    Eigen::CompleteOrthogonalDecomposition<RMat> cod(bracket_matrix(nu));
    std::vector<Mat> b;
    for (int i = 0; i < 2; ++i) b.push_back(from_coeffs(cod.solve(Vec(d.col(i)))));
    RMat w(2, 2);
    w(0, 0) = w(1, 1) = 0.0;
    w(0, 1) = kks_form(nu, b[0], b[1], kappa);
    w(1, 0) = -w(0, 1);
    return w;
  };
  s.action = [kind, lambda](const Mat& g, const Vec& u) {
    const Mat nu = kks_orbit_point(kind, lambda, u);
    return orbit_chart_inverse(kind, coeffs(g * nu * g.inverse()));
  };
  s.inf_action = [kind, lambda](const Mat& a, const Vec& u) {
    const Mat nu = kks_orbit_point(kind, lambda, u);
    const RMat d = orbit_jacobian(kind, lambda, u);
    return Vec(d.completeOrthogonalDecomposition().solve(coeffs(commutator(a, nu))));
  };
  s.momentum = [kind, lambda](const Vec& u) { return Mat(-kks_orbit_point(kind, lambda, u)); };
  s.generators = algebra_basis(Tag::sl2R, 2);
  if (kind == OrbitKind::parabolic_plus || kind == OrbitKind::parabolic_minus)
    s.in_chart = [](const Vec& u) { return std::hypot(u(0), u(1)) > 1e-3; };
  return s;
}

SymplecticSample oscillator_system(const Vec& point) {
  SymplecticSample s;
  s.name = "oscillator";
  s.point = point;
  s.omega = [](const Vec&) { return std_omega2(); };
  s.action = [](const Mat& g, const Vec& m) { return Vec(g.real() * m); };
  s.inf_action = [](const Mat& a, const Vec& m) { return Vec(a.real() * m); };
  s.momentum = [](const Vec& m) {
    return Mat(0.5 * m.squaredNorm() * algebra_basis(Tag::so2, 2)[0]);
  };
  s.generators = algebra_basis(Tag::so2, 2);
  return s;
}

SymplecticSample sheared_oscillator_system(const Vec& point) {
  SymplecticSample s;
  s.name = "sheared-oscillator";
  s.point = point;
  s.dual = DualKind::MatrixGroup;
  s.omega = [](const Vec&) { return std_omega2(); };
  auto to_qp = [](const Vec& w) {
    Vec z(2);
    z << w(0), w(1) - w(0) * w(0) * w(0);
    return z;
  };
  auto to_w = [](const Vec& z) {
    Vec w(2);
    w << z(0), z(1) + z(0) * z(0) * z(0);
    return w;
  };
  s.action = [to_qp, to_w](const Mat& g, const Vec& w) { return to_w(g.real() * to_qp(w)); };
  s.inf_action = [to_qp](const Mat& a, const Vec& w) {
    const Vec z = to_qp(w);
    const Vec dz = a.real() * z;
    Vec dw(2);
    dw << dz(0), dz(1) + 3 * z(0) * z(0) * dz(0);
    return dw;
  };
  s.momentum = [to_qp](const Vec& w) {
    Mat j(1, 1);
    j(0, 0) = std::exp(0.5 * to_qp(w).squaredNorm());
    return j;
  };
  s.generators = algebra_basis(Tag::so2, 2);
  return s;
}

PairingFn sheared_pairing() {
  return [](const Mat& a, const Mat& mu) { return -(a(0, 1) * mu(0, 0)).real(); };
}

Hamiltonian sheared_oscillator_hamiltonian() {
  Hamiltonian h;
  h.value = [](const Vec& w) {
    const double p = w(1) - w(0) * w(0) * w(0);
    return 0.5 * (w(0) * w(0) + p * p);
  };
  h.gradient = [](const Vec& w) {
    const double p = w(1) - w(0) * w(0) * w(0);
    Vec g(2);
    g << w(0) - 3 * w(0) * w(0) * p, p;
    return g;
  };
  return h;
}

SymplecticSample circle_t2_system(const Vec& point) {
  SymplecticSample s;
  s.name = "circle-t2";
  s.point = point;
  s.dual = DualKind::Torus;
  s.torus_periods = Vec::Ones(1);
  s.omega = [](const Vec&) { return std_omega2(); };
  s.exp = [](const Mat& a) { return a; };
  s.action = [](const Mat& g, const Vec& m) {
    Vec r = m;
    r(0) -= g(0, 0).real();
    return r;
  };
  s.inf_action = [](const Mat& a, const Vec&) {
    Vec v(2);
    v << -a(0, 0).real(), 0.0;
    return v;
  };
  s.momentum = [](const Vec& m) {
    Mat j(1, 1);
    j(0, 0) = m(1) - std::floor(m(1));
    return j;
  };
  s.generators = {Mat::Ones(1, 1)};
  return s;
}

SymplecticSample t4_system(const Vec& point) {
  const double r2 = std::numbers::sqrt2;
  SymplecticSample s;
  s.name = "t4";
  s.point = point;
  s.dual = DualKind::Torus;
  s.torus_periods.resize(2);
  s.torus_periods << 1.0, r2;
  RMat w = RMat::Zero(4, 4);
  w(0, 1) = 1.0;
  w(1, 0) = -1.0;
  w(2, 3) = r2;
  w(3, 2) = -r2;
  s.omega = [w](const Vec&) { return w; };
  s.exp = [](const Mat& a) { return a; };
  s.action = [](const Mat& g, const Vec& m) {
    Vec r = m;
    r(0) -= g(0, 0).real();
    r(2) -= g(1, 1).real();
    return r;
  };
  s.inf_action = [](const Mat& a, const Vec&) {
    Vec v = Vec::Zero(4);
    v(0) = -a(0, 0).real();
    v(2) = -a(1, 1).real();
    return v;
  };
  s.momentum = [r2](const Vec& m) { return diag({m(1), r2 * m(3)}); };
  s.generators = algebra_basis(Tag::rn, 2);
  s.in_chart = [](const Vec& m) {
    Vec f = m.array() - m.array().floor();
    return (f.array() > 0.05).all() && (f.array() < 0.95).all();
  };
  return s;
}

SymplecticSample t4_diagonal_circle(const Vec& point) {
  SymplecticSample s = t4_system(point);
  s.name = "t4-diagonal";
  s.generators = {Mat::Ones(1, 1)};
  s.action = [](const Mat& g, const Vec& m) {
    Vec r = m;
    r(0) -= g(0, 0).real();
    r(2) -= g(0, 0).real();
    return r;
  };
  s.inf_action = [](const Mat& a, const Vec&) {
    Vec v = Vec::Zero(4);
    v(0) = v(2) = -a(0, 0).real();
    return v;
  };
  s.momentum = nullptr;
  s.dual = DualKind::Additive;
  s.torus_periods = Vec();
  return s;
}

SymplecticSample quartic_system(const Vec& point) {
  SymplecticSample s;
  s.name = "quartic";
  s.point = point;
  const RMat w = standard_J(2);
  s.omega = [w](const Vec&) { return w; };
  s.exp = [](const Mat& a) { return a; };
  s.action = [](const Mat& g, const Vec& m) {
    Vec r = m;
    r(0) -= g(0, 0).real();
    r(1) -= g(0, 0).real();
    return r;
  };
  s.inf_action = [](const Mat& a, const Vec&) {
    Vec v = Vec::Zero(4);
    v(0) = v(1) = -a(0, 0).real();
    return v;
  };
  s.momentum = [](const Vec& m) {
    Mat j(1, 1);
    j(0, 0) = m(2) + m(3);
    return j;
  };
  s.generators = {Mat::Ones(1, 1)};
  return s;
}

Hamiltonian quartic_hamiltonian() {
  Hamiltonian h;
  h.value = [](const Vec& z) {
    const double d = z(0) - z(1);
    return 0.5 * (z(2) * z(2) + z(3) * z(3)) + d * d * d * d;
  };
  h.gradient = [](const Vec& z) {
    const double d = z(0) - z(1);
    Vec g(4);
    g << 4 * d * d * d, -4 * d * d * d, z(2), z(3);
    return g;
  };
  return h;
}

Hamiltonian kahler_hamiltonian(int n) {
  const RMat j = standard_J(n);
  const Eigen::Index side = 2 * n;
  Hamiltonian h;
  h.value = [j, side](const Vec& v) {
    const RMat x = unflatten(v, side);
    return 0.25 * (x.transpose() * j * x).squaredNorm();
  };
  // dH(Y) = <J_O, X^T J Y>  =>  grad = J^T X J_O
  h.gradient = [j, side](const Vec& v) {
    const RMat x = unflatten(v, side);
    const RMat jo = x.transpose() * j * x;
    return flatten(j.transpose() * x * jo);
  };
  return h;
}

SymplecticSample linear_sl2_system(const Vec& point) {
  SymplecticSample s = oscillator_system(point);
  s.name = "linear-sl2";
  s.generators = algebra_basis(Tag::sl2R, 2);
  // sl(2,R) = sp(2,R): the quadratic momentum -1/2 z z^T J read through -1/2 tr.
  const RMat j = standard_J(1);
  s.momentum = [j](const Vec& z) { return Mat(RMat(-z * z.transpose() * j).cast<cplx>()); };
  return s;
}

}  // namespace gvmm
