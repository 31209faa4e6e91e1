#include "gvmm/period.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gvmm {

namespace {

double wrap(double d, double period) { return period > 0.0 ? d - period * std::round(d / period) : d; }

Vec wrapped_diff(const Vec& a, const Vec& b, const Vec& lattice) {
  Vec d = a - b;
  if (lattice.size() == d.size())
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = wrap(d(i), lattice(i));
  return d;
}

Mat project(const Mat& eta, const GroupModel& model) {
  switch (model.tag) {
    case Tag::un:
    case Tag::su_n:
    case Tag::o_n:
    case Tag::so2: {
      Eigen::JacobiSVD<Mat> svd(eta, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Mat p = svd.matrixU() * svd.matrixV().adjoint();
      if (model.tag == Tag::su_n) p /= std::pow(p.determinant(), 1.0 / double(p.rows()));
      return p;
    }
    case Tag::sl2R:
    case Tag::sl_nC:
    case Tag::b_n: {
      const cplx d = eta.determinant();
      return eta / std::pow(d, 1.0 / double(eta.rows()));
    }
    default:
      return eta;
  }
}

}  // namespace

PrimitiveForm build_primitive(const SymplecticSample& sys, const DualPairing& pairing) {
  const auto& basis = pairing.basis_left();
  auto alpha = [sys, pairing](const Vec& m, const Vec& x) {
    const RMat w = sys.omega(m);
    const auto& bl = pairing.basis_left();
    Vec rhs(static_cast<Eigen::Index>(bl.size()));
    for (std::size_t i = 0; i < bl.size(); ++i)
      rhs(static_cast<Eigen::Index>(i)) = x.dot(w * sys.inf_action(bl[i], m));
    return pairing.solve_right(rhs);
  };
  PrimitiveForm p;
  p.alpha = alpha;
  p.dim = static_cast<int>(sys.point.size());
  const RMat w = sys.omega(sys.point);
  std::vector<Mat> gens = sys.generators.empty() ? basis : sys.generators;
  for (Eigen::Index i = 0; i < sys.point.size(); ++i) {
    Vec x = Vec::Zero(sys.point.size());
    x(i) = 1.0;
    const Mat a = alpha(sys.point, x);
    for (const Mat& g : gens)
      p.defining_residual =
          std::max(p.defining_residual, std::abs(pairing(g, a) - x.dot(w * sys.inf_action(g, sys.point))));
  }
  if (p.defining_residual > 1e-8)
    throw Error(ErrorCode::NoSolution, sys.name + ": no 1-form satisfies the defining relation (defect " +
                                           std::to_string(p.defining_residual) + ")");
  return p;
}

LoopPath make_loop(const std::function<Vec(double)>& curve, int samples, Vec lattice) {
  if (samples < 2) throw Error(ErrorCode::InsufficientSamples, "loop needs at least 2 samples");
  LoopPath l;
  l.lattice = std::move(lattice);
  l.curve = curve;
  for (int i = 0; i <= samples; ++i) {
    const double t = double(i) / samples;
    l.t.push_back(t);
    l.points.push_back(curve(t));
  }
  const Vec gap = wrapped_diff(l.points.back(), l.points.front(), l.lattice);
  if (gap.norm() > 1e-12 * std::max(1.0, l.points.front().norm()))
    throw Error(ErrorCode::ConstraintViolation, "loop is not closed (gap " + std::to_string(gap.norm()) + ")");
  return l;
}

LoopPath lattice_loop(const Vec& base, const Vec& winding, const Vec& lattice, int samples) {
  const Vec step = winding.cwiseProduct(lattice);
  return make_loop([base, step](double t) { return Vec(base + t * step); }, samples, lattice);
}

std::pair<Vec, Vec> loop_eval(const LoopPath& loop, double t) {
  if (loop.curve) {
    constexpr double h = 1e-4;
    const Vec v = (8.0 * (loop.curve(t + h) - loop.curve(t - h)) - (loop.curve(t + 2 * h) - loop.curve(t - 2 * h))) /
                  (12.0 * h);
    return {loop.curve(t), v};
  }
  const std::size_t n = loop.t.size() - 1;
  std::size_t k = static_cast<std::size_t>(std::upper_bound(loop.t.begin(), loop.t.end(), t) - loop.t.begin());
  k = std::clamp<std::size_t>(k, 1, n) - 1;
  const double dt = loop.t[k + 1] - loop.t[k];
  const Vec v = (loop.points[k + 1] - loop.points[k]) / dt;
  return {loop.points[k] + (t - loop.t[k]) * v, v};
}

LoopPath reparametrize(const LoopPath& loop, double a) {
  if (std::abs(a) >= 1.0) throw Error(ErrorCode::ConstraintViolation, "reparametrization must be monotone");
  const int n = static_cast<int>(loop.t.size()) - 1;
  return make_loop(
      [loop, a](double t) {
        return loop_eval(loop, t + a * std::sin(2 * std::numbers::pi * t) / (2 * std::numbers::pi)).first;
      },
      n, loop.lattice);
}

LoopPath concatenate(const LoopPath& a, const LoopPath& b) {
  LoopPath l;
  l.lattice = a.lattice;
  const Vec shift = a.points.back() - b.points.front();
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    l.t.push_back(0.5 * a.t[i]);
    l.points.push_back(a.points[i]);
  }
  for (std::size_t i = 1; i < b.t.size(); ++i) {
    l.t.push_back(0.5 + 0.5 * b.t[i]);
    l.points.push_back(b.points[i] + shift);
  }
  if (a.curve && b.curve) {
    // each half slowed to rest at the junction so the stencil in loop_eval does not see a kink
    const auto ease = [](double s) { return s - std::sin(2 * std::numbers::pi * s) / (2 * std::numbers::pi); };
    const auto ca = a.curve, cb = b.curve;
    const Vec off = ca(1.0) - cb(0.0);
    l.curve = [ca, cb, off, ease](double t) -> Vec {
      return t < 0.5 ? Vec(ca(ease(2 * t))) : Vec(cb(ease(2 * t - 1)) + off);
    };
  }
  return l;
}

PeriodValue integrate_log_derivative(const std::function<Mat(double)>& a, const DualGroup& group, double dt,
                                     int size) {
  if (!(dt > 0.0) || dt > 0.5) throw Error(ErrorCode::StepTooLarge, "dt must lie in (0, 0.5]");
  const int steps = static_cast<int>(std::llround(1.0 / dt));
  const double h = 1.0 / steps;
  const bool matrix = group.kind == DualGroupKind::Matrix;
  Mat eta = matrix ? Mat(Mat::Identity(size, size)) : Mat(Mat::Zero(size, size));
  PeriodValue out;
  for (int s = 0; s < steps; ++s) {
    const double t = s * h;
    const Mat a1 = a(t), a2 = a(t + 0.5 * h), a3 = a(t + h);
    if (matrix) {
      const Mat k1 = eta * a1;
      const Mat k2 = (eta + 0.5 * h * k1) * a2;
      const Mat k3 = (eta + 0.5 * h * k2) * a2;
      const Mat k4 = (eta + h * k3) * a3;
      eta += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
      if ((s + 1) % 100 == 0 || s + 1 == steps) {
        const Mat p = project(eta, group.model);
        const double c = (p - eta).norm();
        out.projection_correction = std::max(out.projection_correction, c);
        if (c > 1e-6)
          throw Error(ErrorCode::StepTooLarge, "re-projection correction " + std::to_string(c) + " exceeds 1e-6");
        eta = p;
      }
    } else {
      eta += h / 6.0 * (a1 + 4 * a2 + a3);
    }
  }
  if (group.kind == DualGroupKind::Torus)
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(eta.rows(), group.periods.size()); ++i)
      eta(i, i) = eta(i, i).real() - group.periods(i) * std::floor(eta(i, i).real() / group.periods(i));
  out.value = eta;
  out.steps = steps;
  return out;
}

PeriodValue period_homomorphism(const PrimitiveForm& alpha, const LoopPath& loop, const DualGroup& group,
                                double dt) {
  if (loop.points.size() < 2) throw Error(ErrorCode::InsufficientSamples, "empty loop");
  auto a = [&](double t) {
    auto [p, v] = loop_eval(loop, t);
    return alpha.alpha(p, v);
  };
  const auto size = static_cast<int>(alpha.alpha(loop.points[0], Vec::Zero(loop.points[0].size())).rows());
  return integrate_log_derivative(a, group, dt, size);
}

VerdictReport existence_verdict(const PrimitiveForm& alpha, const std::vector<LoopPath>& generators,
                                const DualGroup& group, double dt) {
  VerdictReport r;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Mat p = period_homomorphism(alpha, generators[i], group, dt).value;
    double d = 0.0;
    switch (group.kind) {
      case DualGroupKind::Real:
        d = p.norm();
        r.periods.push_back(p(0, 0).real());
        break;
      case DualGroupKind::Torus:
        for (Eigen::Index k = 0; k < p.rows(); ++k) {
          const double x = p(k, k).real() / group.periods(k);
          d = std::max(d, std::abs(x - std::round(x)));
        }
        r.periods.push_back(p(0, 0).real());
        break;
      case DualGroupKind::Matrix:
        d = (p - Mat::Identity(p.rows(), p.cols())).norm();
        r.periods.push_back(d);
        break;
    }
    r.distances.push_back(d);
    if (d > kPeriodTol) {
      r.exists = false;
      r.offending.push_back(static_cast<int>(i));
    }
  }
  return r;
}

double maurer_cartan_residual(const PrimitiveForm& alpha, const std::function<Mat(const Mat&, const Mat&)>& bracket,
                              const std::vector<Vec>& points, double step) {
  double r = 0.0;
  for (const Vec& m : points) {
    const auto n = m.size();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        Vec ei = Vec::Zero(n), ej = Vec::Zero(n);
        ei(i) = 1.0;
        ej(j) = 1.0;
        const Mat di = (alpha.alpha(m + step * ei, ej) - alpha.alpha(m - step * ei, ej)) / (2 * step);
        const Mat dj = (alpha.alpha(m + step * ej, ei) - alpha.alpha(m - step * ej, ei)) / (2 * step);
        const Mat v = di - dj + bracket(alpha.alpha(m, ei), alpha.alpha(m, ej));
        r = std::max(r, v.norm());
      }
  }
  return r;
}

std::function<Mat(const Vec&)> integrate_momentum(const PrimitiveForm& alpha, const Vec& base, int samples) {
  const int n = samples + samples % 2;
  return [alpha, base, n](const Vec& m) {
    const Vec d = m - base;
    Mat acc = alpha.alpha(base, d) + alpha.alpha(m, d);
    for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * alpha.alpha(base + (double(k) / n) * d, d);
    return Mat(acc / (3.0 * n));
  };
}

}  // namespace gvmm
