#include "gvmm/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gvmm {

namespace {

std::vector<Mat> drop(const std::vector<Mat>& v, std::size_t i, std::size_t j = SIZE_MAX) {
  std::vector<Mat> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != i && k != j) out.push_back(v[k]);
  return out;
}

Mat random_combination(const std::vector<Mat>& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat x = Mat::Zero(basis[0].rows(), basis[0].cols());
  for (const Mat& b : basis) x += n(rng) * b;
  return x;
}

/// Basis elements followed by random combinations.
std::vector<Mat> coverage(const std::vector<Mat>& basis, int extra, std::mt19937_64& rng) {
  std::vector<Mat> out = basis;
  for (int i = 0; i < extra; ++i) out.push_back(random_combination(basis, rng));
  return out;
}

/// Fourth order central difference of f at 0.
template <class F>
Mat fd4(const F& f, double h) {
  return (8.0 * (f(h) - f(-h)) - (f(2 * h) - f(-2 * h))) / (12 * h);
}

}  // namespace

Mat dual_coad(const Mat& mu, const Mat& b, const DualPairing& pairing, const HBracket& h_bracket) {
  const auto& br = pairing.basis_right();
  Vec rhs(static_cast<Eigen::Index>(br.size()));
  for (std::size_t j = 0; j < br.size(); ++j) rhs(static_cast<Eigen::Index>(j)) = pairing(b, h_bracket(mu, br[j]));
  return pairing.solve_left(rhs);
}

Cochain ce_differential(const Cochain& lambda, const DualPairing& pairing) {
  if (lambda.degree < 0 || lambda.degree > 3)
    throw Error(ErrorCode::DegreeOverflow, "CE differential implemented for degree 0..3, got " +
                                               std::to_string(lambda.degree));
  Cochain out;
  out.degree = lambda.degree + 1;
  out.eval = [lambda, pairing](const std::vector<Mat>& a) {
    if (static_cast<int>(a.size()) != lambda.degree + 1)
      throw Error(ErrorCode::DegreeMismatch, "cochain evaluated on wrong number of arguments");
    Mat acc;
    bool first = true;
    auto add = [&](const Mat& m) {
      if (first) {
        acc = m;
        first = false;
      } else {
        acc += m;
      }
    };
    // 1-based signs: (-1)^i and (-1)^{i+j}
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double s = (i % 2 == 0) ? -1.0 : 1.0;
      add(s * infinitesimal_coadjoint_mat(a[i], lambda(drop(a, i)), pairing));
    }
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        const double s = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        std::vector<Mat> args{commutator(a[i], a[j])};
        for (const Mat& m : drop(a, i, j)) args.push_back(m);
        add(s * lambda(args));
      }
    return acc;
  };
  return out;
}

std::function<Mat(const Mat&, const Mat&)> map_bracket(const LinearMap& phi, const LinearMap& psi,
                                                       const DualPairing& pairing, const HBracket& h_bracket) {
  return [=](const Mat& a, const Mat& b) {
    const Mat pa = phi(a), pb = phi(b), qa = psi(a), qb = psi(b);
    return Mat(phi(dual_coad(qa, b, pairing, h_bracket)) - phi(dual_coad(qb, a, pairing, h_bracket)) +
               psi(dual_coad(pa, b, pairing, h_bracket)) - psi(dual_coad(pb, a, pairing, h_bracket)) +
               h_bracket(pa, qb) - h_bracket(pb, qa));
  };
}

Mat group_coad(const GroupModel& h, const Mat& zeta, const Mat& a, const DualPairing& pairing) {
  if (h.additive) return a;
  const auto& br = pairing.basis_right();
  Vec rhs(static_cast<Eigen::Index>(br.size()));
  for (std::size_t j = 0; j < br.size(); ++j) rhs(static_cast<Eigen::Index>(j)) = pairing(a, h.Ad(zeta, br[j]));
  return pairing.solve_left(rhs);
}

double PoissonLieReport::max() const {
  return std::max({linearity, skew, multiplicativity, poisson, compatibility});
}

std::map<std::string, double> PoissonLieReport::to_map() const {
  return {{"linearity", linearity},
          {"skew", skew},
          {"multiplicativity", multiplicativity},
          {"poisson", poisson},
          {"compatibility", compatibility}};
}

PoissonLieReport check_poisson_lie(const PoissonLieStructure& s, const std::vector<Mat>& samples,
                                   const CheckOptions& opt) {
  if (samples.empty()) throw Error(ErrorCode::InsufficientSamples, "check_poisson_lie needs samples");
  std::mt19937_64 rng(opt.seed);
  const auto& gb = s.pairing.basis_left();
  const auto& hb = s.pairing.basis_right();
  const std::vector<Mat> args = coverage(gb, opt.random_combinations, rng);
  const HBracket hbr = [h = s.h](const Mat& x, const Mat& y) { return h.bracket(x, y); };
  PoissonLieReport r;
  std::normal_distribution<double> nd(0.0, 1.0);

  for (const Mat& eta : samples) {
    for (int t = 0; t < opt.random_combinations; ++t) {
      const double x = nd(rng), y = nd(rng);
      const Mat& a = args[rng() % args.size()];
      const Mat& b = args[rng() % args.size()];
      r.linearity = std::max(r.linearity, (s.pi(eta, x * a + y * b) - x * s.pi(eta, a) - y * s.pi(eta, b)).norm());
    }
    std::vector<Mat> pis;
    for (const Mat& a : args) pis.push_back(s.pi(eta, a));
    for (std::size_t i = 0; i < args.size(); ++i)
      for (std::size_t j = i; j < args.size(); ++j)
        r.skew = std::max(r.skew, std::abs(s.pairing(args[i], pis[j]) + s.pairing(args[j], pis[i])));

    Cochain phi{1, [&](const std::vector<Mat>& v) { return s.pi(eta, v[0]); }};
    const Cochain dphi = ce_differential(phi, s.pairing);
    const LinearMap lin = [&](const Mat& a) { return s.pi(eta, a); };
    const auto br = map_bracket(lin, lin, s.pairing, hbr);
    for (std::size_t i = 0; i < args.size(); ++i)
      for (std::size_t j = i + 1; j < args.size(); ++j)
        r.poisson = std::max(r.poisson, (dphi({args[i], args[j]}) - 0.5 * br(args[i], args[j])).norm());

    for (const Mat& zeta : samples) {
      const Mat ez = s.h.mul(eta, zeta);
      const Mat zi = s.h.inv(zeta);
      for (const Mat& a : args) {
        const Mat lhs = s.pi(ez, a);
        const Mat rhs = s.h.Ad(zi, s.pi(eta, group_coad(s.h, zi, a, s.pairing))) + s.pi(zeta, a);
        r.multiplicativity = std::max(r.multiplicativity, (lhs - rhs).norm());
      }
    }
  }

  const double h = opt.step;
  std::vector<Mat> mus = coverage(hb, std::min(opt.random_combinations, 5), rng);
  for (const Mat& a : gb)
    for (const Mat& mu : mus) {
      const double n = mu.norm();
      const Mat u = mu / n;
      const Mat d = n * fd4([&](double t) { return s.pi(s.h.exp(t * u), a); }, h);
      r.compatibility = std::max(r.compatibility, (d - infinitesimal_coadjoint_mat(a, mu, s.pairing)).norm());
    }
  return r;
}

PoissonLieStructure kks_structure(const DualPairing& pairing) {
  PoissonLieStructure s;
  s.name = "kks";
  s.pairing = pairing;
  s.pi = [pairing](const Mat& mu, const Mat& a) { return infinitesimal_coadjoint_mat(a, mu, pairing); };
  s.h = GroupModel{pairing.right_tag(), pairing.n_right(), true};
  return s;
}

std::map<std::string, double> MatchedPairReport::to_map() const {
  return {{"identity", identity},
          {"action_law", action_law},
          {"matched", matched},
          {"matched_star", matched_star},
          {"infinitesimal", infinitesimal},
          {"infinitesimal_star", infinitesimal_star}};
}

MatchedPairReport check_matched_pair(const CoconjugationPair& p, const DualPairing& pairing,
                                     const std::vector<Mat>& gs, const std::vector<Mat>& es, double step) {
  if (gs.empty() || es.empty()) throw Error(ErrorCode::InsufficientSamples, "check_matched_pair needs samples");
  MatchedPairReport r;
  const Mat ge = p.g.identity(), ee = p.gstar.identity();
  for (const Mat& g : gs) r.identity = std::max(r.identity, (p.upsilon(g, ee) - ee).norm());
  for (const Mat& e : es) r.identity = std::max(r.identity, (p.upsilon_star(e, ge) - ge).norm());

  const std::size_t ng = gs.size(), ne = es.size();
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < ng; ++j) {
      const Mat &g1 = gs[i], &g2 = gs[j], &e = es[(i + j) % ne];
      r.action_law = std::max(
          r.action_law, (p.upsilon(p.g.mul(g1, g2), e) - p.upsilon(g1, p.upsilon(g2, e))).norm());
      // Upsilon*_eta(g1 g2) = Upsilon*_{Upsilon_{g2}(eta^-1)^-1}(g1) Upsilon*_eta(g2)
      const Mat eta2 = p.gstar.inv(p.upsilon(g2, p.gstar.inv(e)));
      r.matched_star = std::max(r.matched_star, (p.upsilon_star(e, p.g.mul(g1, g2)) -
                                                 p.g.mul(p.upsilon_star(eta2, g1), p.upsilon_star(e, g2)))
                                                    .norm());
    }
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = 0; j < ne; ++j) {
      const Mat &e1 = es[i], &e2 = es[j], &g = gs[(i + j) % ng];
      r.action_law = std::max(r.action_law, (p.upsilon_star(p.gstar.mul(e1, e2), g) -
                                             p.upsilon_star(e1, p.upsilon_star(e2, g)))
                                                .norm());
      const Mat g2 = p.upsilon_star(p.gstar.inv(e1), g);
      r.matched = std::max(r.matched, (p.upsilon(g, p.gstar.mul(e1, e2)) -
                                       p.gstar.mul(p.upsilon(g, e1), p.upsilon(g2, e2)))
                                          .norm());
    }

  for (const Mat& g : gs)
    for (const Mat& mu : pairing.basis_right()) {
      const Mat d = (p.upsilon(g, p.gstar.exp(step * mu)) - p.upsilon(g, p.gstar.exp(-step * mu))) / (2 * step);
      r.infinitesimal = std::max(r.infinitesimal, (d - coadjoint_mat(p.g.inv(g), mu, pairing)).norm());
    }
  for (const Mat& e : es)
    for (const Mat& a : pairing.basis_left()) {
      const Mat d = (p.upsilon_star(e, p.g.exp(step * a)) - p.upsilon_star(e, p.g.exp(-step * a))) / (2 * step);
      r.infinitesimal_star =
          std::max(r.infinitesimal_star, (d - group_coad(p.gstar, p.gstar.inv(e), a, pairing)).norm());
    }
  return r;
}

double factorization_residual(const CoconjugationPair& p, const std::vector<Mat>& gs, const std::vector<Mat>& es) {
  double r = 0.0;
  for (const Mat& g : gs)
    for (const Mat& e : es) {
      const Mat lhs = e * p.g.inv(g);
      const Mat rhs = p.g.inv(p.upsilon_star(e, g)) * p.gstar.inv(p.upsilon(g, p.gstar.inv(e)));
      r = std::max(r, (lhs - rhs).norm());
    }
  return r;
}

CoconjugationPair coadjoint_pair(const DualPairing& pairing, Tag g_tag, int n) {
  CoconjugationPair p;
  p.name = "coadjoint";
  p.g = GroupModel{g_tag, n, false};
  p.gstar = GroupModel{pairing.right_tag(), pairing.n_right(), true};
  p.upsilon = [pairing](const Mat& g, const Mat& mu) { return coadjoint_mat(g.inverse(), mu, pairing); };
  p.upsilon_star = [](const Mat&, const Mat& g) { return g; };
  return p;
}

Iwasawa iwasawa_decompose(const Mat& d) {
  if (d.rows() != d.cols()) throw Error(ErrorCode::DimensionMismatch, "iwasawa_decompose needs a square matrix");
  Eigen::HouseholderQR<Mat> qr(d);
  const Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  const double scale = std::max(1.0, d.norm());
  Mat ph = Mat::Identity(d.rows(), d.cols());
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    const double m = std::abs(r(i, i));
    if (m < 1e-14 * scale) throw Error(ErrorCode::SingularInput, "matrix is singular");
    ph(i, i) = r(i, i) / m;
  }
  return {q * ph, ph.adjoint() * r};
}

Mat proj_k(const Mat& x) {
  const Mat l = x.triangularView<Eigen::StrictlyLower>();
  Mat k = l - l.adjoint();
  for (Eigen::Index i = 0; i < x.rows(); ++i) k(i, i) = cplx(0.0, x(i, i).imag());
  return k;
}

Mat proj_b(const Mat& x) { return x - proj_k(x); }

CoconjugationPair iwasawa_pair(int n) {
  CoconjugationPair p;
  p.name = "iwasawa";
  p.g = GroupModel{Tag::su_n, n, false};
  p.gstar = GroupModel{Tag::b_n, n, false};
  p.upsilon = [](const Mat& k, const Mat& b) { return Mat(iwasawa_decompose(b.inverse() * k.adjoint()).b.inverse()); };
  p.upsilon_star = [](const Mat& b, const Mat& k) { return Mat(iwasawa_decompose(b * k.adjoint()).k.adjoint()); };
  return p;
}

CoconjugationPair perturbed_iwasawa_pair(int n, double strength) {
  CoconjugationPair p = iwasawa_pair(n);
  p.name = "iwasawa-perturbed";
  auto base = p.upsilon;
  p.upsilon = [base, n, strength](const Mat& k, const Mat& b) {
    const double s = strength * k(0, 1).real();
    Mat c = Mat::Identity(n, n);
    c(0, 0) = std::exp(s);
    c(1, 1) = std::exp(-s);
    return Mat(c * base(k, b));
  };
  return p;
}

double skew_residual(const PoissonLieStructure& s, const std::vector<Mat>& samples) {
  const auto& gb = s.pairing.basis_left();
  double r = 0.0;
  for (const Mat& eta : samples) {
    std::vector<Mat> pis;
    for (const Mat& a : gb) pis.push_back(s.pi(eta, a));
    for (std::size_t i = 0; i < gb.size(); ++i)
      for (std::size_t j = i; j < gb.size(); ++j)
        r = std::max(r, std::abs(s.pairing(gb[i], pis[j]) + s.pairing(gb[j], pis[i])));
  }
  return r;
}

DressingStructures derive_dressing_poisson(const CoconjugationPair& pair, const DualPairing& pairing,
                                           const std::vector<Mat>& gs, const std::vector<Mat>& es, double step) {
  const MatchedPairReport mp = check_matched_pair(pair, pairing, gs, es);
  if (mp.residual() > 1e-8)
    throw Error(ErrorCode::PreconditionFailed,
                pair.name + ": matched-pair residual " + std::to_string(mp.residual()) + " exceeds 1e-8");
  DressingStructures out;
  const double h = step;

  out.on_gstar.name = pair.name + ":G*";
  out.on_gstar.pairing = pairing;
  out.on_gstar.h = pair.gstar;
  out.on_gstar.pi = [pair, pairing, h](const Mat& eta, const Mat& a) {
    Mat c = group_coad(pair.gstar, pair.gstar.inv(eta), a, pairing);
    const double n = c.norm();
    if (n == 0.0) return Mat(Mat::Zero(eta.rows(), eta.cols()));
    c /= n;
    auto at = [&](double t) { return pair.upsilon(pair.g.exp(t * c), eta); };
    const Mat d = fd4(at, h);
    return Mat(-n * pair.gstar.left_trivialize(eta, d));
  };

  const DualPairing sw = pairing.swapped();
  out.on_g.name = pair.name + ":G";
  out.on_g.pairing = sw;
  out.on_g.h = pair.g;
  out.on_g.pi = [pair, pairing, h](const Mat& g, const Mat& mu) {
    const Mat gi = pair.g.inv(g);
    Mat nu = pair.g.additive ? mu : coadjoint_mat(gi, mu, pairing);
    const double n = nu.norm();
    if (n == 0.0) return Mat(Mat::Zero(g.rows(), g.cols()));
    nu /= n;
    auto at = [&](double t) { return pair.upsilon_star(pair.gstar.exp(t * nu), gi); };
    const Mat d = fd4(at, h);
    return Mat(n * (pair.g.additive ? d : Mat(d * g)));
  };

  out.skew_gstar = skew_residual(out.on_gstar, es);
  out.skew_g = skew_residual(out.on_g, gs);
  if (out.skew_gstar > 1e-6 || out.skew_g > 1e-6)
    throw Error(ErrorCode::SkewSymmetryViolated,
                pair.name + ": derived structure not skew (G " + std::to_string(out.skew_g) + ", G* " +
                    std::to_string(out.skew_gstar) + ")");
  return out;
}

Mat iwasawa_pi_b(const Mat& b, const Mat& a) {
  const int n = static_cast<int>(b.rows());
  const Mat bi = b.inverse();
  const Mat c = group_coad(GroupModel{Tag::b_n, n, false}, bi, a, iwasawa_pairing(n));
  return -proj_b(bi * c * b);
}

double iwasawa_bivector(const Mat& b, const Mat& a, const Mat& bb) {
  const Mat bi = b.inverse();
  return (proj_b(b * a * bi) * proj_k(b * bb * bi)).trace().imag();
}

double cocycle_law_residual(const CoconjugationPair& base, const GroupCocycle& c, const std::vector<Mat>& gs) {
  double r = 0.0;
  for (const Mat& g : gs)
    for (const Mat& h : gs)
      r = std::max(r, (c(base.g.mul(g, h)) - c(g) - base.upsilon(g, c(h))).norm());
  return r;
}

PoissonLieStructure affine_structure_from_cocycle(const CoconjugationPair& base, const GroupCocycle& c,
                                                  const DualPairing& pairing, const std::vector<Mat>& gs,
                                                  double step) {
  if (!base.gstar.additive) throw Error(ErrorCode::PreconditionFailed, "affine structures need an abelian G*");
  const double res = cocycle_law_residual(base, c, gs);
  if (res > 1e-10)
    throw Error(ErrorCode::CocycleLawViolated, "cocycle law defect " + std::to_string(res));
  PoissonLieStructure s;
  s.name = base.name + ":affine";
  s.pairing = pairing;
  s.h = base.gstar;
  s.pi = [base, c, step](const Mat& eta, const Mat& a) {
    const double n = a.norm();
    if (n == 0.0) return Mat(Mat::Zero(eta.rows(), eta.cols()));
    auto at = [&](double t) {
      const Mat g = base.g.exp(t * a / n);
      return Mat(base.upsilon(g, eta) + c(g));
    };
    return Mat(-n * fd4(at, step));
  };
  return s;
}

double affine_law_residual(const PoissonLieStructure& s, const std::vector<Mat>& samples) {
  double r = 0.0;
  const Mat zero = s.h.identity();
  for (const Mat& a : s.pairing.basis_left()) {
    const Mat p0 = s.pi(zero, a);
    for (const Mat& z : samples)
      for (const Mat& e : samples) r = std::max(r, (s.pi(z + e, a) - s.pi(z, a) - s.pi(e, a) + p0).norm());
  }
  return r;
}

CoconjugationPair torus_translation_pair() {
  CoconjugationPair p;
  p.name = "torus-translation";
  p.g = GroupModel{Tag::rn, 2, true};
  p.gstar = GroupModel{Tag::rn, 2, true};
  p.upsilon = [](const Mat&, const Mat& eta) { return eta; };
  p.upsilon_star = [](const Mat&, const Mat& g) { return g; };
  return p;
}

GroupCocycle torus_translation_cocycle() {
  return [](const Mat& g) {
    Mat c = Mat::Zero(2, 2);
    c(0, 0) = -g(1, 1);
    c(1, 1) = g(0, 0);
    return c;
  };
}

}  // namespace gvmm
