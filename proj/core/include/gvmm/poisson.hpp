#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gvmm/lie.hpp"

namespace gvmm {

/// Alternating k-linear map g^k -> h, evaluated on explicit arguments.
struct Cochain {
  int degree = 0;
  std::function<Mat(const std::vector<Mat>&)> eval;
  Mat operator()(const std::vector<Mat>& args) const { return eval(args); }
};

/// Lie bracket of the dual algebra h; commutator unless h is abelian.
using HBracket = std::function<Mat(const Mat&, const Mat&)>;

/// coad_mu B in g for mu in h: kappa(coad_mu B, nu) = kappa(B, [mu, nu]_h).
Mat dual_coad(const Mat& mu, const Mat& b, const DualPairing& pairing, const HBracket& h_bracket);

/// Chevalley-Eilenberg differential with values in h and the minus-coadjoint module structure.
/// Throws DegreeOverflow for degree > 3.
Cochain ce_differential(const Cochain& lambda, const DualPairing& pairing);

/// Bracket of two linear maps g -> h; for phi = psi, half of it is
/// phi(coad_{phi A} B) - phi(coad_{phi B} A) + [phi A, phi B]_h.
using LinearMap = std::function<Mat(const Mat&)>;
std::function<Mat(const Mat&, const Mat&)> map_bracket(const LinearMap& phi, const LinearMap& psi,
                                                       const DualPairing& pairing, const HBracket& h_bracket);

struct PoissonLieStructure {
  std::string name;
  /// pi(eta, A) in h for eta in H and A in g.
  std::function<Mat(const Mat&, const Mat&)> pi;
  /// kappa(g, h).
  DualPairing pairing;
  /// Group carrying pi.
  GroupModel h;
};

/// Coad_zeta A in g for zeta in H: kappa(Coad_zeta A, nu) = kappa(A, Ad_zeta nu).
Mat group_coad(const GroupModel& h, const Mat& zeta, const Mat& a, const DualPairing& pairing);

struct PoissonLieReport {
  double linearity = 0.0;
  double skew = 0.0;
  double multiplicativity = 0.0;
  double poisson = 0.0;
  double compatibility = 0.0;
  double max() const;
  std::map<std::string, double> to_map() const;
};

struct CheckOptions {
  /// Outer step for the compatibility derivative.
  double step = 1e-4;
  int random_combinations = 20;
  unsigned seed = 7;
};

PoissonLieReport check_poisson_lie(const PoissonLieStructure& s, const std::vector<Mat>& samples,
                                   const CheckOptions& opt = {});

/// KKS structure pi(mu, A) = coad_A mu on g* viewed as an abelian group.
PoissonLieStructure kks_structure(const DualPairing& pairing);

struct CoconjugationPair {
  std::string name;
  GroupModel g;
  GroupModel gstar;
  /// Upsilon_g(eta).
  std::function<Mat(const Mat&, const Mat&)> upsilon;
  /// Upsilon*_eta(g).
  std::function<Mat(const Mat&, const Mat&)> upsilon_star;
};

struct MatchedPairReport {
  double identity = 0.0;
  double action_law = 0.0;
  double matched = 0.0;
  double matched_star = 0.0;
  double infinitesimal = 0.0;
  double infinitesimal_star = 0.0;
  /// Max of the two matched-pair identities.
  double residual() const { return std::max(matched, matched_star); }
  std::map<std::string, double> to_map() const;
};

/// Two-argument identities run over all sample pairs with the third argument cycled through the other list.
MatchedPairReport check_matched_pair(const CoconjugationPair& pair, const DualPairing& pairing,
                                     const std::vector<Mat>& g_samples, const std::vector<Mat>& gstar_samples,
                                     double step = 1e-5);

/// || eta g^{-1} - Upsilon*_eta(g)^{-1} Upsilon_g(eta^{-1})^{-1} || over sample pairs.
double factorization_residual(const CoconjugationPair& pair, const std::vector<Mat>& g_samples,
                              const std::vector<Mat>& gstar_samples);

/// Coadjoint action of G on g* with the trivial action back.
CoconjugationPair coadjoint_pair(const DualPairing& pairing, Tag g_tag, int n);

struct Iwasawa {
  Mat k;
  Mat b;
};
/// d = k b with k unitary and b upper triangular with positive diagonal. Throws SingularInput.
Iwasawa iwasawa_decompose(const Mat& d);
/// Projections of sl(n, C) onto su(n) and b_n along the other.
Mat proj_k(const Mat& x);
Mat proj_b(const Mat& x);
/// K = SU(n), B = AN with Upsilon_k(b) = pr_B(b^-1 k^-1)^-1, Upsilon*_b(k) = pr_K(b k^-1)^-1.
CoconjugationPair iwasawa_pair(int n);
/// Upsilon multiplied by diag(e^{s(k)}, e^{-s(k)}) with s(k) = strength Re k_01; not a cocycle.
CoconjugationPair perturbed_iwasawa_pair(int n, double strength);

struct DressingStructures {
  /// On G with values in g, paired through pairing.swapped().
  PoissonLieStructure on_g;
  /// On G* with values in g*.
  PoissonLieStructure on_gstar;
  double skew_g = 0.0;
  double skew_gstar = 0.0;
};

/// Derivatives use a fourth order stencil of the given step.
/// Throws PreconditionFailed if the matched-pair residual exceeds 1e-8 and
/// SkewSymmetryViolated if a derived structure is not skew beyond 1e-6.
DressingStructures derive_dressing_poisson(const CoconjugationPair& pair, const DualPairing& pairing,
                                           const std::vector<Mat>& g_samples,
                                           const std::vector<Mat>& gstar_samples, double step = 2e-4);

/// Closed form -pr_b(Ad_{b^-1} Coad_{b^-1} A) of the Iwasawa structure on B.
Mat iwasawa_pi_b(const Mat& b, const Mat& a);
/// Im tr(pr_b(Ad_b A) pr_k(Ad_b B)).
double iwasawa_bivector(const Mat& b, const Mat& a, const Mat& bb);

/// Max |kappa(A, pi(eta, B)) + kappa(B, pi(eta, A))| on basis pairs.
double skew_residual(const PoissonLieStructure& s, const std::vector<Mat>& samples);

/// c: G -> G* with abelian G*, Upsilon~ = Upsilon + c.
using GroupCocycle = std::function<Mat(const Mat&)>;

/// max |c(gh) - c(g) - Upsilon_g(c(h))| over sample pairs.
double cocycle_law_residual(const CoconjugationPair& base, const GroupCocycle& c, const std::vector<Mat>& g_samples);

/// pi~(eta, A) = -d/de (Upsilon(exp eA, eta) + c(exp eA)). Throws CocycleLawViolated beyond 1e-10.
PoissonLieStructure affine_structure_from_cocycle(const CoconjugationPair& base, const GroupCocycle& c,
                                                  const DualPairing& pairing, const std::vector<Mat>& g_samples,
                                                  double step = 1e-3);

/// max |pi(z + e, A) - pi(z, A) - pi(e, A) + pi(0, A)| over sample pairs and basis A.
double affine_law_residual(const PoissonLieStructure& s, const std::vector<Mat>& samples);

/// Translations of (R^2, dq^dp) on R^2 with trivial Upsilon on the torus V*/Lambda* and c(g) = omega(g, .).
CoconjugationPair torus_translation_pair();
GroupCocycle torus_translation_cocycle();

}  // namespace gvmm
