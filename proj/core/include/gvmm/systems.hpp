#pragma once

#include "gvmm/momentum.hpp"
#include "gvmm/orbits.hpp"

namespace gvmm {

/// (R^2, dq^dp) with translations by R^2 and J(v) = factor * omega(v, .) as diag.
SymplecticSample translation_system(const Vec& point, double factor = 1.0);
/// Same data on the torus R^2/Z^2 with V*/Lambda*-valued momentum.
SymplecticSample symplectic_torus_system(const Vec& point);

/// M(2n x 2n, R) with omega(X, Y) = tr(X^T J Y); left Sp(2n) action, J_Sp = -X X^T J.
SymplecticSample matrix_sp_system(const RMat& x);
/// Right O(2n) action X -> X g^{-1}, J_O = X^T J X.
SymplecticSample matrix_o_system(const RMat& x);
/// kappa(A, mu) = -1/2 tr(A mu), used on both sides of the matrix dual pair.
DualPairing matrix_pair_pairing(Tag tag, int size);

/// Coadjoint orbit of sl(2,R) through the given chart point, J = -nu.
SymplecticSample kks_orbit_system(OrbitKind kind, double lambda, const Vec& chart_point);
/// Ambient orbit point in the basis (e+, e-, h).
Mat kks_orbit_point(OrbitKind kind, double lambda, const Vec& chart_point);

/// Harmonic oscillator on R^2 with rotations and J = 1/2 (q^2 + p^2) h.
SymplecticSample oscillator_system(const Vec& point);
/// Rotations in the chart w = (q, p + q^3), J = exp(1/2 (q^2 + p^2)) in R_{>0}.
SymplecticSample sheared_oscillator_system(const Vec& point);
/// kappa(a h, [b]) = -a b between so(2) and the multiplicative R_{>0}.
PairingFn sheared_pairing();
/// H = 1/2 (q^2 + p^2) written in the sheared chart.
Hamiltonian sheared_oscillator_hamiltonian();

/// T^2 with dphi1 ^ dphi2, U(1) acting by phi1 -> phi1 - t, J = phi2 mod 1.
SymplecticSample circle_t2_system(const Vec& point);
/// T^4 with dphi1^dphi2 + sqrt2 dpsi1^dpsi2, coordinates (phi1, phi2, psi1, psi2);
/// T^2 acts by phi1 -> phi1 - t1, psi1 -> psi1 - t2 with local momentum diag(phi2, sqrt2 psi2).
SymplecticSample t4_system(const Vec& point);
/// Diagonal circle of T^2 acting on the T^4 example (no momentum assigned).
SymplecticSample t4_diagonal_circle(const Vec& point);

/// R^4 = T*R^2 with H = 1/2 |p|^2 + (q1 - q2)^4 and translations q -> q - t(1, 1), J = p1 + p2.
SymplecticSample quartic_system(const Vec& point);
Hamiltonian quartic_hamiltonian();

/// Matrix space with the Sp action and H = 1/4 ||J_O||^2, which is Sp-invariant.
Hamiltonian kahler_hamiltonian(int n);

/// Linear SL(2,R) action on (R^2, dq^dp).
SymplecticSample linear_sl2_system(const Vec& point);

}  // namespace gvmm
