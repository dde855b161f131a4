#pragma once

#include "dkwaves/types.hpp"

#include <functional>

namespace dkwaves {

/// Throws std::invalid_argument when the discrete labels are inconsistent
/// (J, M ranges, sign labels) or the continuous parameters are off the
/// oscillatory branch eps > |mass| > 0.
void validate_mode(const BosonMode& mode);
void validate_mode(const DiracMode& mode);

/// Second rotation index attached to the matrix slot (a, b): the four rows
/// and columns carry weights s = (+1/2, -1/2, +1/2, -1/2) and the slot uses
/// the rotation function with second index sigma = -(s_a + s_b).
int sigma_index(int a, int b);

/// Angular factor of slot sigma: D^J_{-M,sigma}(phi, theta, 0).
Complex angular_D(int J, int M, int sigma, Real phi, Real theta);

/// The r-dependent coefficient table c_ab of a mode: everything except the
/// overall e^{-i eps t}/r prefactor and the angular factors, i.e.
///   U_ab = (e^{-i eps t}/r) c_ab(r) D_{sigma(a,b)}(phi, theta).
/// The normalization 1/sqrt(2) is included. The second overload lets tests
/// probe the system with a deliberately wrong radial mass.
Matrix4c radial_coefficients(const BosonMode& mode, Real r);
Matrix4c radial_coefficients(const BosonMode& mode, Real r, Real radial_mass);

/// The matrix wave itself.
Matrix4c eval_U(const BosonMode& mode, const Point& pt);

/// Residual of the first-order matrix wave operator
///   i g^0 dt U + i g^3 dr U + (i/r)(g^1 J31 U + g^2 J32 U)
///   + (1/r)[ i g^1 dtheta U + g^2 (i dphi U + i cos(theta) J12 U)/sin(theta) ]
///   - mass U
/// applied to an arbitrary matrix field, measured relative to |U| at the
/// point (Frobenius norms). Derivatives are centered differences.
Real dk_residual_of(const std::function<Matrix4c(const Point&)>& field,
                    Real mass, const Point& pt, Real fd_step = 1e-4);

/// Same residual for the wave attached to `mode`.
Real dk_residual(const BosonMode& mode, const Point& pt, Real fd_step = 1e-4);

/// The angular block of the operator above (everything multiplied by 1/r
/// except the radial/time terms), acting on a field of (theta, phi) alone:
///   i g^1 dtheta T + g^2 (i dphi T + i cos(theta) J12 T)/sin(theta).
Matrix4c sigma_theta_phi(const std::function<Matrix4c(Real, Real)>& field,
                         Real theta, Real phi, Real fd_step = 1e-6);

/// Residual of the closed-form action of the angular block on a one-mode
/// template T_ab = coeff_ab * D_{sigma(a,b)} with constant coeff:
/// the block maps T to i sqrt(J(J+1)) times a row-permuted, sign-flipped
/// template (rows 1<->4 and 2<->3 with signs -,+,+,-). Requires J >= 1.
Real sigma_action_residual(int J, int M, Real theta, Real phi,
                           const Matrix4c& coeff, Real fd_step = 1e-6);

/// Same residual with every template coefficient set to 1 (the generic
/// placeholder probe). Throws std::domain_error at pole proximity.
Real sigma_action_check(int J, int M, Real theta, Real phi,
                        Real fd_step = 1e-6);

/// Space-reflection check: the matrix action composed with
/// (theta, phi) -> (pi - theta, phi + pi) maps the wave to sign * itself.
struct ParityCheck {
  int sign = 0;       ///< measured sign (+1 or -1)
  Real mismatch = 0;  ///< relative deviation from sign * U
};
ParityCheck parity_check(const BosonMode& mode, const Point& pt);

/// One column of the spinor wave: entries
///   ( D_{-1/2} (F + iG), D_{+1/2} (F - iG),
///     delta D_{-1/2} (F - iG), delta D_{+1/2} (F + iG) ) / sqrt(2)
/// with D_sigma = D^j_{-m,sigma}(phi, theta, 0), all labels doubled.
Vector4c psi_column(int two_j, int two_m, int delta, Real F, Real G,
                    Real theta, Real phi);

/// The full spinor wave with its e^{-i eps t}/r prefactor; the radial pair
/// (F, G) is the regular closed form of the kappa = j + 1/2 channel with
/// mass delta * mass.
Vector4c eval_Psi(const DiracMode& mode, const Point& pt);

}  // namespace dkwaves
