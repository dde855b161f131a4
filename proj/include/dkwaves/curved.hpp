#pragma once

#include "dkwaves/radial.hpp"
#include "dkwaves/types.hpp"

#include <vector>

namespace dkwaves {

/// Parameters of the four-amplitude radial system on the static spherical
/// background, where the angle chi in (0, pi) plays the role of the radius.
struct CurvedRadialParams {
  int J = 1;       ///< orbital label, J >= 1
  Real eps = 2.0;  ///< frequency
  Real mass = 1.0; ///< mass parameter
  Real chi = 1.0;  ///< default radial angle for scans, 0 < chi < pi
};

/// Derivatives (K', L', M', N') of the curved four-amplitude system at chi
/// given values (K, L, M, N). Throws std::domain_error when chi lies outside
/// (0, pi) or too close to a pole.
Vector4d curved_rhs(const CurvedRadialParams& p, Real chi,
                    const Vector4d& klmn);

/// Residuals of the four curved equations given values and independently
/// estimated derivatives (both ordered K, L, M, N).
Vector4d curved_quartet_residual(const CurvedRadialParams& p, Real chi,
                                 const Vector4d& values,
                                 const Vector4d& derivs);

/// Flat-space analog of the same residual functional: every geometric
/// coefficient that the sphere splits into 1/sin(chi) and cot(chi) collapses
/// back to 1/r. Throws std::domain_error for r <= 0.
Vector4d flat_quartet_residual(const CurvedRadialParams& p, Real r,
                               const Vector4d& values, const Vector4d& derivs);

/// Gap between the coefficients that the first and the third curved equation
/// force on the single radial function of the weighted substitution
/// K = f/sqrt(J+1), M = f/sqrt(J) (and likewise L, N from g). The two
/// coefficients are extracted numerically from the residual functional on a
/// generic sample; their difference equals (1 - cos chi)/sin chi =
/// tan(chi/2) and carries no dependence on J, eps, or mass. A nonzero gap
/// means the substitution over-determines the system at that chi.
Real obstruction_gap_with(const CurvedRadialParams& p, Real chi);

/// Same gap with default spectral parameters (eps, mass) = (2, 1).
Real obstruction_gap(int J, Real chi);

/// The identical extraction applied to the flat functional; vanishes for
/// every J and r > 0, which is why the substitution works in flat space.
Real flat_gap(int J, Real r);

/// One point of the dynamical overdetermination scan: integrating the first
/// two curved equations under the weighted substitution leaves the remaining
/// two with a relative residual `ratio` at angle `chi`; the analytic value
/// of the ratio is tan(chi/2).
struct WitnessSample {
  Real chi = 0.0;
  Real ratio = 0.0;
};

/// Integrates the reduced two-function flow across [chi0, chi1] and measures
/// the leftover residual ratio at `count` sample points spread over the
/// interval. Derivatives are re-estimated by finite differences along the
/// trajectory, so the measurement never consults the flow's own right-hand
/// side. Throws std::domain_error unless 0 < chi0 < chi1 < pi with a safe
/// pole margin, or if count < 1.
std::vector<WitnessSample> witness_scan(const CurvedRadialParams& p, Real chi0,
                                        Real chi1, int count);

/// Largest deviation |ratio / tan(chi/2) - 1| over a witness scan.
Real witness_max_deviation(const CurvedRadialParams& p, Real chi0, Real chi1,
                           int count);

}  // namespace dkwaves
