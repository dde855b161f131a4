#pragma once

#include "dkwaves/types.hpp"

#include <array>

namespace dkwaves {

/// Exact double factorial n! for n <= 39 (table), log-Gamma beyond.
Real factorial(int n);

/// Wigner small-d matrix element d^j_{m1,m2}(theta) in the Condon-Shortley
/// convention. Half-integer arguments are passed doubled: two_j = 2j, etc.
/// Throws std::domain_error for inconsistent (j, m) combinations.
Real small_d(int two_j, int two_m1, int two_m2, Real theta);

/// Rotation matrix element D^j_{m1,m2}(phi, theta, 0) = e^{-i m1 phi} d^j_{m1,m2}.
Complex wigner_D(int two_j, int two_m1, int two_m2, Real phi, Real theta);

/// Residual of one of the six ladder/derivative identities linking the
/// second-index family D_sigma = D^J_{-M,sigma} (sigma = -2..2).
/// kind: 1: d/dtheta D_{-1}            = (b D_{-2} - a D_0)/2
///       2: (-M+cos)/sin * D_{-1}      = -(b D_{-2} + a D_0)/2
///       3: d/dtheta D_{+1}            = (a D_0 - b D_{+2})/2
///       4: (-M-cos)/sin * D_{+1}      = -(a D_0 + b D_{+2})/2
///       5: d/dtheta D_0               = a (D_{-1} - D_{+1})/2
///       6: -M/sin * D_0               = -a (D_{-1} + D_{+1})/2
/// with a = sqrt(J(J+1)), b = sqrt((J-1)(J+2)). Derivatives are evaluated
/// by a centered difference of width fd_step.
Real derivative_identity_residual(int kind, int J, int M, Real theta, Real phi,
                                  Real fd_step = 1e-6);

/// Same residual with the coefficient b replaced by a caller-supplied value;
/// used to demonstrate that nearby coefficient choices fail.
Real derivative_identity_residual_with_b(int kind, int J, int M, Real theta,
                                         Real phi, Real b_coeff,
                                         Real fd_step = 1e-6);

/// Clebsch-Gordan coefficient <j, m - ms; 1/2, ms | jp, m> for coupling an
/// extra spin 1/2. All projections doubled; two_ms = ±1, two_jp = two_j ± 1.
/// Returns 0 when a projection is out of range.
Real clebsch_half(int two_j, int two_m, int two_ms, int two_jp);

/// The four half-angle prefactors that arise when a spin-1/2 rotation is
/// multiplied into an integer-spin rotation function.
enum class HalfFactor {
  CosExpPlus,   ///< cos(theta/2) e^{+i phi/2}
  CosExpMinus,  ///< cos(theta/2) e^{-i phi/2}
  SinExpPlus,   ///< sin(theta/2) e^{+i phi/2}
  SinExpMinus   ///< sin(theta/2) e^{-i phi/2}
};

/// One target rotation function with its weight: coeff * D^{two_j/2} with
/// indices (two_m1, two_m2)/2, arguments directly usable with wigner_D().
struct CouplingTerm {
  int two_j = 1;
  int two_m1 = 0;
  int two_m2 = 0;
  Real coeff = 0.0;
};

/// Expansion  factor(theta,phi) * D^J_{-M,sigma}  =  sum of two terms with
/// j' = J -/+ 1/2 (in that order). Terms whose projections are out of range
/// come back with coeff = 0. two_sigma is the doubled second index (even).
std::array<CouplingTerm, 2> coupling_expand(HalfFactor factor, int J, int M,
                                            int two_sigma);

/// Evaluate the half-angle prefactor itself.
Complex half_factor_value(HalfFactor factor, Real theta, Real phi);

}  // namespace dkwaves
