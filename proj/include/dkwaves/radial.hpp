#pragma once

#include "dkwaves/types.hpp"

namespace dkwaves {

using Vector8d = Eigen::Matrix<Real, 8, 1>;
using Vector4d = Eigen::Matrix<Real, 4, 1>;

/// Parameters of the single-channel first-order radial system
///   f' = -(kappa/r) f - (eps + mass) g
///   g' = +(kappa/r) g + (eps - mass) f
/// with integer kappa != 0.
struct RadialParams {
  Real eps = 2.0;
  Real mass = 1.0;
  int kappa = 1;
};

/// Right-hand side of the system above for y = (f, g). One kernel serves
/// every two-component reduction: the channel index kappa and the (possibly
/// sign-mapped) mass select the variant. Throws std::domain_error for r <= 0.
Vector2d unified_rhs(const RadialParams& p, Real r, const Vector2d& fg);

/// Values and first derivatives of the regular solution at radius r.
struct RadialValue {
  Real f = 0.0;
  Real g = 0.0;
  Real df = 0.0;
  Real dg = 0.0;
};

/// Regular (bounded-at-origin) closed-form solution on the oscillatory
/// branch eps > |mass|, built from spherical Bessel functions:
///   kappa = l > 0:  f =  r j_l(pr),      g = -(p/(eps+mass)) r j_{l-1}(pr)
///   kappa = -l < 0: f =  r j_{l-1}(pr),  g = +(p/(eps+mass)) r j_l(pr)
/// with p = sqrt(eps^2 - mass^2). Throws std::domain_error off-branch.
RadialValue closed_form_regular(const RadialParams& p, Real r);

/// RK4 integration of the system from (r0, init) to r1.
/// Throws std::domain_error unless 0 < r0 < r1 and 0 < step < r1 - r0.
Vector2d integrate_radial(const RadialParams& p, Real r0, Real r1, Real step,
                          const Vector2d& init);

/// Sup-norm deviation between the RK4 trajectory seeded at r0 and the
/// closed form, sampled after every step on [r0, r1].
Real rk4_closed_form_sup_error(const RadialParams& p, Real r0, Real r1,
                               Real step);

/// Kind-dependent weights mapping one channel solution (f, g) to the four
/// amplitudes (K, L, M, N) of the full first-order system.
struct WeightedAmplitudes {
  Real K = 0.0;
  Real L = 0.0;
  Real M = 0.0;
  Real N = 0.0;
};

WeightedAmplitudes weighted_amplitudes(RadialKind kind, int J, Real f, Real g);

/// Channel index kappa associated with each substitution family.
int kappa_of(RadialKind kind, int J);

/// Residuals of the eight coupled first-order equations tying together the
/// amplitudes (K, L, M, N, A, B, C, D) at one radius (J >= 1 tower).
/// `values` and `derivs` are ordered (K, L, M, N, A, B, C, D); delta = ±1
/// flips the sign of every mass term. Throws std::domain_error for r <= 0.
Vector8d octet_residual(int J, Real eps, Real mass, int delta, Real r,
                        const Vector8d& values, const Vector8d& derivs);

/// Residuals of the four coupled equations of the J = 0 tower for the
/// amplitudes (M, N, C, D). Throws std::domain_error for r <= 0.
Vector4d quartet_residual(Real eps, Real mass, int delta, Real r,
                          const Vector4d& values, const Vector4d& derivs);

}  // namespace dkwaves
