#include "dkwaves/radial.hpp"

#include "dkwaves/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dkwaves {

namespace {

/// j_n(x) extended to n = -1 (j_{-1}(x) = cos(x)/x).
Real sph_j(int n, Real x) {
  if (n == -1) return std::cos(x) / x;
  return std::sph_bessel(static_cast<unsigned>(n), x);
}

/// x * j_n(x), finite at x = 0 for all n >= -1.
Real x_times_j(int n, Real x) {
  if (n == -1) return std::cos(x);
  return x * std::sph_bessel(static_cast<unsigned>(n), x);
}

Real momentum(const RadialParams& p) {
  const Real p2 = p.eps * p.eps - p.mass * p.mass;
  if (!(p2 > 0.0))
    throw std::domain_error("closed_form_regular: requires eps^2 > mass^2");
  return std::sqrt(p2);
}

}  // namespace

Vector2d unified_rhs(const RadialParams& p, Real r, const Vector2d& fg) {
  if (!(r > 0.0)) throw std::domain_error("unified_rhs: requires r > 0");
  const Real k = static_cast<Real>(p.kappa);
  Vector2d out;
  out(0) = -(k / r) * fg(0) - (p.eps + p.mass) * fg(1);
  out(1) = (k / r) * fg(1) + (p.eps - p.mass) * fg(0);
  return out;
}

RadialValue closed_form_regular(const RadialParams& p, Real r) {
  if (p.kappa == 0)
    throw std::invalid_argument("closed_form_regular: kappa must be nonzero");
  if (!(r > 0.0))
    throw std::domain_error("closed_form_regular: requires r > 0");
  const Real pm = momentum(p);
  const Real x = pm * r;
  const Real ratio = pm / (p.eps + p.mass);
  RadialValue v;
  if (p.kappa > 0) {
    const int l = p.kappa;
    // d/dr [r j_n(pr)] = p r j_{n-1}(pr) - n j_n(pr)
    v.f = r * sph_j(l, x);
    v.df = x_times_j(l - 1, x) - static_cast<Real>(l) * sph_j(l, x);
    v.g = -ratio * r * sph_j(l - 1, x);
    v.dg = -ratio *
           (x_times_j(l - 2, x) - static_cast<Real>(l - 1) * sph_j(l - 1, x));
  } else {
    const int l = -p.kappa;
    v.f = r * sph_j(l - 1, x);
    v.df = x_times_j(l - 2, x) - static_cast<Real>(l - 1) * sph_j(l - 1, x);
    v.g = ratio * r * sph_j(l, x);
    v.dg = ratio * (x_times_j(l - 1, x) - static_cast<Real>(l) * sph_j(l, x));
  }
  return v;
}

Vector2d integrate_radial(const RadialParams& p, Real r0, Real r1, Real step,
                          const Vector2d& init) {
  if (!(r0 > 0.0) || !(r1 > r0))
    throw std::domain_error("integrate_radial: requires 0 < r0 < r1");
  if (!(step > 0.0) || step >= r1 - r0)
    throw std::domain_error("integrate_radial: requires 0 < step < r1 - r0");
  return integrate_rk4<Vector2d>(
      [&p](Real r, const Vector2d& y) { return unified_rhs(p, r, y); }, r0,
      init, r1, step);
}

Real rk4_closed_form_sup_error(const RadialParams& p, Real r0, Real r1,
                               Real step) {
  Real sup = 0.0;
  const RadialValue seed = closed_form_regular(p, r0);
  integrate_rk4<Vector2d>(
      [&p](Real r, const Vector2d& y) { return unified_rhs(p, r, y); }, r0,
      Vector2d(seed.f, seed.g), r1, step, [&](Real r, const Vector2d& y) {
        const RadialValue exact = closed_form_regular(p, r);
        sup = std::max(sup, std::abs(y(0) - exact.f));
        sup = std::max(sup, std::abs(y(1) - exact.g));
      });
  return sup;
}

WeightedAmplitudes weighted_amplitudes(RadialKind kind, int J, Real f, Real g) {
  WeightedAmplitudes w;
  switch (kind) {
    case RadialKind::TypeI: {
      if (J < 1) throw std::invalid_argument("TypeI requires J >= 1");
      const Real wp = 1.0 / std::sqrt(static_cast<Real>(J + 1));
      const Real wm = 1.0 / std::sqrt(static_cast<Real>(J));
      w.K = wp * f;
      w.L = wp * g;
      w.M = wm * f;
      w.N = wm * g;
      break;
    }
    case RadialKind::TypeII: {
      if (J < 1) throw std::invalid_argument("TypeII requires J >= 1");
      const Real wp = 1.0 / std::sqrt(static_cast<Real>(J));
      const Real wm = -1.0 / std::sqrt(static_cast<Real>(J + 1));
      w.K = wp * f;
      w.L = wp * g;
      w.M = wm * f;
      w.N = wm * g;
      break;
    }
    case RadialKind::Scalar:
      w.M = f;
      w.N = g;
      break;
  }
  return w;
}

int kappa_of(RadialKind kind, int J) {
  switch (kind) {
    case RadialKind::TypeI:
      return J + 1;
    case RadialKind::TypeII:
      return -J;
    case RadialKind::Scalar:
      return 1;
  }
  throw std::invalid_argument("unknown radial kind");
}

Vector8d octet_residual(int J, Real eps, Real mass, int delta, Real r,
                        const Vector8d& values, const Vector8d& derivs) {
  if (J < 1) throw std::invalid_argument("octet_residual: J >= 1");
  if (delta != 1 && delta != -1)
    throw std::invalid_argument("octet_residual: delta must be ±1");
  if (!(r > 0.0)) throw std::domain_error("octet_residual: requires r > 0");
  const Real a = std::sqrt(static_cast<Real>(J) * (J + 1));
  const Real m = static_cast<Real>(delta) * mass;
  const Real K = values(0), L = values(1), Mv = values(2), N = values(3);
  const Real A = values(4), B = values(5), C = values(6), D = values(7);
  const Real dK = derivs(0), dL = derivs(1), dM = derivs(2), dN = derivs(3);
  const Real dA = derivs(4), dB = derivs(5), dC = derivs(6), dD = derivs(7);

  Vector8d res;
  res(0) = eps * K - dL + (a / r) * N - m * A;
  res(1) = eps * L + dK + (a / r) * Mv + m * B;
  res(2) = eps * A - dB + (a / r) * D - m * K;
  res(3) = eps * B + dA + (a / r) * C + m * L;
  res(4) = eps * Mv - dN + N / r + (a / r) * L - m * C;
  res(5) = eps * N + dM + Mv / r + (a / r) * K + m * D;
  res(6) = eps * C - dD + D / r + (a / r) * B - m * Mv;
  res(7) = eps * D + dC + C / r + (a / r) * A + m * N;
  return res;
}

Vector4d quartet_residual(Real eps, Real mass, int delta, Real r,
                          const Vector4d& values, const Vector4d& derivs) {
  if (delta != 1 && delta != -1)
    throw std::invalid_argument("quartet_residual: delta must be ±1");
  if (!(r > 0.0))
    throw std::domain_error("quartet_residual: requires r > 0");
  const Real m = static_cast<Real>(delta) * mass;
  const Real Mv = values(0), N = values(1), C = values(2), D = values(3);
  const Real dM = derivs(0), dN = derivs(1), dC = derivs(2), dD = derivs(3);

  Vector4d res;
  res(0) = eps * Mv - dN + N / r - m * C;
  res(1) = eps * N + dM + Mv / r + m * D;
  res(2) = eps * C - dD + D / r - m * Mv;
  res(3) = eps * D + dC + C / r + m * N;
  return res;
}

}  // namespace dkwaves
