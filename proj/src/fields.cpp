#include "dkwaves/fields.hpp"

#include "dkwaves/clifford.hpp"
#include "dkwaves/radial.hpp"
#include "dkwaves/wigner.hpp"

#include <cmath>
#include <stdexcept>

namespace dkwaves {

namespace {

constexpr std::array<int, 4> kTwoS = {+1, -1, +1, -1};

Complex time_radius_prefactor(Real eps, const Point& pt) {
  return std::exp(-I * eps * pt.t) / pt.r;
}

}  // namespace

void validate_mode(const BosonMode& mode) {
  if (mode.delta != 1 && mode.delta != -1)
    throw std::invalid_argument("mode: delta must be ±1");
  if (mode.lambda != 1 && mode.lambda != -1)
    throw std::invalid_argument("mode: lambda must be ±1");
  if (mode.kind == RadialKind::Scalar) {
    if (mode.J != 0 || mode.M != 0)
      throw std::invalid_argument("mode: the scalar tower has J = M = 0");
  } else {
    if (mode.J < 1)
      throw std::invalid_argument("mode: J must be >= 1 for kinds I/II");
    if (std::abs(mode.M) > mode.J)
      throw std::invalid_argument("mode: |M| must not exceed J");
  }
  if (!(mode.mass > 0.0) || !(mode.eps > mode.mass))
    throw std::invalid_argument("mode: requires eps > mass > 0");
}

void validate_mode(const DiracMode& mode) {
  if (mode.delta != 1 && mode.delta != -1)
    throw std::invalid_argument("mode: delta must be ±1");
  if (mode.two_j < 1 || (mode.two_j & 1) == 0)
    throw std::invalid_argument("mode: two_j must be odd and positive");
  if (std::abs(mode.two_m) > mode.two_j || (mode.two_m & 1) == 0)
    throw std::invalid_argument("mode: two_m must be odd with |two_m| <= two_j");
  if (mode.channel < 1 || mode.channel > 4)
    throw std::invalid_argument("mode: channel must be 1..4");
  if (!(mode.mass > 0.0) || !(mode.eps > mode.mass))
    throw std::invalid_argument("mode: requires eps > mass > 0");
}

int sigma_index(int a, int b) {
  if (a < 0 || a > 3 || b < 0 || b > 3)
    throw std::invalid_argument("sigma_index: slots are 0..3");
  return -(kTwoS[a] + kTwoS[b]) / 2;
}

Complex angular_D(int J, int M, int sigma, Real phi, Real theta) {
  return wigner_D(2 * J, -2 * M, 2 * sigma, phi, theta);
}

Matrix4c radial_coefficients(const BosonMode& mode, Real r) {
  return radial_coefficients(mode, r, effective_mass(mode));
}

Matrix4c radial_coefficients(const BosonMode& mode, Real r, Real radial_mass) {
  validate_mode(mode);
  const RadialParams params{mode.eps, radial_mass, kappa_of(mode.kind, mode.J)};
  const RadialValue rv = closed_form_regular(params, r);
  const WeightedAmplitudes w =
      weighted_amplitudes(mode.kind, mode.J, rv.f, rv.g);
  const Real D = static_cast<Real>(mode.delta);
  const Real L = static_cast<Real>(mode.lambda);
  const Complex kp = Complex{w.K, w.L};   // K + iL
  const Complex km = Complex{w.K, -w.L};  // K - iL
  const Complex mp = Complex{w.M, w.N};   // M + iN
  const Complex mm = Complex{w.M, -w.N};  // M - iN

  Matrix4c c;
  if (mode.kind == RadialKind::Scalar) {
    c << 0, L * mp, 0, mp,
        L * mm, 0, mm, 0,
        0, D * mm, 0, D * L * mm,
        D * mp, 0, D * L * mp, 0;
  } else {
    c << L * kp, L * mp, kp, mp,
        L * mm, L * km, mm, km,
        D * km, D * mm, D * L * km, D * L * mm,
        D * mp, D * kp, D * L * mp, D * L * kp;
  }
  return c / std::sqrt(2.0);
}

Matrix4c eval_U(const BosonMode& mode, const Point& pt) {
  const Matrix4c c = radial_coefficients(mode, pt.r);
  const Complex pref = time_radius_prefactor(mode.eps, pt);
  Matrix4c U;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (c(a, b) == Complex{0.0, 0.0}) {
        U(a, b) = Complex{0.0, 0.0};
        continue;
      }
      U(a, b) =
          pref * c(a, b) * angular_D(mode.J, mode.M, sigma_index(a, b), pt.phi, pt.theta);
    }
  }
  return U;
}

namespace {

Matrix4c central_difference(const std::function<Matrix4c(const Point&)>& field,
                            const Point& pt, int coordinate, Real h) {
  Point plus = pt;
  Point minus = pt;
  switch (coordinate) {
    case 0:
      plus.t += h;
      minus.t -= h;
      break;
    case 1:
      plus.r += h;
      minus.r -= h;
      break;
    case 2:
      plus.theta += h;
      minus.theta -= h;
      break;
    case 3:
      plus.phi += h;
      minus.phi -= h;
      break;
    default:
      throw std::invalid_argument("central_difference: coordinate 0..3");
  }
  return (field(plus) - field(minus)) / (2.0 * h);
}

}  // namespace

Real dk_residual_of(const std::function<Matrix4c(const Point&)>& field,
                    Real mass, const Point& pt, Real fd_step) {
  // The stencil needs a margin around the coordinate singularities at
  // r = 0 and sin(theta) = 0 to stay well conditioned.
  if (!(fd_step > 0.0))
    throw std::domain_error("dk_residual: fd_step must be positive");
  if (!(pt.r > 10.0 * fd_step))
    throw std::domain_error("dk_residual: point too close to r = 0");
  if (std::abs(std::sin(pt.theta)) < 10.0 * fd_step)
    throw std::domain_error("dk_residual: point too close to a pole");
  const auto& basis = gamma_basis();
  const Matrix4c U = field(pt);
  const Matrix4c dt = central_difference(field, pt, 0, fd_step);
  const Matrix4c dr = central_difference(field, pt, 1, fd_step);
  const Matrix4c dth = central_difference(field, pt, 2, fd_step);
  const Matrix4c dph = central_difference(field, pt, 3, fd_step);

  const Real sin_t = std::sin(pt.theta);
  const Real cos_t = std::cos(pt.theta);

  Matrix4c res = I * basis.gamma[0] * dt + I * basis.gamma[3] * dr;
  res += (I / pt.r) * (basis.gamma[1] * bilateral_generator(3, 1, U) +
                       basis.gamma[2] * bilateral_generator(3, 2, U));
  res += (1.0 / pt.r) * (I * basis.gamma[1] * dth +
                         basis.gamma[2] *
                             (I * dph + I * cos_t * bilateral_generator(1, 2, U)) /
                             sin_t);
  res -= mass * U;
  const Real scale = U.norm();
  return scale > 0.0 ? res.norm() / scale : res.norm();
}

Real dk_residual(const BosonMode& mode, const Point& pt, Real fd_step) {
  return dk_residual_of(
      [&mode](const Point& p) { return eval_U(mode, p); }, mode.mass, pt,
      fd_step);
}

Matrix4c sigma_theta_phi(const std::function<Matrix4c(Real, Real)>& field,
                         Real theta, Real phi, Real fd_step) {
  const auto& basis = gamma_basis();
  const Matrix4c T = field(theta, phi);
  const Matrix4c dth =
      (field(theta + fd_step, phi) - field(theta - fd_step, phi)) /
      (2.0 * fd_step);
  const Matrix4c dph =
      (field(theta, phi + fd_step) - field(theta, phi - fd_step)) /
      (2.0 * fd_step);
  const Real sin_t = std::sin(theta);
  const Real cos_t = std::cos(theta);
  return I * basis.gamma[1] * dth +
         basis.gamma[2] * (I * dph + I * cos_t * bilateral_generator(1, 2, T)) /
             sin_t;
}

Real sigma_action_residual(int J, int M, Real theta, Real phi,
                           const Matrix4c& coeff, Real fd_step) {
  if (J < 1)
    throw std::invalid_argument("sigma_action_residual: requires J >= 1");
  if (std::abs(std::sin(theta)) < 1e-8)
    throw std::domain_error("sigma_action_residual: singular at the poles");
  auto field = [&](Real th, Real ph) {
    Matrix4c T;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        T(a, b) = coeff(a, b) * angular_D(J, M, sigma_index(a, b), ph, th);
    return T;
  };
  const Matrix4c got = sigma_theta_phi(field, theta, phi, fd_step);

  // Closed form: row a of the image uses the coefficient row paired by
  // a <-> 3-a, carrying signs (-, +, +, -), with row a's own angular pattern.
  const Real amp = std::sqrt(static_cast<Real>(J) * (J + 1));
  constexpr std::array<Real, 4> row_sign = {-1.0, 1.0, 1.0, -1.0};
  Matrix4c expected;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      expected(a, b) = I * amp * row_sign[a] * coeff(3 - a, b) *
                       angular_D(J, M, sigma_index(a, b), phi, theta);
  return (got - expected).norm();
}

Real sigma_action_check(int J, int M, Real theta, Real phi, Real fd_step) {
  return sigma_action_residual(J, M, theta, phi, Matrix4c::Ones(), fd_step);
}

ParityCheck parity_check(const BosonMode& mode, const Point& pt) {
  const Matrix4c U = eval_U(mode, pt);
  Point reflected = pt;
  reflected.theta = M_PI - pt.theta;
  reflected.phi = pt.phi + M_PI;
  const Matrix4c PU = parity_matrix_action(eval_U(mode, reflected));
  const Real norm = U.norm();
  const Real plus = (PU - U).norm() / norm;
  const Real minus = (PU + U).norm() / norm;
  ParityCheck out;
  out.sign = plus <= minus ? +1 : -1;
  out.mismatch = std::min(plus, minus);
  return out;
}

Vector4c psi_column(int two_j, int two_m, int delta, Real F, Real G,
                    Real theta, Real phi) {
  const Complex Dm = wigner_D(two_j, -two_m, -1, phi, theta);
  const Complex Dp = wigner_D(two_j, -two_m, +1, phi, theta);
  const Complex fp = Complex{F, G};   // F + iG
  const Complex fm = Complex{F, -G};  // F - iG
  const Real d = static_cast<Real>(delta);
  Vector4c col;
  col << Dm * fp, Dp * fm, d * Dm * fm, d * Dp * fp;
  return col / std::sqrt(2.0);
}

Vector4c eval_Psi(const DiracMode& mode, const Point& pt) {
  validate_mode(mode);
  const int kappa = (mode.two_j + 1) / 2;
  const RadialParams params{mode.eps, static_cast<Real>(mode.delta) * mode.mass,
                            kappa};
  const RadialValue rv = closed_form_regular(params, pt.r);
  return time_radius_prefactor(mode.eps, pt) *
         psi_column(mode.two_j, mode.two_m, mode.delta, rv.f, rv.g, pt.theta,
                    pt.phi);
}

}  // namespace dkwaves
