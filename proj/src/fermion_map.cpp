#include "dkwaves/fermion_map.hpp"

#include "dkwaves/clifford.hpp"
#include "dkwaves/radial.hpp"
#include "dkwaves/wigner.hpp"

#include <cmath>
#include <stdexcept>

namespace dkwaves {

namespace {

Complex time_radius_prefactor(Real eps, const Point& pt) {
  return std::exp(-I * eps * pt.t) / pt.r;
}

}  // namespace

Matrix2c gauge_block(Real theta, Real phi) {
  const Real c = std::cos(0.5 * theta);
  const Real s = std::sin(0.5 * theta);
  const Complex em = std::exp(-I * (0.5 * phi));
  const Complex ep = std::exp(I * (0.5 * phi));
  Matrix2c w;
  w << c * em, -s * em, s * ep, c * ep;
  return w;
}

Matrix4c gauge_matrix(Real theta, Real phi) {
  const Matrix2c w = gauge_block(theta, phi);
  Matrix4c s = Matrix4c::Zero();
  s.block<2, 2>(0, 0) = w;
  s.block<2, 2>(2, 2) = w;
  return s;
}

const Matrix4c& connection_theta() {
  static const Matrix4c G = gamma_basis().sigma[3][1];
  return G;
}

Matrix4c connection_phi(Real theta) {
  const auto& basis = gamma_basis();
  return std::sin(theta) * basis.sigma[3][2] +
         std::cos(theta) * basis.sigma[1][2];
}

Matrix4c transform_to_V(const Matrix4c& U, Real theta, Real phi,
                        GaugeSide side) {
  const Matrix4c S = gauge_matrix(theta, phi);
  if (side == GaugeSide::Second) return U * S.transpose();
  return S * U;
}

Real cancellation_residual_with_block(
    const std::function<Matrix2c(Real, Real)>& block, Real theta, Real phi,
    Real fd_step) {
  if (std::abs(std::sin(theta)) < 1e-8)
    throw std::domain_error("cancellation_residual: singular at the poles");
  auto full = [&block](Real th, Real ph) {
    Matrix4c s = Matrix4c::Zero();
    const Matrix2c w = block(th, ph);
    s.block<2, 2>(0, 0) = w;
    s.block<2, 2>(2, 2) = w;
    return s;
  };
  const Matrix4c S = full(theta, phi);
  const Matrix4c Sinv = S.inverse();
  const Matrix4c dth_inv =
      (full(theta + fd_step, phi).inverse() -
       full(theta - fd_step, phi).inverse()) /
      (2.0 * fd_step);
  const Matrix4c dph_inv =
      (full(theta, phi + fd_step).inverse() -
       full(theta, phi - fd_step).inverse()) /
      (2.0 * fd_step);
  const Real res_theta =
      (S * connection_theta() * Sinv + S * dth_inv).norm();
  const Real res_phi = (S * connection_phi(theta) * Sinv + S * dph_inv).norm();
  return std::max(res_theta, res_phi);
}

Real cancellation_residual(Real theta, Real phi, Real fd_step) {
  return cancellation_residual_with_block(
      [](Real th, Real ph) { return gauge_block(th, ph); }, theta, phi,
      fd_step);
}

namespace {

Vector4c column_operator(const std::function<Vector4c(const Point&)>& field,
                         Real mass, const Point& pt, Real h) {
  const auto& basis = gamma_basis();
  auto diff = [&field, h](const Point& pt0, int coord) {
    Point plus = pt0;
    Point minus = pt0;
    switch (coord) {
      case 0: plus.t += h; minus.t -= h; break;
      case 1: plus.r += h; minus.r -= h; break;
      case 2: plus.theta += h; minus.theta -= h; break;
      default: plus.phi += h; minus.phi -= h; break;
    }
    return Vector4c((field(plus) - field(minus)) / (2.0 * h));
  };
  const Vector4c psi = field(pt);
  const Real sin_t = std::sin(pt.theta);
  Vector4c res = I * basis.gamma[0] * diff(pt, 0) +
                 I * basis.gamma[3] * diff(pt, 1);
  res += (I / pt.r) * basis.gamma[1] * (diff(pt, 2) + connection_theta() * psi);
  res += (I / (pt.r * sin_t)) * basis.gamma[2] *
         (diff(pt, 3) + connection_phi(pt.theta) * psi);
  res -= mass * psi;
  return res;
}

}  // namespace

Real dirac_residual_of(const std::function<Vector4c(const Point&)>& field,
                       Real mass, const Point& pt, Real fd_step) {
  const Real scale = field(pt).norm();
  const Real res = column_operator(field, mass, pt, fd_step).norm();
  return scale > 0.0 ? res / scale : res;
}

Real dirac_residual(const DiracMode& mode, const Point& pt, Real fd_step) {
  return dirac_residual_of(
      [&mode](const Point& p) { return eval_Psi(mode, p); }, mode.mass, pt,
      fd_step);
}

Vector4d dirac_residual_columns(
    const std::function<Matrix4c(const Point&)>& field, Real mass,
    const Point& pt, Real fd_step) {
  const Real field_scale = field(pt).norm();
  Vector4d out;
  for (int c = 0; c < 4; ++c) {
    auto column = [&field, c](const Point& p) {
      return Vector4c(field(p).col(c));
    };
    const Real scale = column(pt).norm();
    const Real res = column_operator(column, mass, pt, fd_step).norm();
    // A column that vanishes within rounding has no scale of its own; its
    // residual is then measured against the whole field.
    if (scale > 1e-12 * field_scale)
      out(c) = res / scale;
    else
      out(c) = field_scale > 0.0 ? res / field_scale : res;
  }
  return out;
}

namespace {

struct BlockFactor {
  HalfFactor factor;
  Real extra;
};

/// Entry (row, col) of the half-angle block W as a labeled factor.
BlockFactor block_entry(int row, int col) {
  if (row == 0 && col == 0) return {HalfFactor::CosExpMinus, 1.0};
  if (row == 0 && col == 1) return {HalfFactor::SinExpMinus, -1.0};
  if (row == 1 && col == 0) return {HalfFactor::SinExpPlus, 1.0};
  return {HalfFactor::CosExpPlus, 1.0};
}

}  // namespace

SplitWave split_half_integer(const BosonMode& mode, const Point& pt) {
  const Matrix4c cmat = radial_coefficients(mode, pt.r);
  const Complex pref = time_radius_prefactor(mode.eps, pt);
  SplitWave out;
  for (int a = 0; a < 4; ++a) {
    for (int c = 0; c < 4; ++c) {
      const int block = (c / 2) * 2;  // first column of c's diagonal block
      Complex minus{0.0, 0.0};
      Complex plus{0.0, 0.0};
      for (int b = block; b < block + 2; ++b) {
        if (cmat(a, b) == Complex{0.0, 0.0}) continue;
        const BlockFactor bf = block_entry(c % 2, b % 2);
        const auto terms = coupling_expand(bf.factor, mode.J, mode.M,
                                           2 * sigma_index(a, b));
        const Complex weight = cmat(a, b) * bf.extra;
        if (terms[0].coeff != 0.0)
          minus += weight * terms[0].coeff *
                   wigner_D(terms[0].two_j, terms[0].two_m1, terms[0].two_m2,
                            pt.phi, pt.theta);
        if (terms[1].coeff != 0.0)
          plus += weight * terms[1].coeff *
                  wigner_D(terms[1].two_j, terms[1].two_m1, terms[1].two_m2,
                           pt.phi, pt.theta);
      }
      out.minus(a, c) = pref * minus;
      out.plus(a, c) = pref * plus;
    }
  }
  return out;
}

std::pair<Complex, Complex> radial_bundles(const BosonMode& mode, Real r,
                                           int branch) {
  if (mode.kind == RadialKind::Scalar)
    throw std::invalid_argument("radial_bundles: requires J >= 1");
  if (branch != 1 && branch != -1)
    throw std::invalid_argument("radial_bundles: branch must be ±1");
  const int J = mode.J;
  const RadialParams params{mode.eps, effective_mass(mode),
                            kappa_of(mode.kind, J)};
  const RadialValue rv = closed_form_regular(params, r);
  const WeightedAmplitudes w = weighted_amplitudes(mode.kind, J, rv.f, rv.g);
  const Real sj = std::sqrt(static_cast<Real>(J));
  const Real sj1 = std::sqrt(static_cast<Real>(J + 1));
  const Real norm = std::sqrt(static_cast<Real>(J) * (J + 1) /
                              static_cast<Real>(2 * J + 1));
  const Complex kp{w.K, w.L}, km{w.K, -w.L};
  const Complex mp{w.M, w.N}, mm{w.M, -w.N};
  if (branch == -1)
    return {norm * (sj1 * kp - sj * mp), norm * (sj1 * km - sj * mm)};
  return {norm * (sj * kp + sj1 * mp), norm * (sj * km + sj1 * mm)};
}

int surviving_branch(const BosonMode& mode) {
  return mode.kind == RadialKind::TypeII ? -1 : +1;
}

std::array<ExpansionTerm, 4> expansion_coefficients(const BosonMode& mode) {
  validate_mode(mode);
  const int J = mode.J;
  const int M = mode.M;
  const Real lam = static_cast<Real>(mode.lambda);
  const int sign_eff = effective_mass(mode) > 0.0 ? +1 : -1;
  std::array<ExpansionTerm, 4> terms{};

  switch (mode.kind) {
    case RadialKind::TypeI: {
      const Real jj = static_cast<Real>(J) * (J + 1);
      const Real alpha = std::sqrt(static_cast<Real>(J - M + 1) / jj);
      const Real beta = std::sqrt(static_cast<Real>(J + M + 1) / jj);
      const int delta = sign_eff;
      terms[0] = {Complex{lam * alpha, 0.0}, 2 * J + 1, 2 * M - 1, delta};
      terms[1] = {Complex{lam * beta, 0.0}, 2 * J + 1, 2 * M + 1, delta};
      terms[2] = {Complex{alpha, 0.0}, 2 * J + 1, 2 * M - 1, delta};
      terms[3] = {Complex{beta, 0.0}, 2 * J + 1, 2 * M + 1, delta};
      break;
    }
    case RadialKind::TypeII: {
      const Real jj = static_cast<Real>(J) * (J + 1);
      const Real rho = std::sqrt(static_cast<Real>(J + M) / jj);
      const Real sig = std::sqrt(static_cast<Real>(J - M) / jj);
      const int delta = -sign_eff;
      terms[0] = {lam * I * rho, 2 * J - 1, 2 * M - 1, delta};
      terms[1] = {-lam * I * sig, 2 * J - 1, 2 * M + 1, delta};
      terms[2] = {I * rho, 2 * J - 1, 2 * M - 1, delta};
      terms[3] = {-I * sig, 2 * J - 1, 2 * M + 1, delta};
      break;
    }
    case RadialKind::Scalar: {
      const int delta = sign_eff;
      terms[0] = {Complex{lam, 0.0}, 1, -1, delta};
      terms[1] = {Complex{lam, 0.0}, 1, +1, delta};
      terms[2] = {Complex{1.0, 0.0}, 1, -1, delta};
      terms[3] = {Complex{1.0, 0.0}, 1, +1, delta};
      break;
    }
  }
  return terms;
}

namespace {

/// Radial pair (F, G) matching the spinor waves of the surviving sector.
Vector2d matched_spinor_radials(const BosonMode& mode, Real r) {
  const RadialParams params{mode.eps, effective_mass(mode),
                            kappa_of(mode.kind, mode.J)};
  const RadialValue rv = closed_form_regular(params, r);
  if (mode.kind == RadialKind::TypeII) return {rv.g, -rv.f};
  return {rv.f, rv.g};
}

}  // namespace

ExpansionReport verify_expansion(const BosonMode& mode,
                                 const std::vector<Point>& pts) {
  ExpansionReport report;
  report.branch = surviving_branch(mode);
  report.terms = expansion_coefficients(mode);

  for (const Point& pt : pts) {
    const SplitWave split = split_half_integer(mode, pt);
    const Matrix4c& live = report.branch > 0 ? split.plus : split.minus;
    const Matrix4c& dead = report.branch > 0 ? split.minus : split.plus;
    const Real scale = live.norm();
    if (!(scale > 0.0))
      throw std::runtime_error("verify_expansion: vanishing sector norm");
    report.off_branch_norm =
        std::max(report.off_branch_norm, dead.norm() / scale);

    const Vector2d fg = matched_spinor_radials(mode, pt.r);
    const Complex pref = time_radius_prefactor(mode.eps, pt);
    for (int c = 0; c < 4; ++c) {
      const ExpansionTerm& term = report.terms[c];
      Real res;
      if (term.coeff == Complex{0.0, 0.0}) {
        res = live.col(c).norm() / scale;
      } else {
        const Vector4c rhs = pref * term.coeff *
                             psi_column(term.two_j, term.two_m, term.delta,
                                        fg(0), fg(1), pt.theta, pt.phi);
        res = (live.col(c) - rhs).norm() / scale;
      }
      report.max_residual = std::max(report.max_residual, res);
    }
  }
  return report;
}

}  // namespace dkwaves
