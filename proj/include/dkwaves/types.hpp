#pragma once

#include <Eigen/Dense>
#include <complex>

namespace dkwaves {

using Real = double;
using Complex = std::complex<Real>;

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;
using Vector2d = Eigen::Vector2d;
using Vector4c = Eigen::Vector4cd;
using Vector16c = Eigen::Matrix<Complex, 16, 1>;

inline constexpr Complex I{0.0, 1.0};

/// Spacetime sample point in the static spherical chart (t, r, theta, phi).
struct Point {
  Real t = 0.0;
  Real r = 1.0;
  Real theta = 1.0;
  Real phi = 0.5;
};

/// Radial substitution family selecting which half-integer sector survives.
enum class RadialKind {
  TypeI,   ///< weights (1/sqrt(J+1), 1/sqrt(J)), kappa = J+1
  TypeII,  ///< weights (1/sqrt(J), -1/sqrt(J+1)), kappa = -J
  Scalar   ///< the J = 0 tower (single substitution)
};

/// One matrix-wave mode: discrete labels plus the continuous (eps, mass) pair.
/// `delta` and `lambda` are the two ±1 constraint signs; eps is the frequency.
struct BosonMode {
  RadialKind kind = RadialKind::TypeI;
  int J = 1;          ///< orbital label, J >= 1 (ignored for Scalar)
  int M = 0;          ///< azimuthal label, |M| <= J
  int delta = +1;     ///< ±1
  int lambda = +1;    ///< ±1
  Real eps = 2.0;     ///< frequency, eps > |mass| for the regular branch
  Real mass = 1.0;    ///< mass parameter of the first-order system
};

/// One spinor-wave mode; half-integers are stored doubled (two_j = 2j, ...).
struct DiracMode {
  int two_j = 1;      ///< doubled total angular momentum, odd and positive
  int two_m = 1;      ///< doubled projection, |two_m| <= two_j, odd
  int delta = +1;     ///< ±1, sign of the mass term
  Real eps = 2.0;
  Real mass = 1.0;
  int channel = 1;    ///< which of the four identical copies (1..4); metadata
};

/// Effective mass entering the first-order radial system of a boson mode.
inline Real effective_mass(const BosonMode& mode) {
  return static_cast<Real>(mode.delta * mode.lambda) * mode.mass;
}

}  // namespace dkwaves
