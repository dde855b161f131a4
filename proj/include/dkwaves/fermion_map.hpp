#pragma once

#include "dkwaves/fields.hpp"
#include "dkwaves/radial.hpp"
#include "dkwaves/types.hpp"

#include <array>
#include <functional>
#include <utility>
#include <vector>

namespace dkwaves {

/// Half-angle rotation block W = e^{-i (phi/2) s3} e^{-i (theta/2) s2}:
///   [ cos(t/2) e^{-i phi/2}   -sin(t/2) e^{-i phi/2} ]
///   [ sin(t/2) e^{+i phi/2}    cos(t/2) e^{+i phi/2} ]
Matrix2c gauge_block(Real theta, Real phi);

/// Block-diagonal gauge matrix S = diag(W, W).
Matrix4c gauge_matrix(Real theta, Real phi);

/// Spinor connection of the diagonal spherical frame: the t and r legs
/// vanish, the theta leg is constant, the phi leg depends on theta.
const Matrix4c& connection_theta();
Matrix4c connection_phi(Real theta);

/// Which index of the matrix wave the gauge matrix acts on.
enum class GaugeSide {
  Second,  ///< V = U S^T (the action that splits the system)
  First    ///< V = S U (kept as a negative control)
};

Matrix4c transform_to_V(const Matrix4c& U, Real theta, Real phi,
                        GaugeSide side = GaugeSide::Second);

/// Residual of S Gamma_leg S^{-1} + S d_leg(S^{-1}) over both angular legs
/// (max of the two Frobenius norms; derivative by centered difference).
/// Zero means the gauge matrix absorbs the connection exactly. The second
/// form substitutes a custom half-angle block.
Real cancellation_residual(Real theta, Real phi, Real fd_step = 1e-6);
Real cancellation_residual_with_block(
    const std::function<Matrix2c(Real, Real)>& block, Real theta, Real phi,
    Real fd_step = 1e-6);

/// Residual of the covariant column operator
///   i g0 dt + i g3 dr + (i/r) g1 (dtheta + Gtheta) +
///   (i/(r sin theta)) g2 (dphi + Gphi) - mass
/// on a column field, relative to the column norm at the point.
Real dirac_residual_of(const std::function<Vector4c(const Point&)>& field,
                       Real mass, const Point& pt, Real fd_step = 1e-4);

/// Same residual on the spinor wave of `mode` (operator mass = mode.mass;
/// the delta label selects the sign of the mass in the radial channel).
Real dirac_residual(const DiracMode& mode, const Point& pt,
                    Real fd_step = 1e-4);

/// Columnwise residuals for a matrix field under the same operator; each
/// column is measured against its own norm, except that a column vanishing
/// within rounding is measured against the norm of the whole field.
Vector4d dirac_residual_columns(
    const std::function<Matrix4c(const Point&)>& field, Real mass,
    const Point& pt, Real fd_step = 1e-4);

/// The gauge-transformed wave of a mode decomposed into its two
/// half-integer sectors with second indices j = J -/+ 1/2. Every product of
/// a half-angle factor with a rotation function is expanded exactly, so the
/// decomposition is pointwise and involves no division. The two sectors sum
/// to transform_to_V(eval_U(mode), ...).
struct SplitWave {
  Matrix4c minus = Matrix4c::Zero();  ///< j = J - 1/2 sector
  Matrix4c plus = Matrix4c::Zero();   ///< j = J + 1/2 sector
};
SplitWave split_half_integer(const BosonMode& mode, const Point& pt);

/// Radial bundles (H+, H-) of the requested sector (branch = -1 or +1),
/// normalized so the surviving sector carries sqrt(2J+1) (f ± i g):
///   branch -1: sqrt(J(J+1)/(2J+1)) [ sqrt(J+1)(K±iL) - sqrt(J)(M±iN) ]
///   branch +1: sqrt(J(J+1)/(2J+1)) [ sqrt(J)(K±iL) + sqrt(J+1)(M±iN) ]
/// Kind I annihilates the branch -1 pair, kind II the branch +1 pair.
std::pair<Complex, Complex> radial_bundles(const BosonMode& mode, Real r,
                                           int branch);

/// One column of the surviving sector written as coeff times a spinor wave.
struct ExpansionTerm {
  Complex coeff{0.0, 0.0};
  int two_j = 1;
  int two_m = 1;
  int delta = 1;
};

/// The four column coefficients of the surviving sector of `mode`, in
/// closed form. Out-of-range targets (|two_m| > two_j) carry coeff = 0.
std::array<ExpansionTerm, 4> expansion_coefficients(const BosonMode& mode);

/// Which sector survives: +1 (kind I and the scalar tower) or -1 (kind II).
int surviving_branch(const BosonMode& mode);

struct ExpansionReport {
  int branch = +1;  ///< surviving sector (see surviving_branch)
  std::array<ExpansionTerm, 4> terms{};
  Real max_residual = 0.0;     ///< sup over points/columns, relative
  Real off_branch_norm = 0.0;  ///< sup |V_dead| / |V_live| over points
};

/// Certify that every column of the surviving sector equals
/// coeff * spinor wave (with the radial pair matched to the mode's channel)
/// and that the complementary sector vanishes, over the given points.
ExpansionReport verify_expansion(const BosonMode& mode,
                                 const std::vector<Point>& pts);

}  // namespace dkwaves
