#pragma once

#include "dkwaves/types.hpp"

#include <array>

namespace dkwaves {

/// Flat-space Dirac matrices in the chiral-like block representation used
/// throughout this library, together with the generators sigma^{ab}.
/// Index order is (0,1,2,3) = (t, x1, x2, x3); metric signature (+,-,-,-).
struct GammaBasis {
  std::array<Matrix4c, 4> gamma;           ///< gamma[a] = gamma^a
  std::array<std::array<Matrix4c, 4>, 4> sigma;  ///< sigma[a][b] = 1/4 [g^a, g^b]
};

/// The frozen representation: gamma^0 off-diagonal identity blocks,
/// gamma^k off-diagonal (-sigma_k, +sigma_k) blocks.
const GammaBasis& gamma_basis();

/// Pauli matrices sigma_1..sigma_3 (index 0..2).
const std::array<Matrix2c, 3>& pauli_matrices();

/// Two-sided rotation generator acting on a matrix field:
///   J^{ab} U = sigma^{ab} U + U (sigma^{ab})^T.
Matrix4c bilateral_generator(int a, int b, const Matrix4c& U);

/// Matrix part of the space-reflection action: Pi U Pi with
/// Pi = antidiag(-1,-1,-1,-1). The angular part (theta,phi) ->
/// (pi - theta, phi + pi) is applied by callers on the field argument.
Matrix4c parity_matrix_action(const Matrix4c& U);

/// 16x16 matrix of the linear map U -> A U B^T in row-major vec ordering,
/// i.e. vec(A U B^T) = (A (x) B) vec(U). Used as an independent oracle for
/// bilateral actions and ordering conventions.
Matrix16c kron(const Matrix4c& A, const Matrix4c& B);

/// Row-major vec of a 4x4 matrix and its inverse.
Vector16c vec_rowmajor(const Matrix4c& U);
Matrix4c unvec_rowmajor(const Vector16c& v);

}  // namespace dkwaves
