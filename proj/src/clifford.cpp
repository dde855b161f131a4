#include "dkwaves/clifford.hpp"

#include <stdexcept>

namespace dkwaves {

const std::array<Matrix2c, 3>& pauli_matrices() {
  static const std::array<Matrix2c, 3> paulis = [] {
    std::array<Matrix2c, 3> p;
    p[0] << 0, 1, 1, 0;
    p[1] << 0, -I, I, 0;
    p[2] << 1, 0, 0, -1;
    return p;
  }();
  return paulis;
}

const GammaBasis& gamma_basis() {
  static const GammaBasis basis = [] {
    GammaBasis b;
    const auto& p = pauli_matrices();
    const Matrix2c id2 = Matrix2c::Identity();
    const Matrix2c zero2 = Matrix2c::Zero();

    auto blocks = [](const Matrix2c& tl, const Matrix2c& tr,
                     const Matrix2c& bl, const Matrix2c& br) {
      Matrix4c m;
      m.block<2, 2>(0, 0) = tl;
      m.block<2, 2>(0, 2) = tr;
      m.block<2, 2>(2, 0) = bl;
      m.block<2, 2>(2, 2) = br;
      return m;
    };

    b.gamma[0] = blocks(zero2, id2, id2, zero2);
    for (int k = 0; k < 3; ++k)
      b.gamma[k + 1] = blocks(zero2, -p[k], p[k], zero2);

    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c)
        b.sigma[a][c] =
            0.25 * (b.gamma[a] * b.gamma[c] - b.gamma[c] * b.gamma[a]);
    return b;
  }();
  return basis;
}

Matrix4c bilateral_generator(int a, int b, const Matrix4c& U) {
  if (a < 0 || a > 3 || b < 0 || b > 3)
    throw std::invalid_argument("bilateral_generator: indices must be 0..3");
  const Matrix4c& s = gamma_basis().sigma[a][b];
  return s * U + U * s.transpose();
}

Matrix4c parity_matrix_action(const Matrix4c& U) {
  Matrix4c pi = Matrix4c::Zero();
  pi(0, 3) = pi(1, 2) = pi(2, 1) = pi(3, 0) = -1.0;
  return pi * U * pi;
}

Matrix16c kron(const Matrix4c& A, const Matrix4c& B) {
  Matrix16c out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.block<4, 4>(4 * i, 4 * j) = A(i, j) * B;
  return out;
}

Vector16c vec_rowmajor(const Matrix4c& U) {
  Vector16c v;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      v(4 * i + j) = U(i, j);
  return v;
}

Matrix4c unvec_rowmajor(const Vector16c& v) {
  Matrix4c U;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      U(i, j) = v(4 * i + j);
  return U;
}

}  // namespace dkwaves
