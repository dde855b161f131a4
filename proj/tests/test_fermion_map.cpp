#include "dkwaves/fermion_map.hpp"

#include "dkwaves/clifford.hpp"
#include "dkwaves/fields.hpp"
#include "dkwaves/radial.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

namespace {

using namespace dkwaves;

BosonMode make_mode(RadialKind kind, int J, int M, int delta, int lambda) {
  BosonMode m;
  m.kind = kind;
  m.J = J;
  m.M = M;
  m.delta = delta;
  m.lambda = lambda;
  m.eps = 2.0;
  m.mass = 1.0;
  return m;
}

std::function<Matrix4c(const Point&)> gauged_field(const BosonMode& m,
                                                   GaugeSide side) {
  return [m, side](const Point& q) {
    return transform_to_V(eval_U(m, q), q.theta, q.phi, side);
  };
}

}  // namespace

TEST_SUITE("fermion_map") {

TEST_CASE("half-angle block is special unitary and sign-double-valued") {
  CHECK((gauge_block(0.0, 0.0) - Matrix2c::Identity()).norm() == 0.0);

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<Real> uth(0.05, M_PI - 0.05), uph(0.0, 12.0);
  for (int i = 0; i < 100; ++i) {
    const Real th = uth(rng), ph = uph(rng);
    const Matrix2c W = gauge_block(th, ph);
    CHECK(std::abs(W.determinant() - Complex(1.0, 0.0)) < 1e-13);
    CHECK((W * W.adjoint() - Matrix2c::Identity()).norm() < 1e-13);
    CHECK((gauge_block(th, ph + 4.0 * M_PI) - W).norm() < 1e-12);
    CHECK((gauge_block(th, ph + 2.0 * M_PI) + W).norm() < 1e-12);
  }

  // gauge matrix stacks two copies of the block
  const Matrix4c S = gauge_matrix(1.1, 0.7);
  const Matrix2c W = gauge_block(1.1, 0.7);
  CHECK((S.block<2, 2>(0, 0) - W).norm() == 0.0);
  CHECK((S.block<2, 2>(2, 2) - W).norm() == 0.0);
  CHECK(S.block<2, 2>(0, 2).norm() == 0.0);
  CHECK(S.block<2, 2>(2, 0).norm() == 0.0);
}

TEST_CASE("connection legs match the generator combinations") {
  const GammaBasis& gb = gamma_basis();
  CHECK((connection_theta() - gb.sigma[3][1]).norm() < 1e-15);
  for (Real th : {0.3, 1.0, 2.5}) {
    const Matrix4c want =
        std::sin(th) * gb.sigma[3][2] + std::cos(th) * gb.sigma[1][2];
    CHECK((connection_phi(th) - want).norm() < 1e-15);
  }
}

TEST_CASE("gauge matrix absorbs the connection on both angular legs") {
  for (Real th : {0.3, 0.9, 1.5, 2.4})
    for (Real ph : {0.0, 1.2, 4.9})
      CHECK(cancellation_residual(th, ph) < 1e-9);

  // the cancellation is nontrivial: the bare S d(S^{-1}) term alone is O(1)
  const Real th = 1.0, ph = 0.7, h = 1e-6;
  const Matrix4c dSi = (gauge_matrix(th + h, ph).inverse() -
                        gauge_matrix(th - h, ph).inverse()) /
                       (2.0 * h);
  CHECK((gauge_matrix(th, ph) * dSi).norm() > 0.1);
}

TEST_CASE("misprinted half-angle blocks fail the cancellation") {
  // swapped off-diagonal signs
  auto swapped = [](Real th, Real ph) {
    Matrix2c W;
    const Complex em = std::exp(-I * ph / 2.0), ep = std::exp(I * ph / 2.0);
    W << std::cos(th / 2.0) * em, std::sin(th / 2.0) * em,
        -std::sin(th / 2.0) * ep, std::cos(th / 2.0) * ep;
    return W;
  };
  auto identity = [](Real, Real) { return Matrix2c::Identity().eval(); };
  CHECK(cancellation_residual_with_block(swapped, 1.0, 0.7) > 0.1);
  CHECK(cancellation_residual_with_block(identity, 1.0, 0.7) > 0.1);
  // the true block, routed through the same probe, passes
  auto good = [](Real th, Real ph) { return gauge_block(th, ph); };
  CHECK(cancellation_residual_with_block(good, 1.0, 0.7) < 1e-9);
}

TEST_CASE("gauge transform is invertible and trivial at the frame origin") {
  const Matrix4c U = eval_U(make_mode(RadialKind::TypeI, 1, 0, +1, +1),
                            Point{0.2, 1.7, 1.3, 0.9});
  CHECK((transform_to_V(U, 0.0, 0.0) - U).norm() == 0.0);

  const Real th = 1.3, ph = 0.9;
  const Matrix4c V = transform_to_V(U, th, ph);
  const Matrix4c back =
      V * gauge_matrix(th, ph).transpose().inverse();
  CHECK((back - U).norm() < 1e-13 * U.norm());

  // the two sides act differently
  const Matrix4c Vfirst = transform_to_V(U, th, ph, GaugeSide::First);
  CHECK((Vfirst - gauge_matrix(th, ph) * U).norm() == 0.0);
  CHECK((V - Vfirst).norm() > 1e-3);
}

TEST_CASE("columns of the transformed wave obey the column equation") {
  const Point pts[2] = {{0.3, 2.0, 1.1, 0.8}, {0.9, 3.4, 2.1, 4.2}};
  for (auto kind : {RadialKind::TypeI, RadialKind::TypeII})
    for (int J : {1, 2})
      for (int delta : {+1, -1}) {
        const BosonMode m = make_mode(kind, J, J == 2 ? 1 : 0, delta, -1);
        for (const Point& pt : pts) {
          const Vector4d res =
              dirac_residual_columns(gauged_field(m, GaugeSide::Second),
                                     m.mass, pt);
          CHECK(res.maxCoeff() < 1e-6);
        }
      }
  for (int delta : {+1, -1}) {
    const BosonMode m = make_mode(RadialKind::Scalar, 0, 0, delta, +1);
    const Vector4d res =
        dirac_residual_columns(gauged_field(m, GaugeSide::Second), m.mass,
                               pts[0]);
    CHECK(res.maxCoeff() < 1e-6);
  }
}

TEST_CASE("acting on the first index does not split the system") {
  const BosonMode m = make_mode(RadialKind::TypeI, 1, 0, +1, +1);
  const Point pt{0.3, 2.0, 1.1, 0.8};
  const Vector4d res =
      dirac_residual_columns(gauged_field(m, GaugeSide::First), m.mass, pt);
  CHECK(res.maxCoeff() > 1e-2);
}

TEST_CASE("half-integer sectors sum to the transformed wave") {
  const Point pt{0.4, 2.3, 0.95, 1.7};
  for (auto kind : {RadialKind::TypeI, RadialKind::TypeII})
    for (int J : {1, 2, 3})
      for (int lambda : {+1, -1}) {
        const BosonMode m = make_mode(kind, J, 1, -1, lambda);
        const SplitWave sw = split_half_integer(m, pt);
        const Matrix4c V =
            transform_to_V(eval_U(m, pt), pt.theta, pt.phi);
        CHECK((sw.minus + sw.plus - V).norm() < 1e-12 * V.norm());
      }
}

TEST_CASE("each family populates exactly one sector") {
  const Point pt{0.1, 1.6, 1.25, 2.8};
  for (int J : {1, 2, 3})
    for (int M : {0, J})
      for (int delta : {+1, -1}) {
        const BosonMode m1 = make_mode(RadialKind::TypeI, J, M, delta, +1);
        const SplitWave s1 = split_half_integer(m1, pt);
        CHECK(s1.minus.norm() < 1e-12 * s1.plus.norm());

        const BosonMode m2 = make_mode(RadialKind::TypeII, J, M, delta, -1);
        const SplitWave s2 = split_half_integer(m2, pt);
        CHECK(s2.plus.norm() < 1e-12 * s2.minus.norm());
      }
  const BosonMode ms = make_mode(RadialKind::Scalar, 0, 0, +1, +1);
  const SplitWave ss = split_half_integer(ms, pt);
  CHECK(ss.minus.norm() == 0.0);
  CHECK(ss.plus.norm() > 0.0);
}

TEST_CASE("radial bundles: dead pair vanishes, live pair is the rescaled "
          "radial combination") {
  const Real r = 2.2;
  for (auto kind : {RadialKind::TypeI, RadialKind::TypeII})
    for (int J : {1, 2, 4}) {
      const BosonMode m = make_mode(kind, J, 0, +1, +1);
      RadialParams rp;
      rp.eps = m.eps;
      rp.mass = effective_mass(m);
      rp.kappa = kappa_of(kind, J);
      const RadialValue v = closed_form_regular(rp, r);
      const WeightedAmplitudes w = weighted_amplitudes(kind, J, v.f, v.g);

      const Real sJ = std::sqrt(Real(J)), sJ1 = std::sqrt(Real(J + 1));
      const Real pre = std::sqrt(Real(J) * (J + 1) / (2.0 * J + 1.0));
      const Complex kp{w.K, w.L}, mp{w.M, w.N};
      const Complex km{w.K, -w.L}, mm{w.M, -w.N};

      auto [minus_p, minus_m] = radial_bundles(m, r, -1);
      CHECK(std::abs(minus_p - pre * (sJ1 * kp - sJ * mp)) < 1e-14);
      CHECK(std::abs(minus_m - pre * (sJ1 * km - sJ * mm)) < 1e-14);

      auto [plus_p, plus_m] = radial_bundles(m, r, +1);
      CHECK(std::abs(plus_p - pre * (sJ * kp + sJ1 * mp)) < 1e-14);
      CHECK(std::abs(plus_m - pre * (sJ * km + sJ1 * mm)) < 1e-14);

      const int live = surviving_branch(m);
      auto [live_p, live_m] = radial_bundles(m, r, live);
      auto [dead_p, dead_m] = radial_bundles(m, r, -live);
      const Real s2J1 = std::sqrt(2.0 * J + 1.0);
      CHECK(std::abs(live_p - s2J1 * Complex{v.f, v.g}) < 1e-13);
      CHECK(std::abs(live_m - s2J1 * Complex{v.f, -v.g}) < 1e-13);
      CHECK(std::abs(dead_p) < 1e-13);
      CHECK(std::abs(dead_m) < 1e-13);
    }
  CHECK(surviving_branch(make_mode(RadialKind::TypeI, 2, 0, 1, 1)) == +1);
  CHECK(surviving_branch(make_mode(RadialKind::TypeII, 2, 0, 1, 1)) == -1);
  CHECK(surviving_branch(make_mode(RadialKind::Scalar, 0, 0, 1, 1)) == +1);
}

TEST_CASE("column coefficients take their closed-form values") {
  // low-label family where the closed forms collapse to 0 and 1
  const auto t10 = expansion_coefficients(make_mode(RadialKind::TypeI, 1, 0,
                                                    +1, -1));
  for (const auto& t : t10) {
    CHECK(t.two_j == 3);
    CHECK(t.delta == -1);  // sign of delta*lambda*mass
  }
  CHECK(t10[0].two_m == -1);
  CHECK(t10[1].two_m == +1);
  CHECK(std::abs(t10[0].coeff - Complex(-1.0, 0.0)) < 1e-14);  // lambda*alpha
  CHECK(std::abs(t10[1].coeff - Complex(-1.0, 0.0)) < 1e-14);
  CHECK(std::abs(t10[2].coeff - Complex(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(t10[3].coeff - Complex(1.0, 0.0)) < 1e-14);

  const auto t11 = expansion_coefficients(make_mode(RadialKind::TypeII, 1, 1,
                                                    +1, +1));
  for (const auto& t : t11) CHECK(t.delta == -1);  // minus family flips sign
  CHECK(t11[0].two_j == 1);
  CHECK(t11[0].two_m == 1);
  CHECK(std::abs(t11[0].coeff - I) < 1e-14);  // lambda * i * rho, rho = 1
  CHECK(std::abs(t11[1].coeff) == 0.0);       // sigma = 0 (edge column)
  CHECK(std::abs(t11[2].coeff - I) < 1e-14);
  CHECK(std::abs(t11[3].coeff) == 0.0);

  // generic labels against the explicit square roots
  for (int J : {2, 3})
    for (int M = -J; M <= J; ++M)
      for (int lambda : {+1, -1}) {
        const Real den = Real(J) * (J + 1);
        const auto tp = expansion_coefficients(
            make_mode(RadialKind::TypeI, J, M, +1, lambda));
        const Real alpha = std::sqrt((J - M + 1) / den);
        const Real beta = std::sqrt((J + M + 1) / den);
        CHECK(std::abs(tp[0].coeff - Real(lambda) * alpha) < 1e-13);
        CHECK(std::abs(tp[1].coeff - Real(lambda) * beta) < 1e-13);
        CHECK(std::abs(tp[2].coeff - alpha) < 1e-13);
        CHECK(std::abs(tp[3].coeff - beta) < 1e-13);
        for (const auto& t : tp) {
          CHECK(t.two_j == 2 * J + 1);
          CHECK(t.delta == lambda);  // sign of the channel mass
        }
        CHECK(tp[0].two_m == 2 * M - 1);
        CHECK(tp[1].two_m == 2 * M + 1);

        const auto tm = expansion_coefficients(
            make_mode(RadialKind::TypeII, J, M, +1, lambda));
        const Real rho = std::sqrt((J + M) / den);
        const Real sig = std::sqrt((J - M) / den);
        CHECK(std::abs(tm[0].coeff - Real(lambda) * I * rho) < 1e-13);
        CHECK(std::abs(tm[1].coeff + Real(lambda) * I * sig) < 1e-13);
        CHECK(std::abs(tm[2].coeff - I * rho) < 1e-13);
        CHECK(std::abs(tm[3].coeff + I * sig) < 1e-13);
        for (const auto& t : tm) {
          CHECK(t.two_j == 2 * J - 1);
          CHECK(t.delta == -lambda);
        }
      }

  // scalar tower: unit-modulus coefficients only
  for (int delta : {+1, -1})
    for (int lambda : {+1, -1}) {
      const auto ts = expansion_coefficients(
          make_mode(RadialKind::Scalar, 0, 0, delta, lambda));
      for (const auto& t : ts) {
        CHECK(t.two_j == 1);
        CHECK(std::abs(std::abs(t.coeff) - 1.0) < 1e-14);
        CHECK(t.delta == delta * lambda);
      }
      CHECK(std::abs(ts[0].coeff - Real(lambda)) < 1e-14);
      CHECK(std::abs(ts[2].coeff - Real(1)) < 1e-14);
      CHECK(ts[0].two_m == -1);
      CHECK(ts[1].two_m == +1);
      CHECK(ts[2].two_m == -1);
      CHECK(ts[3].two_m == +1);
    }
}

TEST_CASE("sign labels only decorate the wave inside one mass channel") {
  const Point pt{0.0, 1.9, 1.05, 0.0};
  for (auto kind : {RadialKind::TypeI, RadialKind::TypeII})
    for (int M : {0, 1}) {
      Matrix4c U[2][2];  // indexed by (delta+1)/2, (lambda+1)/2
      for (int di = 0; di < 2; ++di)
        for (int li = 0; li < 2; ++li)
          U[di][li] = eval_U(make_mode(kind, 2, M, 2 * di - 1, 2 * li - 1), pt);

      auto grid = [](int dprod, int lprod) {
        Matrix4c G;
        G.row(0) << lprod, lprod, 1, 1;
        G.row(1) = G.row(0);
        G.row(2) << dprod, dprod, dprod * lprod, dprod * lprod;
        G.row(3) = G.row(2);
        return G;
      };

      // same channel mass: exact entrywise sign ratios
      for (auto [p, q] : {std::pair{std::pair{0, 0}, std::pair{1, 1}},
                          {std::pair{0, 1}, std::pair{1, 0}}}) {
        const Matrix4c G = grid(-1, (p.second == q.second) ? 1 : -1);
        const Matrix4c& A = U[p.first][p.second];
        const Matrix4c& B = U[q.first][q.second];
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            CHECK(std::abs(A(a, b) - G(a, b) * B(a, b)) <
                  1e-13 * B.norm());
      }

      // opposite channel mass: a single complex factor and its conjugate,
      // distributed over the same sign grid
      const Matrix4c& A = U[1][1];   // delta=+1, lambda=+1
      const Matrix4c& B = U[1][0];   // delta=+1, lambda=-1
      const Matrix4c G = grid(+1, -1);
      const Complex q0 = A(0, 0) / (G(0, 0) * B(0, 0));
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const Complex x = A(a, b) / (G(a, b) * B(a, b));
          CHECK(std::min(std::abs(x - q0), std::abs(x - std::conj(q0))) <
                1e-12 * std::abs(q0));
        }
    }
}

TEST_CASE("surviving sector columns expand in spinor waves") {
  std::vector<Point> pts;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<Real> ut(0.0, 2.0), ur(1.0, 5.0),
      uth(0.3, 2.8), uph(0.0, 2.0 * M_PI);
  for (int i = 0; i < 8; ++i)
    pts.push_back(Point{ut(rng), ur(rng), uth(rng), uph(rng)});

  std::vector<BosonMode> modes;
  modes.push_back(make_mode(RadialKind::TypeI, 1, 0, +1, +1));
  modes.push_back(make_mode(RadialKind::TypeI, 2, -1, -1, -1));
  modes.push_back(make_mode(RadialKind::TypeII, 1, 1, -1, +1));
  modes.push_back(make_mode(RadialKind::TypeII, 3, 2, +1, -1));
  for (int delta : {+1, -1})
    for (int lambda : {+1, -1})
      modes.push_back(make_mode(RadialKind::Scalar, 0, 0, delta, lambda));

  for (const BosonMode& m : modes) {
    const ExpansionReport rep = verify_expansion(m, pts);
    CHECK(rep.branch == surviving_branch(m));
    CHECK(rep.max_residual < 1e-10);
    CHECK(rep.off_branch_norm < 1e-12);
  }
}

TEST_CASE("spinor waves obey the column equation") {
  const Point pts[2] = {{0.5, 1.8, 0.9, 2.2}, {1.3, 4.1, 2.3, 5.5}};
  for (int two_j : {1, 3, 5})
    for (int two_m = -two_j; two_m <= two_j; two_m += 2)
      for (int delta : {+1, -1}) {
        DiracMode d;
        d.two_j = two_j;
        d.two_m = two_m;
        d.delta = delta;
        for (const Point& pt : pts) CHECK(dirac_residual(d, pt) < 1e-6);
      }
}

TEST_CASE("column residual conventions") {
  auto zero = [](const Point&) { return Vector4c::Zero().eval(); };
  CHECK(dirac_residual_of(zero, 1.0, Point{0.2, 2.0, 1.0, 0.3}) == 0.0);

  DiracMode d;
  d.two_j = 3;
  d.two_m = 1;
  d.delta = +1;
  const Point pt{0.4, 2.5, 1.2, 1.0};
  auto base = [&](const Point& q) { return eval_Psi(d, q); };
  auto scaled = [&](const Point& q) { return (3.7 * eval_Psi(d, q)).eval(); };
  CHECK(std::abs(dirac_residual_of(base, d.mass, pt) -
                 dirac_residual_of(scaled, d.mass, pt)) < 1e-12);
}

}  // TEST_SUITE
