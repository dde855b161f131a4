#include "dkwaves/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dkwaves {

namespace {

constexpr int kExactFactorialMax = 39;

// Kept in extended precision: the alternating sum in small_d cancels terms
// several orders above the result, and callers difference the values with
// steps as small as 1e-6.
const std::array<long double, kExactFactorialMax + 1>& factorial_table() {
  static const auto table = [] {
    std::array<long double, kExactFactorialMax + 1> t{};
    t[0] = 1.0L;
    for (int n = 1; n <= kExactFactorialMax; ++n)
      t[n] = t[n - 1] * static_cast<long double>(n);
    return t;
  }();
  return table;
}

Real log_factorial(int n) { return std::lgamma(static_cast<Real>(n) + 1.0); }

}  // namespace

Real factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  if (n <= kExactFactorialMax)
    return static_cast<Real>(factorial_table()[n]);
  return std::exp(log_factorial(n));
}

Real small_d(int two_j, int two_m1, int two_m2, Real theta) {
  if (two_j < 0)
    throw std::domain_error("small_d: two_j must be non-negative");
  if (std::abs(two_m1) > two_j || std::abs(two_m2) > two_j)
    throw std::domain_error("small_d: projection exceeds two_j");
  if (((two_j + two_m1) & 1) != 0 || ((two_j + two_m2) & 1) != 0)
    throw std::domain_error("small_d: j and m must differ by an integer");

  const int jpm = (two_j + two_m2) / 2;   // j + m
  const int jmm = (two_j - two_m2) / 2;   // j - m
  const int jpn = (two_j + two_m1) / 2;   // j + m'
  const int jmn = (two_j - two_m1) / 2;   // j - m'
  const int dm = (two_m1 - two_m2) / 2;   // m' - m

  const long double c = std::cos(0.5L * static_cast<long double>(theta));
  const long double s = std::sin(0.5L * static_cast<long double>(theta));
  const int k_min = std::max(0, -dm);
  const int k_max = std::min(jpm, jmn);

  // The largest factorial argument is j + m <= 2j = two_j.
  const bool log_path = two_j > kExactFactorialMax;

  const auto& fact = factorial_table();
  long double sum = 0.0L;
  for (int k = k_min; k <= k_max; ++k) {
    const int e_cos = jpm + jmn - 2 * k;
    const int e_sin = dm + 2 * k;
    const long double sign = ((dm + k) % 2 != 0) ? -1.0L : 1.0L;
    long double magnitude;
    if (!log_path) {
      const long double pref =
          std::sqrt(fact[jpm] * fact[jmm] * fact[jpn] * fact[jmn]);
      const long double den =
          fact[jpm - k] * fact[k] * fact[dm + k] * fact[jmn - k];
      magnitude = pref / den;
    } else {
      const Real log_pref = 0.5 * (log_factorial(jpm) + log_factorial(jmm) +
                                   log_factorial(jpn) + log_factorial(jmn));
      const Real log_den = log_factorial(jpm - k) + log_factorial(k) +
                           log_factorial(dm + k) + log_factorial(jmn - k);
      magnitude = std::exp(log_pref - log_den);
    }
    sum += sign * magnitude * std::pow(c, e_cos) * std::pow(s, e_sin);
  }
  return static_cast<Real>(sum);
}

Complex wigner_D(int two_j, int two_m1, int two_m2, Real phi, Real theta) {
  const Real m1 = 0.5 * static_cast<Real>(two_m1);
  return std::exp(-I * m1 * phi) * small_d(two_j, two_m1, two_m2, theta);
}

namespace {

/// D_sigma = D^J_{-M,sigma} with out-of-range sigma treated as zero; the
/// identities only reference such terms with vanishing coefficients.
Complex d_family(int J, int M, int sigma, Real phi, Real theta) {
  if (std::abs(2 * sigma) > 2 * J) return Complex{0.0, 0.0};
  return wigner_D(2 * J, -2 * M, 2 * sigma, phi, theta);
}

Complex d_family_dtheta(int J, int M, int sigma, Real phi, Real theta, Real h) {
  return (d_family(J, M, sigma, phi, theta + h) -
          d_family(J, M, sigma, phi, theta - h)) /
         (2.0 * h);
}

Real identity_residual_impl(int kind, int J, int M, Real theta, Real phi,
                            Real a, Real b, Real h) {
  const Real sin_t = std::sin(theta);
  const Real cos_t = std::cos(theta);
  const Real mm = static_cast<Real>(M);
  Complex lhs, rhs;
  switch (kind) {
    case 1:
      lhs = d_family_dtheta(J, M, -1, phi, theta, h);
      rhs = 0.5 * (b * d_family(J, M, -2, phi, theta) -
                   a * d_family(J, M, 0, phi, theta));
      break;
    case 2:
      lhs = ((-mm + cos_t) / sin_t) * d_family(J, M, -1, phi, theta);
      rhs = -0.5 * (b * d_family(J, M, -2, phi, theta) +
                    a * d_family(J, M, 0, phi, theta));
      break;
    case 3:
      lhs = d_family_dtheta(J, M, 1, phi, theta, h);
      rhs = 0.5 * (a * d_family(J, M, 0, phi, theta) -
                   b * d_family(J, M, 2, phi, theta));
      break;
    case 4:
      lhs = ((-mm - cos_t) / sin_t) * d_family(J, M, 1, phi, theta);
      rhs = -0.5 * (a * d_family(J, M, 0, phi, theta) +
                    b * d_family(J, M, 2, phi, theta));
      break;
    case 5:
      lhs = d_family_dtheta(J, M, 0, phi, theta, h);
      rhs = 0.5 * a * (d_family(J, M, -1, phi, theta) -
                       d_family(J, M, 1, phi, theta));
      break;
    case 6:
      lhs = (-mm / sin_t) * d_family(J, M, 0, phi, theta);
      rhs = -0.5 * a * (d_family(J, M, -1, phi, theta) +
                        d_family(J, M, 1, phi, theta));
      break;
    default:
      throw std::invalid_argument("identity kind must be 1..6");
  }
  return std::abs(lhs - rhs);
}

}  // namespace

namespace {

void check_identity_domain(int J, int M, Real theta) {
  if (J < 1) throw std::domain_error("identities require J >= 1");
  if (std::abs(M) > J)
    throw std::domain_error("identities require |M| <= J");
  if (std::abs(std::sin(theta)) < 1e-8)
    throw std::domain_error("identities are singular at the poles");
}

}  // namespace

Real derivative_identity_residual(int kind, int J, int M, Real theta, Real phi,
                                  Real fd_step) {
  check_identity_domain(J, M, theta);
  const Real a = std::sqrt(static_cast<Real>(J) * (J + 1));
  const Real b = std::sqrt(static_cast<Real>(J - 1) * (J + 2));
  return identity_residual_impl(kind, J, M, theta, phi, a, b, fd_step);
}

Real derivative_identity_residual_with_b(int kind, int J, int M, Real theta,
                                         Real phi, Real b_coeff, Real fd_step) {
  check_identity_domain(J, M, theta);
  const Real a = std::sqrt(static_cast<Real>(J) * (J + 1));
  return identity_residual_impl(kind, J, M, theta, phi, a, b_coeff, fd_step);
}

Real clebsch_half(int two_j, int two_m, int two_ms, int two_jp) {
  if (two_ms != 1 && two_ms != -1)
    throw std::invalid_argument("clebsch_half: two_ms must be ±1");
  if (two_jp != two_j + 1 && two_jp != two_j - 1)
    throw std::invalid_argument("clebsch_half: two_jp must be two_j ± 1");
  if (std::abs(two_m) > two_jp) return 0.0;
  if (std::abs(two_m - two_ms) > two_j) return 0.0;

  const Real j = 0.5 * static_cast<Real>(two_j);
  const Real m = 0.5 * static_cast<Real>(two_m);
  const Real denom = 2.0 * j + 1.0;
  if (two_jp == two_j + 1) {
    const Real num = (two_ms > 0) ? (j + m + 0.5) : (j - m + 0.5);
    return std::sqrt(num / denom);
  }
  if (two_ms > 0) return -std::sqrt((j - m + 0.5) / denom);
  return std::sqrt((j + m + 0.5) / denom);
}

namespace {

struct FactorLabels {
  int two_mu;  ///< first index of the spin-1/2 rotation function
  int two_nu;  ///< second index
  Real overall;
};

FactorLabels factor_labels(HalfFactor factor) {
  switch (factor) {
    case HalfFactor::CosExpPlus:
      return {-1, -1, 1.0};
    case HalfFactor::CosExpMinus:
      return {1, 1, 1.0};
    case HalfFactor::SinExpPlus:
      return {-1, 1, 1.0};
    case HalfFactor::SinExpMinus:
      return {1, -1, -1.0};
  }
  throw std::invalid_argument("unknown half factor");
}

}  // namespace

std::array<CouplingTerm, 2> coupling_expand(HalfFactor factor, int J, int M,
                                            int two_sigma) {
  if (J < 0) throw std::domain_error("coupling_expand: J must be >= 0");
  if ((two_sigma & 1) != 0)
    throw std::invalid_argument("coupling_expand: two_sigma must be even");
  if (std::abs(M) > J)
    throw std::domain_error("coupling_expand: requires |M| <= J");
  if (J == 0 && two_sigma != 0)
    throw std::domain_error("coupling_expand: sigma must vanish when J = 0");
  const FactorLabels labels = factor_labels(factor);
  const int two_m1 = labels.two_mu - 2 * M;
  const int two_m2 = labels.two_nu + two_sigma;

  std::array<CouplingTerm, 2> terms{};
  int slot = 0;
  for (int two_jp : {2 * J - 1, 2 * J + 1}) {
    CouplingTerm term;
    term.two_j = two_jp;
    term.two_m1 = two_m1;
    term.two_m2 = two_m2;
    if (two_jp >= 1 && std::abs(two_m1) <= two_jp &&
        std::abs(two_m2) <= two_jp) {
      const Real c1 = clebsch_half(2 * J, two_m1, labels.two_mu, two_jp);
      const Real c2 = clebsch_half(2 * J, two_m2, labels.two_nu, two_jp);
      term.coeff = labels.overall * c1 * c2;
    }
    terms[slot++] = term;
  }
  return terms;
}

Complex half_factor_value(HalfFactor factor, Real theta, Real phi) {
  const Real c = std::cos(0.5 * theta);
  const Real s = std::sin(0.5 * theta);
  switch (factor) {
    case HalfFactor::CosExpPlus:
      return c * std::exp(I * (0.5 * phi));
    case HalfFactor::CosExpMinus:
      return c * std::exp(-I * (0.5 * phi));
    case HalfFactor::SinExpPlus:
      return s * std::exp(I * (0.5 * phi));
    case HalfFactor::SinExpMinus:
      return s * std::exp(-I * (0.5 * phi));
  }
  throw std::invalid_argument("unknown half factor");
}

}  // namespace dkwaves
