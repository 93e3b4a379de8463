#pragma once

// Numerical evaluation of the Riemann zeta function on and near the
// critical strip, plus the critical-line machinery built on it: the
// Riemann-Siegel theta function, Hardy's Z, zero localization, phase
// traces and Argand paths.
//
// Two independent evaluation routes are kept side by side:
//   zeta()      Euler-Maclaurin with N ~ 1.3|t| leading terms and 12
//               Bernoulli corrections; functional equation for Re(s) < -2.
//   zeta_eta()  alternating (eta) series with Cohen/Rodriguez-Villegas/
//               Zagier acceleration.
// They share nothing past the complex type, which is what makes their
// agreement a meaningful cross-check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hexwave/wheel.hpp"

namespace hexwave {

using cplx = std::complex<double>;

inline constexpr double default_zeta_tol = 1e-10;
inline constexpr double zeta_t_cap = 1000.0;  // no Riemann-Siegel main formula above this

struct pole_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct tolerance_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct resolution_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// B_{2k}/(2k)! for k = 1..12, built from exact Bernoulli ratios.
inline const std::array<double, 12>& bern_over_fact() {
  static const std::array<double, 12> table = [] {
    const long double num[12] = {1, -1, 1, -1, 5, -691, 7, -3617, 43867, -174611, 854513, -236364091};
    const long double den[12] = {6, 30, 42, 30, 66, 2730, 6, 510, 798, 330, 138, 2730};
    std::array<double, 12> t{};
    long double fact = 1;
    for (int k = 1; k <= 12; ++k) {
      fact *= (2 * k - 1) * (2 * k);
      t[k - 1] = double(num[k - 1] / den[k - 1] / fact);
    }
    return t;
  }();
  return table;
}

inline cplx pow_int(u64 n, cplx minus_s) {
  double lnn = std::log(double(n));
  return std::polar(std::exp(minus_s.real() * lnn), minus_s.imag() * lnn);
}

/// Smallest |error| the Euler-Maclaurin route can promise at height t;
/// dominated by cancellation in the main sum.
inline double achievable_tol(cplx s) { return 5e-15 * (3.0 + std::abs(s.imag())); }

inline int em_terms(double abs_t) { return std::max(20, int(std::ceil(1.3 * abs_t))); }

/// Euler-Maclaurin evaluation, reliable for Re(s) >= -2, |Im(s)| <= cap.
inline cplx zeta_em(cplx s) {
  const int N = em_terms(std::abs(s.imag()));
  cplx sum = 1.0;  // n = 1
  for (int n = 2; n < N; ++n) sum += pow_int(n, -s);
  const cplx Nms = pow_int(u64(N), -s);  // N^{-s}
  sum += 0.5 * Nms;
  sum += Nms * double(N) / (s - 1.0);  // N^{1-s}/(s-1)
  cplx poch = s;
  cplx nf = Nms / double(N);  // N^{-s-1}
  const auto& c = bern_over_fact();
  for (int k = 1; k <= 12; ++k) {
    sum += c[k - 1] * poch * nf;
    poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
    nf /= double(N) * double(N);
  }
  return sum;
}

/// Same formula, carrying d/ds of every term. Only meaningful where
/// zeta_em itself is used (Re(s) >= -2).
inline std::pair<cplx, cplx> zeta_em_deriv(cplx s) {
  const int N = em_terms(std::abs(s.imag()));
  cplx sum = 1.0, dsum = 0.0;
  for (int n = 2; n < N; ++n) {
    cplx term = pow_int(n, -s);
    sum += term;
    dsum -= std::log(double(n)) * term;
  }
  const double lnN = std::log(double(N));
  const cplx Nms = pow_int(u64(N), -s);
  sum += 0.5 * Nms;
  dsum += -0.5 * lnN * Nms;
  const cplx tail = Nms * double(N) / (s - 1.0);
  sum += tail;
  dsum += tail * (-lnN - 1.0 / (s - 1.0));
  cplx poch = s, dpoch_over_poch = 1.0 / s;
  cplx nf = Nms / double(N);
  const auto& c = bern_over_fact();
  for (int k = 1; k <= 12; ++k) {
    cplx term = c[k - 1] * poch * nf;
    sum += term;
    dsum += term * (dpoch_over_poch - lnN);
    poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
    dpoch_over_poch += 1.0 / (s + double(2 * k - 1)) + 1.0 / (s + double(2 * k));
    nf /= double(N) * double(N);
  }
  return {sum, dsum};
}

/// Principal log-gamma for Re(z) > 0: Stirling series after shifting
/// |z| above 12. Continuous along vertical lines in the right half-plane.
inline cplx log_gamma(cplx z) {
  if (z.real() <= 0.0) throw std::domain_error("log_gamma: requires Re(z) > 0");
  cplx shift = 0.0;
  while (std::abs(z) < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  static const double stirling[10] = {
      // B_{2k} / (2k (2k-1))
      1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188,
      -691.0 / 360360, 1.0 / 156, -3617.0 / 122400, 43867.0 / 244188, -174611.0 / 125400};
  cplx res = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi);
  cplx zp = 1.0 / z;
  const cplx z2 = 1.0 / (z * z);
  for (double coeff : stirling) {
    res += coeff * zp;
    zp *= z2;
  }
  return res - shift;
}

/// log(sin z), stable for large |Im z|.
inline cplx log_sin(cplx z) {
  const cplx i(0.0, 1.0);
  if (z.imag() > 18.0)
    return i * (std::numbers::pi / 2.0 - z) - std::log(2.0) + std::log(1.0 - std::exp(2.0 * i * z));
  if (z.imag() < -18.0)
    return i * (z - std::numbers::pi / 2.0) - std::log(2.0) + std::log(1.0 - std::exp(-2.0 * i * z));
  return std::log(std::sin(z));
}

}  // namespace detail

/// zeta(s) with |error| <= tol inside -2 <= Re(s) <= 10, |Im(s)| <= 520.
/// Re(s) < -2 goes through the functional equation; s = 1 is a pole.
inline cplx zeta(cplx s, double tol = default_zeta_tol) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw std::domain_error("zeta: non-finite argument");
  if (std::abs(s - cplx(1.0, 0.0)) < 1e-14) throw pole_error("zeta: pole at s = 1");
  if (std::abs(s.imag()) > zeta_t_cap)
    throw std::domain_error("zeta: |Im(s)| above supported range");
  if (tol < detail::achievable_tol(s))
    throw tolerance_error("zeta: requested tolerance below achievable precision");
  if (s.real() >= -2.0) return detail::zeta_em(s);
  // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
  const cplx z1 = detail::zeta_em(1.0 - s);
  if (s.imag() == 0.0) {
    // real axis: sin factor may vanish (trivial zeros); plain real product
    double sg = std::sin(std::numbers::pi * s.real() / 2.0);
    double lg = std::lgamma(1.0 - s.real());
    double mag = std::exp(s.real() * std::log(2.0) + (s.real() - 1.0) * std::log(std::numbers::pi) + lg);
    return sg * mag * z1;
  }
  cplx log_chi = s * std::log(2.0) + (s - 1.0) * std::log(std::numbers::pi) +
                 detail::log_sin(std::numbers::pi * s / 2.0) + detail::log_gamma(1.0 - s);
  return std::exp(log_chi) * z1;
}

/// zeta and zeta' together (Euler-Maclaurin region only).
inline std::pair<cplx, cplx> zeta_with_deriv(cplx s) {
  if (s.real() < -2.0) throw std::domain_error("zeta_with_deriv: requires Re(s) >= -2");
  if (std::abs(s - cplx(1.0, 0.0)) < 1e-14) throw pole_error("zeta_with_deriv: pole at s = 1");
  return detail::zeta_em_deriv(s);
}

/// Alternating-series route: eta(s) / (1 - 2^{1-s}) with CVZ acceleration.
/// Good to ~1e-12 for moderate t; kept independent of the E-M code path.
inline cplx zeta_eta(cplx s) {
  if (std::abs(s.imag()) > 300.0)
    throw std::domain_error("zeta_eta: |Im(s)| above alternating-series range");
  const cplx conv = 1.0 - std::exp((1.0 - s) * std::log(2.0));
  if (std::abs(conv) < 1e-6)
    throw std::domain_error("zeta_eta: too close to a zero of 1 - 2^{1-s}");
  const int n = 36 + int(std::ceil(1.1 * std::abs(s.imag())));
  double d = std::pow(3.0 + 2.0 * std::sqrt(2.0), n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0, c = -d;
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * detail::pow_int(u64(k + 1), -s);
    b *= (double(k) + n) * (double(k) - n) / ((k + 0.5) * (k + 1.0));
  }
  return sum / d / conv;
}

/// Riemann-Siegel theta: arg Gamma(1/4 + it/2) - (t/2) ln pi, continuous.
inline double riemann_siegel_theta(double t) {
  if (t < 0) throw std::domain_error("riemann_siegel_theta: t must be >= 0");
  cplx lg = detail::log_gamma(cplx(0.25, t / 2.0));
  return lg.imag() - (t / 2.0) * std::log(std::numbers::pi);
}

/// Hardy Z: e^{i theta(t)} zeta(1/2 + it), real by construction.
inline double hardy_z(double t) {
  if (t < 0) throw std::domain_error("hardy_z: t must be >= 0");
  cplx z = zeta(cplx(0.5, t));
  cplx rotated = std::polar(1.0, riemann_siegel_theta(t)) * z;
  return rotated.real();
}

struct ZeroBracket {
  double t;        // midpoint of the final bracket
  double lo, hi;   // Z changes sign across [lo, hi], hi - lo <= 1e-6
};

struct ZeroList {
  std::vector<ZeroBracket> zeros;
  double theta_estimate = 0.0;  // (theta(t_hi) - theta(t_lo)) / pi
};

struct incomplete_scan_error : std::runtime_error {
  ZeroList partial;
  explicit incomplete_scan_error(std::string what, ZeroList p)
      : std::runtime_error(std::move(what)), partial(std::move(p)) {}
};

/// All critical-line zeros in (t_lo, t_hi): sign changes of Z on a grid
/// (initial step 0.05), bisected to brackets of width <= 1e-6. The count
/// is checked against the theta-based estimate; a mismatch densifies the
/// grid and retries.
inline ZeroList find_zeros(double t_lo, double t_hi) {
  if (!(t_lo >= 0.0 && t_lo < t_hi && t_hi <= 520.0))
    throw std::domain_error("find_zeros: need 0 <= t_lo < t_hi <= 520");
  const double est = (riemann_siegel_theta(t_hi) - riemann_siegel_theta(t_lo)) / std::numbers::pi;
  double step = 0.05;
  for (int attempt = 0;; ++attempt) {
    ZeroList out;
    out.theta_estimate = est;
    const u64 n = u64(std::ceil((t_hi - t_lo) / step));
    double prev_t = t_lo, prev_z = hardy_z(t_lo);
    for (u64 i = 1; i <= n; ++i) {
      double t = std::min(t_hi, t_lo + double(i) * step);
      double z = hardy_z(t);
      if ((prev_z < 0) != (z < 0)) {
        double a = prev_t, b = t, za = prev_z;
        while (b - a > 1e-6) {
          double m = 0.5 * (a + b), zm = hardy_z(m);
          if ((za < 0) != (zm < 0)) b = m;
          else { a = m; za = zm; }
        }
        out.zeros.push_back({0.5 * (a + b), a, b});
      }
      prev_t = t;
      prev_z = z;
    }
    // theta counts zeros up to slowly varying S(t); allow |S| drift of 2
    if (std::abs(double(out.zeros.size()) - est) <= 2.0) return out;
    if (attempt >= 3)
      throw incomplete_scan_error("find_zeros: zero count disagrees with theta estimate", out);
    step /= 4.0;
  }
}

struct PhaseTrace {
  double sigma = 0.0;
  std::vector<double> t;
  std::vector<double> theta;     // unwrapped arg zeta(sigma + it)
  std::vector<double> jumps;     // t positions of flagged pi-jumps (sigma = 1/2)
  u64 pi_like_steps = 0;         // steps with | |dphi| - pi | < window, any sigma
};

inline constexpr double phase_jump_window = 0.3;

/// Unwrapped phase of zeta along a vertical line. On the critical line a
/// sign change of Z shows up as a jump of +-pi between adjacent samples;
/// those are flagged. Away from sigma = 1/2 only the raw unwrapped curve
/// is reported.
inline PhaseTrace phase_trace(double sigma, double t_lo, double t_hi, double step) {
  if (step <= 0) throw std::domain_error("phase_trace: step must be positive");
  if (t_lo >= t_hi) throw std::domain_error("phase_trace: empty t range");
  PhaseTrace tr;
  tr.sigma = sigma;
  const bool critical = sigma == 0.5;
  const u64 n = u64(std::ceil((t_hi - t_lo) / step));
  double prev_phi = 0.0, prev_z = 0.0;
  int coarse_run = 0;
  for (u64 i = 0; i <= n; ++i) {
    double t = std::min(t_hi, t_lo + double(i) * step);
    cplx zv = zeta(cplx(sigma, t));
    double phi = std::arg(zv);
    double z = critical ? (std::polar(1.0, riemann_siegel_theta(t)) * zv).real() : 0.0;
    if (i > 0) {
      double k = std::round((prev_phi - phi) / (2.0 * std::numbers::pi));
      phi += 2.0 * std::numbers::pi * k;
      double dphi = std::abs(phi - prev_phi);
      if (std::abs(dphi - std::numbers::pi) < phase_jump_window) {
        ++tr.pi_like_steps;
        if (critical && (prev_z < 0) != (z < 0)) tr.jumps.push_back(0.5 * (tr.t.back() + t));
      }
      if (dphi > std::numbers::pi - phase_jump_window &&
          std::abs(dphi - std::numbers::pi) >= phase_jump_window) {
        if (++coarse_run >= 3)
          throw resolution_error("phase_trace: step too coarse to unwrap");
      } else {
        coarse_run = 0;
      }
    }
    prev_z = z;
    tr.t.push_back(t);
    tr.theta.push_back(phi);
    prev_phi = phi;
  }
  return tr;
}

struct ArgandPath {
  double sigma = 0.0;
  std::vector<double> t;
  std::vector<cplx> z;
  std::vector<double> origin_approaches;  // refined t of |zeta| minima below threshold
};

inline constexpr double origin_approach_threshold = 1e-2;

/// The planar curve (Re zeta, Im zeta) along a vertical line, with the
/// count of passes near the origin: local minima of |zeta| refined by
/// golden-section search and kept when below 1e-2.
inline ArgandPath argand_path(double sigma, double t_lo, double t_hi, double step) {
  if (step <= 0) throw std::domain_error("argand_path: step must be positive");
  if (t_lo >= t_hi) throw std::domain_error("argand_path: empty t range");
  ArgandPath path;
  path.sigma = sigma;
  const u64 n = u64(std::ceil((t_hi - t_lo) / step));
  for (u64 i = 0; i <= n; ++i) {
    double t = std::min(t_hi, t_lo + double(i) * step);
    path.t.push_back(t);
    path.z.push_back(zeta(cplx(sigma, t)));
  }
  auto mag = [&](double t) { return std::abs(zeta(cplx(sigma, t))); };
  for (size_t i = 1; i + 1 < path.z.size(); ++i) {
    double m0 = std::abs(path.z[i - 1]), m1 = std::abs(path.z[i]), m2 = std::abs(path.z[i + 1]);
    if (!(m1 <= m0 && m1 < m2)) continue;
    double a = path.t[i - 1], b = path.t[i + 1];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = mag(x1), f2 = mag(x2);
    for (int it = 0; it < 60 && b - a > 1e-9; ++it) {
      if (f1 < f2) { b = x2; x2 = x1; f2 = f1; x1 = b - gr * (b - a); f1 = mag(x1); }
      else { a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b - a); f2 = mag(x2); }
    }
    double tmin = 0.5 * (a + b);
    if (mag(tmin) < origin_approach_threshold) path.origin_approaches.push_back(tmin);
  }
  return path;
}

}  // namespace hexwave
