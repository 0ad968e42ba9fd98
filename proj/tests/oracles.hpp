#pragma once

// Test-only reference computations. None of these go through the library's
// fidelity or Fisher-information code paths.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace thermchan::oracle {

inline constexpr int kFockDim = 400;

// Photon-number distribution of a thermal state with mean n.
inline std::vector<double> thermal_populations(double n, int dim = kFockDim) {
  std::vector<double> p(dim);
  const double ratio = n / (n + 1.0);
  double term = 1.0 / (n + 1.0);
  for (int k = 0; k < dim; ++k) {
    p[k] = term;
    term *= ratio;
  }
  return p;
}

// |<k|alpha>|^2 for real alpha.
inline std::vector<double> coherent_populations(double alpha, int dim = kFockDim) {
  std::vector<double> p(dim);
  double term = std::exp(-alpha * alpha);
  for (int k = 0; k < dim; ++k) {
    p[k] = term;
    term *= alpha * alpha / (k + 1.0);
  }
  return p;
}

// <alpha| rho_th |alpha>: rho_th is diagonal in the Fock basis.
inline double fidelity_coherent_thermal(double alpha, double n) {
  const auto pc = coherent_populations(alpha);
  const auto pt = thermal_populations(n);
  double f = 0.0;
  for (int k = 0; k < kFockDim; ++k) f += pc[k] * pt[k];
  return f;
}

// Commuting thermal states: F = (sum_k sqrt(p_k q_k))^2.
inline double fidelity_thermal_thermal(double n1, double n2) {
  const auto p = thermal_populations(n1);
  const auto q = thermal_populations(n2);
  double s = 0.0;
  for (int k = 0; k < kFockDim; ++k) s += std::sqrt(p[k] * q[k]);
  return s * s;
}

// Reduced state of the two-mode squeezed vacuum: P(k) = tanh^{2k} r / cosh^2 r.
inline double tmsv_reduced_mean_number(double r) {
  const double t2 = std::tanh(r) * std::tanh(r);
  double p = 1.0 / (std::cosh(r) * std::cosh(r));
  double mean = 0.0;
  for (int k = 0; k < 4 * kFockDim; ++k) {
    mean += k * p;
    p *= t2;
  }
  return mean;
}

// Closed-form single-mode Gaussian QFI in the vacuum = identity convention:
//   H = 1/2 Tr[(S^-1 S')^2] / (1 + P^2) + 2 P'^2 / (1 - P^4) + m'^T S^-1 m'
// with purity P = det(S)^{-1/2}.
inline double gaussian_qfi(const Eigen::Matrix2d& cov, const Eigen::Matrix2d& dcov,
                           const Eigen::Vector2d& dmean) {
  const Eigen::Matrix2d inv = cov.inverse();
  const Eigen::Matrix2d m = inv * dcov;
  const double det = cov.determinant();
  const double ddet = det * m.trace();
  const double purity = 1.0 / std::sqrt(det);
  const double dpurity = -0.5 * ddet * std::pow(det, -1.5);
  const double p2 = purity * purity;
  const double cov_term = 0.5 * (m * m).trace() / (1.0 + p2);
  const double purity_term = 2.0 * dpurity * dpurity / (1.0 - p2 * p2);
  return cov_term + purity_term + dmean.dot(inv * dmean);
}

// Fisher information of a one-parameter family of densities by direct
// quadrature: integral of p (d log p / dy)^2, derivative by central
// differences in y, composite Simpson over +-14 standard deviations.
inline double fisher_by_quadrature(const std::function<std::pair<double, double>(double)>& mean_var,
                                   double y, double dy = 1e-5, int intervals = 20000) {
  const auto [mu, v] = mean_var(y);
  const auto [mu_p, v_p] = mean_var(y + dy);
  const auto [mu_m, v_m] = mean_var(y - dy);
  const auto log_pdf = [](double l, double m, double var) {
    return -0.5 * std::log(2.0 * M_PI * var) - (l - m) * (l - m) / (2.0 * var);
  };
  const double half = 14.0 * std::sqrt(v);
  const double a = mu - half;
  const double h = 2.0 * half / intervals;
  double sum = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double l = a + i * h;
    const double score = (log_pdf(l, mu_p, v_p) - log_pdf(l, mu_m, v_m)) / (2.0 * dy);
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * std::exp(log_pdf(l, mu, v)) * score * score;
  }
  return sum * h / 3.0;
}

}  // namespace thermchan::oracle
