#include "thermchan/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thermchan/errors.hpp"

namespace thermchan {
namespace {

void require_finite_non_negative(double value, const char* what) {
  if (!std::isfinite(value) || value < 0.0) {
    throw InvalidArgument(std::string(what) + " must be finite and >= 0, got " +
                          std::to_string(value));
  }
}

}  // namespace

GaussianState GaussianState::from_moments(const Eigen::Vector2d& mean, const Eigen::Matrix2d& cov) {
  GaussianState state{mean, cov};
  if (!is_valid(state)) {
    throw InvalidArgument("moments do not describe a valid single-mode Gaussian state");
  }
  return state;
}

bool is_valid(const GaussianState& state) {
  const auto& c = state.cov;
  if (!state.mean.allFinite() || !c.allFinite()) return false;
  if (std::abs(c(0, 1) - c(1, 0)) > kStateTolerance) return false;
  if (c(0, 0) <= 0.0 || c(1, 1) <= 0.0) return false;
  return c.determinant() >= 1.0 - kStateTolerance;
}

GaussianState make_vacuum() { return GaussianState{}; }

GaussianState make_coherent(double n0) {
  require_finite_non_negative(n0, "coherent mean photon number");
  GaussianState state;
  state.mean(0) = 2.0 * std::sqrt(n0);
  return state;
}

GaussianState make_squeezed(double s) {
  if (!std::isfinite(s)) throw InvalidArgument("squeezing parameter must be finite");
  GaussianState state;
  state.cov(0, 0) = std::exp(2.0 * s);
  state.cov(1, 1) = std::exp(-2.0 * s);
  return state;
}

GaussianState make_thermal(double n0) {
  require_finite_non_negative(n0, "thermal mean photon number");
  GaussianState state;
  state.cov *= 2.0 * n0 + 1.0;
  return state;
}

double mean_photon_number(const GaussianState& state) {
  return (state.cov.trace() - 2.0) / 4.0 + state.mean.squaredNorm() / 4.0;
}

double purity(const GaussianState& state) { return 1.0 / std::sqrt(state.cov.determinant()); }

double fidelity(const GaussianState& a, const GaussianState& b) {
  if (a == b) return 1.0;

  const Eigen::Matrix2d sum = a.cov + b.cov;
  const double delta = sum.determinant();
  if (!(delta > 0.0)) throw InvalidArgument("fidelity: singular covariance sum");

  // Rounding can push det slightly below 1 for pure states.
  const double lambda =
      std::max(0.0, (a.cov.determinant() - 1.0) * (b.cov.determinant() - 1.0));
  // sqrt(delta + lambda) - sqrt(lambda), rewritten without cancellation.
  const double denom = delta / (std::sqrt(delta + lambda) + std::sqrt(lambda));

  const Eigen::Vector2d d = b.mean - a.mean;
  const double quad = d.dot(sum.inverse() * d);
  return std::clamp(2.0 * std::exp(-0.5 * quad) / denom, 0.0, 1.0);
}

QuadratureStats rotated_quadrature_stats(const GaussianState& state, double theta) {
  const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
  return {u.dot(state.mean), u.dot(state.cov * u)};
}

double thermal_number_from_temperature(const ModeSpec& mode) {
  if (!(mode.omega > 0.0) || !std::isfinite(mode.omega)) {
    throw InvalidArgument("mode frequency must be positive");
  }
  if (!mode.temperature || !(*mode.temperature > 0.0)) {
    throw InvalidArgument("mode temperature must be given and positive");
  }
  return 1.0 / std::expm1(mode.omega / *mode.temperature);
}

double temperature_from_thermal_number(double omega, double nbar) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("mode frequency must be positive");
  if (!(nbar > 0.0) || !std::isfinite(nbar)) throw InvalidArgument("thermal number must be positive");
  return omega / std::log1p(1.0 / nbar);
}

}  // namespace thermchan
