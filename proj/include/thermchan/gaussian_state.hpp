#pragma once

#include <optional>

#include <Eigen/Dense>

namespace thermchan {

// Absolute tolerance used by every state-validity check.
inline constexpr double kStateTolerance = 1e-12;

// Single-mode Gaussian state in the convention where the vacuum covariance
// is the identity and <q> = 2 Re(alpha). A coherent state of mean photon
// number n0 therefore has mean (2 sqrt(n0), 0).
struct GaussianState {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = Eigen::Matrix2d::Identity();

  // Builds a state and throws InvalidArgument if it violates symmetry,
  // positivity of the diagonal or det(cov) >= 1.
  static GaussianState from_moments(const Eigen::Vector2d& mean, const Eigen::Matrix2d& cov);

  bool operator==(const GaussianState&) const = default;
};

// Quasi-monochromatic wave-packet mode.
struct ModeSpec {
  double omega = 1.0;
  std::optional<double> temperature;
};

struct QuadratureStats {
  double mean = 0.0;
  double variance = 0.0;
};

// Returns true when the state obeys the invariants above.
bool is_valid(const GaussianState& state);

GaussianState make_vacuum();
GaussianState make_coherent(double n0);
// Anti-squeezed along q: cov = diag(e^{2s}, e^{-2s}).
GaussianState make_squeezed(double s);
GaussianState make_thermal(double n0);

double mean_photon_number(const GaussianState& state);
double purity(const GaussianState& state);

// Squared-overlap fidelity Tr[sqrt(sqrt(a) b sqrt(a))]^2 of two single-mode
// Gaussian states. Exactly 1 for identical arguments.
double fidelity(const GaussianState& a, const GaussianState& b);

// Statistics of the homodyne outcome q cos(theta) + p sin(theta).
QuadratureStats rotated_quadrature_stats(const GaussianState& state, double theta);

// Bose-Einstein occupation (e^{omega/T} - 1)^{-1}.
double thermal_number_from_temperature(const ModeSpec& mode);
double temperature_from_thermal_number(double omega, double nbar);

}  // namespace thermchan
