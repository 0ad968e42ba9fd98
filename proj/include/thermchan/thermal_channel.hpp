#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "thermchan/gaussian_state.hpp"

namespace thermchan {

// Phase-insensitive single-mode channel
//   X = diag(sqrt|x|, sgn(x) sqrt|x|),  Y = y I,
// acting as d' = X d and cov' = X cov X^T + Y.
struct ThermalChannel {
  double x = 1.0;
  double y = 0.0;

  bool operator==(const ThermalChannel&) const = default;
};

// Observed thermality context. observed_n is the occupation number seen
// from the horizon (nbar at zero ambient temperature, n' otherwise);
// ambient_nT is the occupation of the pre-existing environment.
struct Scenario {
  double observed_n = 0.0;
  double ambient_nT = 0.0;
};

enum class ChannelClass { Hawking, ClassicalAddNoise, ZeroTransmission, Lossy, Amplifying, Unphysical };

std::string_view to_string(ChannelClass c);

// Closed interval of admissible y values.
struct YRange {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double y) const { return y >= lo && y <= hi; }
  bool contains_open(double y) const { return y > lo && y < hi; }
};

inline constexpr double kPhysicalityTolerance = 1e-12;
inline constexpr double kClassifyTolerance = 1e-9;

bool is_physical(const ThermalChannel& ch);
bool is_entanglement_breaking(const ThermalChannel& ch);

// |x| + y == 2 nbar + 1 within tol.
bool on_constraint_line(const ThermalChannel& ch, double nbar, double tol = kClassifyTolerance);

// Throws PhysicalityError for unphysical channels.
GaussianState apply(const ThermalChannel& ch, const GaussianState& state);

// [2 nbar / 3, 2 nbar + 1].
YRange physical_y_range(double nbar);

// Range of y for which the channel identified through the ambient
// correction is physical. Equals physical_y_range(observed_n) when
// ambient_nT == 0.
YRange scenario_y_range(const Scenario& scenario);

// x = 2 nbar + 1 - y; throws PhysicalityError when y leaves physical_y_range.
ThermalChannel channel_from_thermality(double nbar, double y);

// x = (2 n' + 1 - y) / (2 nT + 1).
ThermalChannel channel_from_ambient(const Scenario& scenario, double y);

ThermalChannel hawking_channel(double nbar);

// Precedence: Unphysical, then the named points, then Lossy / Amplifying.
// Throws InvalidArgument if the channel is off the nbar constraint line.
ChannelClass classify(const ThermalChannel& ch, double nbar, double tol = kClassifyTolerance);

// Two-mode squeezing strength r = artanh(e^{-Omega}) and the resulting
// occupation sinh^2 r = 1 / (e^{2 Omega} - 1).
double squeeze_parameter_from_Omega(double Omega);
double hawking_nbar_from_Omega(double Omega);

// Covariance of the two-mode squeezed vacuum in the (q1, p1, q2, p2) ordering.
Eigen::Matrix4d two_mode_squeezed_vacuum(double r);

// Reduced state of mode I after tracing out mode II.
GaussianState two_mode_squeeze_vacuum_then_trace(double r);

// n' from 2 n' + 1 = |x| (2 nT + 1) + y.
double predicted_thermal_number(const ThermalChannel& ch, double nT);

}  // namespace thermchan
