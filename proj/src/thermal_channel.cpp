#include "thermchan/thermal_channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "thermchan/errors.hpp"

namespace thermchan {
namespace {

void require_occupation(double n, const char* what) {
  if (!std::isfinite(n) || n < 0.0) {
    throw InvalidArgument(std::string(what) + " must be finite and >= 0");
  }
}

std::string describe(const ThermalChannel& ch) {
  std::ostringstream os;
  os.precision(17);
  os << "(x=" << ch.x << ", y=" << ch.y << ")";
  return os.str();
}

}  // namespace

std::string_view to_string(ChannelClass c) {
  switch (c) {
    case ChannelClass::Hawking: return "Hawking";
    case ChannelClass::ClassicalAddNoise: return "ClassicalAddNoise";
    case ChannelClass::ZeroTransmission: return "ZeroTransmission";
    case ChannelClass::Lossy: return "Lossy";
    case ChannelClass::Amplifying: return "Amplifying";
    case ChannelClass::Unphysical: return "Unphysical";
  }
  return "Unknown";
}

bool is_physical(const ThermalChannel& ch) {
  return std::isfinite(ch.x) && std::isfinite(ch.y) && ch.y >= 0.0 &&
         ch.y >= std::abs(ch.x - 1.0) / 2.0 - kPhysicalityTolerance;
}

bool is_entanglement_breaking(const ThermalChannel& ch) {
  return ch.y >= (std::abs(ch.x) + 1.0) / 2.0 - kPhysicalityTolerance;
}

bool on_constraint_line(const ThermalChannel& ch, double nbar, double tol) {
  return std::abs(std::abs(ch.x) + ch.y - (2.0 * nbar + 1.0)) <= tol;
}

GaussianState apply(const ThermalChannel& ch, const GaussianState& state) {
  if (!is_physical(ch)) throw PhysicalityError("cannot apply unphysical channel " + describe(ch));

  // X cov X^T is formed entrywise so that |x| enters without a sqrt round trip.
  const double ax = std::abs(ch.x);
  const double root = std::sqrt(ax);
  const double sign = ch.x < 0.0 ? -1.0 : 1.0;

  GaussianState out;
  out.mean(0) = root * state.mean(0);
  out.mean(1) = sign * root * state.mean(1);
  out.cov(0, 0) = ax * state.cov(0, 0) + ch.y;
  out.cov(1, 1) = ax * state.cov(1, 1) + ch.y;
  out.cov(0, 1) = ch.x * state.cov(0, 1);
  out.cov(1, 0) = ch.x * state.cov(1, 0);
  return out;
}

YRange physical_y_range(double nbar) {
  require_occupation(nbar, "nbar");
  return {2.0 * nbar / 3.0, 2.0 * nbar + 1.0};
}

YRange scenario_y_range(const Scenario& scenario) {
  require_occupation(scenario.observed_n, "observed thermal number");
  require_occupation(scenario.ambient_nT, "ambient thermal number");
  if (scenario.ambient_nT == 0.0) return physical_y_range(scenario.observed_n);

  const double a = 2.0 * scenario.ambient_nT + 1.0;
  const double b = 2.0 * scenario.observed_n + 1.0;
  // y >= (x - 1)/2 on the amplifying side and y >= (1 - x)/2 on the lossy
  // side, with x = (b - y)/a.
  const double lo = std::max({0.0, (b - a) / (2.0 * a + 1.0), (a - b) / (2.0 * a - 1.0)});
  return {lo, b};
}

ThermalChannel channel_from_ambient(const Scenario& scenario, double y) {
  const YRange range = scenario_y_range(scenario);
  if (!std::isfinite(y) || y < range.lo - kPhysicalityTolerance || y > range.hi) {
    std::ostringstream os;
    os.precision(17);
    os << "y=" << y << " outside physical range [" << range.lo << ", " << range.hi << "]";
    throw PhysicalityError(os.str());
  }
  const double b = 2.0 * scenario.observed_n + 1.0;
  if (scenario.ambient_nT == 0.0) return {b - y, y};
  return {(b - y) / (2.0 * scenario.ambient_nT + 1.0), y};
}

ThermalChannel channel_from_thermality(double nbar, double y) {
  return channel_from_ambient(Scenario{nbar, 0.0}, y);
}

ThermalChannel hawking_channel(double nbar) {
  require_occupation(nbar, "nbar");
  return {nbar + 1.0, nbar};
}

ChannelClass classify(const ThermalChannel& ch, double nbar, double tol) {
  require_occupation(nbar, "nbar");
  if (!on_constraint_line(ch, nbar, tol)) {
    throw InvalidArgument("channel " + describe(ch) + " is not on the thermality line");
  }
  if (!is_physical(ch)) return ChannelClass::Unphysical;
  if (std::abs(ch.y - nbar) <= tol) return ChannelClass::Hawking;
  if (std::abs(ch.y - 2.0 * nbar) <= tol) return ChannelClass::ClassicalAddNoise;
  if (std::abs(ch.y - (2.0 * nbar + 1.0)) <= tol) return ChannelClass::ZeroTransmission;
  return ch.x < 1.0 ? ChannelClass::Lossy : ChannelClass::Amplifying;
}

double squeeze_parameter_from_Omega(double Omega) {
  if (!(Omega > 0.0) || !std::isfinite(Omega)) throw InvalidArgument("Omega must be positive");
  return std::atanh(std::exp(-Omega));
}

double hawking_nbar_from_Omega(double Omega) {
  if (!(Omega > 0.0) || !std::isfinite(Omega)) throw InvalidArgument("Omega must be positive");
  return 1.0 / std::expm1(2.0 * Omega);
}

Eigen::Matrix4d two_mode_squeezed_vacuum(double r) {
  if (!std::isfinite(r) || r < 0.0) throw InvalidArgument("squeezing r must be finite and >= 0");
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  cov.topLeftCorner<2, 2>() = c * Eigen::Matrix2d::Identity();
  cov.bottomRightCorner<2, 2>() = c * Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d z = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  cov.topRightCorner<2, 2>() = s * z;
  cov.bottomLeftCorner<2, 2>() = s * z;
  return cov;
}

GaussianState two_mode_squeeze_vacuum_then_trace(double r) {
  GaussianState out;
  out.cov = two_mode_squeezed_vacuum(r).topLeftCorner<2, 2>();
  return out;
}

double predicted_thermal_number(const ThermalChannel& ch, double nT) {
  require_occupation(nT, "ambient thermal number");
  if (!is_physical(ch)) throw PhysicalityError("unphysical channel " + describe(ch));
  return (std::abs(ch.x) * (2.0 * nT + 1.0) + ch.y - 1.0) / 2.0;
}

}  // namespace thermchan
