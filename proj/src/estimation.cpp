#include "thermchan/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thermchan/errors.hpp"

namespace thermchan {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_open_interior(const YRange& range, double y, const char* who) {
  if (!std::isfinite(y) || !range.contains_open(y)) {
    std::ostringstream os;
    os.precision(17);
    os << who << ": y=" << y << " must lie strictly inside (" << range.lo << ", " << range.hi << ")";
    throw PhysicalityError(os.str());
  }
}

void require_closed_form_domain(double nbar, double y, bool exclude_zero, const char* who) {
  if (!std::isfinite(nbar) || nbar < 0.0) throw InvalidArgument(std::string(who) + ": nbar must be >= 0");
  const double top = 2.0 * nbar + 1.0;
  const bool low_ok = exclude_zero ? y > 0.0 : y >= 0.0;
  if (!std::isfinite(y) || !low_ok || !(y < top)) {
    std::ostringstream os;
    os.precision(17);
    os << who << ": y=" << y << " outside the formula domain";
    throw PhysicalityError(os.str());
  }
}

}  // namespace

SqueezedProbe squeezed_with_energy(double n0) {
  if (!std::isfinite(n0) || n0 < 0.0) throw InvalidArgument("squeezed probe energy must be >= 0");
  return {std::asinh(std::sqrt(n0))};
}

GaussianState probe_state(const ProbeSpec& probe) {
  return std::visit(Overloaded{
                        [](const VacuumProbe&) { return make_vacuum(); },
                        [](const CoherentProbe& p) { return make_coherent(p.n0); },
                        [](const SqueezedProbe& p) { return make_squeezed(p.s); },
                        [](const ThermalProbe& p) { return make_thermal(p.n0); },
                    },
                    probe);
}

std::string describe(const ProbeSpec& probe) {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const VacuumProbe&) { os << "vacuum"; },
                 [&](const CoherentProbe& p) { os << "coherent(n0=" << p.n0 << ")"; },
                 [&](const SqueezedProbe& p) { os << "squeezed(s=" << p.s << ")"; },
                 [&](const ThermalProbe& p) { os << "thermal(n0=" << p.n0 << ")"; },
             },
             probe);
  return os.str();
}

GaussianState output_state(const ProbeSpec& probe, const Scenario& scenario, double y) {
  return apply(channel_from_ambient(scenario, y), probe_state(probe));
}

double qfi_numeric(const ProbeSpec& probe, const Scenario& scenario, double y,
                   std::optional<double> step, QfiRoute route) {
  const YRange range = scenario_y_range(scenario);
  const double eps = step.value_or(kQfiStepFraction * range.width());
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("qfi_numeric: step must be positive");
  if (!std::isfinite(y) || y - eps < range.lo || y + eps > range.hi) {
    std::ostringstream os;
    os.precision(17);
    os << "qfi_numeric: stencil y=" << y << " +- " << eps << " leaves [" << range.lo << ", "
       << range.hi << "]";
    throw PhysicalityError(os.str());
  }

  const GaussianState centre = output_state(probe, scenario, y);
  const auto distance = [&](double offset) {
    const double f = fidelity(centre, output_state(probe, scenario, y + offset));
    return route == QfiRoute::Bures ? 8.0 * (1.0 - f) / (1.0 + std::sqrt(f)) : 4.0 * (1.0 - f);
  };
  const auto estimate = [&](double e) { return (distance(e) + distance(-e)) / (2.0 * e * e); };

  const double coarse = estimate(eps);
  const double fine = estimate(eps / 2.0);
  return std::max(0.0, (4.0 * fine - coarse) / 3.0);
}

double qfi_coherent_exact(double nbar, double y, double n0) {
  require_closed_form_domain(nbar, y, false, "qfi_coherent_exact");
  if (!std::isfinite(n0) || n0 < 0.0) throw InvalidArgument("qfi_coherent_exact: n0 must be >= 0");
  const double total = 1.0 + 2.0 * nbar;
  return n0 / (total * (total - y));
}

double qfi_thermal_asymptotic(double nbar, double y) {
  require_closed_form_domain(nbar, y, true, "qfi_thermal_asymptotic");
  const double gap = 1.0 + 2.0 * nbar - y;
  return 1.0 / (gap * gap);
}

double qfi_squeezed_asymptotic(double nbar, double y, double n0) {
  require_closed_form_domain(nbar, y, true, "qfi_squeezed_asymptotic");
  if (!std::isfinite(n0) || n0 < 0.0) throw InvalidArgument("qfi_squeezed_asymptotic: n0 must be >= 0");
  const double total = 1.0 + 2.0 * nbar;
  return 0.75 * total * total * n0 / (y * (total - y));
}

double fisher_homodyne(const ProbeSpec& probe, const Scenario& scenario, double y, double theta) {
  const YRange range = scenario_y_range(scenario);
  require_open_interior(range, y, "fisher_homodyne");

  const GaussianState input = probe_state(probe);
  const ThermalChannel ch = channel_from_ambient(scenario, y);
  const QuadratureStats out = rotated_quadrature_stats(apply(ch, input), theta);
  const QuadratureStats in = rotated_quadrature_stats(input, theta);

  // Along the scenario line x = (2n' + 1 - y) / (2 nT + 1) >= 0, so
  // mu = sqrt(x) * mu_in and v = x * v_in + y.
  const double dx = -1.0 / (2.0 * scenario.ambient_nT + 1.0);
  const double dmu_sq = in.mean == 0.0 ? 0.0 : in.mean * in.mean * dx * dx / (4.0 * ch.x);
  const double dv = in.variance * dx + 1.0;
  return dmu_sq / out.variance + dv * dv / (2.0 * out.variance * out.variance);
}

double cramer_rao_bound(double fisher, std::uint64_t repetitions) {
  if (!(fisher > 0.0) || !std::isfinite(fisher)) throw InvalidArgument("cramer_rao_bound: Fisher information must be positive");
  if (repetitions == 0) throw InvalidArgument("cramer_rao_bound: need at least one repetition");
  return 1.0 / (static_cast<double>(repetitions) * fisher);
}

std::optional<double> qfi_closed_form(const ProbeSpec& probe, const Scenario& scenario, double y) {
  if (scenario.ambient_nT != 0.0) return std::nullopt;
  const double nbar = scenario.observed_n;
  return std::visit(Overloaded{
                        [](const VacuumProbe&) -> std::optional<double> { return 0.0; },
                        [&](const CoherentProbe& p) -> std::optional<double> {
                          return qfi_coherent_exact(nbar, y, p.n0);
                        },
                        [&](const SqueezedProbe& p) -> std::optional<double> {
                          const double n0 = std::sinh(p.s) * std::sinh(p.s);
                          return qfi_squeezed_asymptotic(nbar, y, n0);
                        },
                        [&](const ThermalProbe&) -> std::optional<double> {
                          return qfi_thermal_asymptotic(nbar, y);
                        },
                    },
                    probe);
}

std::vector<QfiScanRow> qfi_scan(const ProbeSpec& probe, const Scenario& scenario,
                                 std::span<const double> ys, double theta) {
  std::vector<QfiScanRow> rows;
  rows.reserve(ys.size());
  for (double y : ys) {
    rows.push_back({y, qfi_numeric(probe, scenario, y), qfi_closed_form(probe, scenario, y),
                    fisher_homodyne(probe, scenario, y, theta)});
  }
  return rows;
}

std::vector<double> interior_grid(const YRange& range, std::size_t count) {
  if (count == 0) throw InvalidArgument("grid needs at least one point");
  const double h = range.width() / static_cast<double>(count + 1);
  std::vector<double> ys(count);
  for (std::size_t i = 0; i < count; ++i) ys[i] = range.lo + static_cast<double>(i + 1) * h;
  return ys;
}

}  // namespace thermchan
