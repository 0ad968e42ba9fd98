#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "thermchan/gaussian_state.hpp"
#include "thermchan/thermal_channel.hpp"

namespace thermchan {

struct VacuumProbe {};
struct CoherentProbe {
  double n0 = 0.0;
};
struct SqueezedProbe {
  double s = 0.0;
};
struct ThermalProbe {
  double n0 = 0.0;
};

using ProbeSpec = std::variant<VacuumProbe, CoherentProbe, SqueezedProbe, ThermalProbe>;

// Squeezed vacuum carrying n0 photons on average (sinh^2 s = n0).
SqueezedProbe squeezed_with_energy(double n0);

GaussianState probe_state(const ProbeSpec& probe);
std::string describe(const ProbeSpec& probe);

// Channel output for the probe when the scenario fixes x as a function of y.
GaussianState output_state(const ProbeSpec& probe, const Scenario& scenario, double y);

// Finite-difference step as a fraction of the physical y-range width.
inline constexpr double kQfiStepFraction = 1e-4;

enum class QfiRoute {
  // 8 (1 - sqrt F) / eps^2
  Bures,
  // 4 (1 - F) / eps^2, same leading order; kept as a cross-check.
  Infidelity,
};

// Quantum Fisher information from the small-separation expansion of the
// fidelity between rho_y and rho_{y +- eps}, with one Richardson step
// (eps, eps/2). step defaults to kQfiStepFraction * range width. Throws
// PhysicalityError when y +- step leaves the range.
double qfi_numeric(const ProbeSpec& probe, const Scenario& scenario, double y,
                   std::optional<double> step = std::nullopt, QfiRoute route = QfiRoute::Bures);

// n0 / ((1 + 2 nbar)(1 + 2 nbar - y)); exact for coherent probes.
double qfi_coherent_exact(double nbar, double y, double n0);
// Large-n0 limits for thermal and squeezed probes.
double qfi_thermal_asymptotic(double nbar, double y);
double qfi_squeezed_asymptotic(double nbar, double y, double n0);

// Classical Fisher information of homodyne detection along theta. The
// outcome law is Normal(mu(y), v(y)), giving
//   F = mu'^2 / v + v'^2 / (2 v^2)
// with analytic y-derivatives. y must lie strictly inside the range.
double fisher_homodyne(const ProbeSpec& probe, const Scenario& scenario, double y, double theta);

// 1 / (N F)
double cramer_rao_bound(double fisher, std::uint64_t repetitions);

struct QfiScanRow {
  double y = 0.0;
  double qfi_numeric = 0.0;
  std::optional<double> qfi_closed_form;
  double fisher_homodyne = 0.0;
};

// Closed form for the probe, when the paper-style formula applies
// (zero ambient temperature, coherent / thermal / squeezed probe).
std::optional<double> qfi_closed_form(const ProbeSpec& probe, const Scenario& scenario, double y);

std::vector<QfiScanRow> qfi_scan(const ProbeSpec& probe, const Scenario& scenario,
                                 std::span<const double> ys, double theta = 0.0);

// `count` points strictly inside the range, inset by one step from each end.
std::vector<double> interior_grid(const YRange& range, std::size_t count);

}  // namespace thermchan
