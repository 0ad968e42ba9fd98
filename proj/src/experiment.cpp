#include "thermchan/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "thermchan/errors.hpp"

namespace thermchan {
namespace {

constexpr std::size_t kCoarseGrid = 129;

struct SufficientStats {
  double mean = 0.0;
  double second_central = 0.0;  // (1/N) sum (o - mean)^2
  double sample_variance = 0.0;  // 1/(N-1) normalisation
};

SufficientStats summarise(const std::vector<double>& xs) {
  // Welford
  SufficientStats s;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double v : xs) {
    ++k;
    const double d = v - s.mean;
    s.mean += d / static_cast<double>(k);
    m2 += d * (v - s.mean);
  }
  s.second_central = m2 / static_cast<double>(k);
  s.sample_variance = k > 1 ? m2 / static_cast<double>(k - 1) : 0.0;
  return s;
}

void validate(const HomodyneRecord& record) {
  if (record.outcomes.empty()) throw InvalidArgument("homodyne record has no outcomes");
  for (double v : record.outcomes) {
    if (!std::isfinite(v)) throw InvalidArgument("homodyne record contains non-finite outcomes");
  }
  if (!std::isfinite(record.theta)) throw InvalidArgument("homodyne angle must be finite");
}

// Fisher information at y, pulled off the range endpoints where the
// homodyne information of a displaced probe diverges.
double fisher_near(const HomodyneRecord& record, const YRange& range, double y) {
  const double inset = 1e-6 * range.width();
  const double yy = std::clamp(y, range.lo + inset, range.hi - inset);
  return fisher_homodyne(record.probe, record.scenario, yy, record.theta);
}

}  // namespace

std::string_view to_string(Estimator e) {
  return e == Estimator::MaxLikelihood ? "MaxLikelihood" : "Moments";
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

HomodyneRecord sample_homodyne(const ProbeSpec& probe, const Scenario& scenario, double y_true,
                               double theta, std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("need at least one homodyne sample");
  if (!std::isfinite(theta)) throw InvalidArgument("homodyne angle must be finite");
  const QuadratureStats stats = rotated_quadrature_stats(output_state(probe, scenario, y_true), theta);

  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(stats.mean, std::sqrt(stats.variance));

  HomodyneRecord record{theta, {}, probe, scenario, seed};
  record.outcomes.resize(n);
  for (auto& v : record.outcomes) v = normal(engine);
  return record;
}

EstimationResult mle_estimate(const HomodyneRecord& record) {
  validate(record);
  const YRange range = scenario_y_range(record.scenario);
  const SufficientStats stats = summarise(record.outcomes);
  const GaussianState input = probe_state(record.probe);

  // Per-sample negative log-likelihood up to a constant.
  const auto nll = [&](double y) {
    const ThermalChannel ch = channel_from_ambient(record.scenario, std::clamp(y, range.lo, range.hi));
    const QuadratureStats q = rotated_quadrature_stats(apply(ch, input), record.theta);
    const double dm = stats.mean - q.mean;
    return 0.5 * std::log(q.variance) + (stats.second_central + dm * dm) / (2.0 * q.variance);
  };

  // Coarse scan to bracket the global maximum; the first best point wins so
  // ties go to smaller y.
  const double h = range.width() / static_cast<double>(kCoarseGrid - 1);
  std::size_t best = 0;
  double best_value = nll(range.lo);
  for (std::size_t i = 1; i < kCoarseGrid; ++i) {
    const double y = i + 1 == kCoarseGrid ? range.hi : range.lo + static_cast<double>(i) * h;
    const double v = nll(y);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (range.width() == 0.0) best = 0;

  double y_hat = range.lo + static_cast<double>(best) * h;
  if (range.width() > 0.0) {
    const double a = std::max(range.lo, y_hat - h);
    const double b = std::min(range.hi, y_hat + h);
    // 2^-30 relative precision keeps the absolute error below kMleTolerance
    // for ranges of order one.
    const auto [y_min, v_min] = boost::math::tools::brent_find_minima(nll, a, b, 32);
    if (v_min < best_value) {
      y_hat = y_min;
      best_value = v_min;
    }
  }

  bool clamped = false;
  if (y_hat - range.lo <= kMleTolerance) {
    y_hat = range.lo;
    clamped = true;
  } else if (range.hi - y_hat <= kMleTolerance) {
    y_hat = range.hi;
    clamped = true;
  }

  const double fisher = fisher_near(record, range, y_hat);
  if (!(fisher > 0.0)) {
    throw InvalidArgument("likelihood is flat in y for " + describe(record.probe) + "; y is not identifiable");
  }
  const auto n = static_cast<std::uint64_t>(record.outcomes.size());
  return {y_hat, std::sqrt(1.0 / (static_cast<double>(n) * fisher)), fisher, n,
          Estimator::MaxLikelihood, clamped};
}

EstimationResult moments_estimate(const HomodyneRecord& record) {
  validate(record);
  const auto* coherent = std::get_if<CoherentProbe>(&record.probe);
  if (coherent == nullptr) throw InvalidArgument("moments estimator requires a coherent probe");
  if (record.theta != 0.0) throw InvalidArgument("moments estimator requires theta = 0");
  if (!(coherent->n0 > 0.0)) throw InvalidArgument("moments estimator requires n0 > 0");

  const YRange range = scenario_y_range(record.scenario);
  const SufficientStats stats = summarise(record.outcomes);
  const double a = 2.0 * record.scenario.ambient_nT + 1.0;
  const double b = 2.0 * record.scenario.observed_n + 1.0;

  const double root_x = stats.mean / (2.0 * std::sqrt(coherent->n0));
  const double x_hat = root_x * root_x;
  double y_hat = b - x_hat * a;

  bool clamped = false;
  if (y_hat < range.lo) {
    y_hat = range.lo;
    clamped = true;
  } else if (y_hat > range.hi) {
    y_hat = range.hi;
    clamped = true;
  }

  const auto n = static_cast<std::uint64_t>(record.outcomes.size());
  double variance = stats.sample_variance;
  if (n < 2) {
    variance = rotated_quadrature_stats(output_state(record.probe, record.scenario, y_hat), 0.0).variance;
  }
  // Delta method on y = b - a qbar^2 / (4 n0).
  const double slope = a * std::abs(stats.mean) / (2.0 * coherent->n0);
  const double std_error = slope * std::sqrt(variance / static_cast<double>(n));
  return {y_hat, std_error, fisher_near(record, range, y_hat), n, Estimator::Moments, clamped};
}

CampaignSummary run_campaign(const ProbeSpec& probe, const Scenario& scenario, double y_true,
                             double theta, std::uint64_t n, std::uint64_t repetitions,
                             std::uint64_t seed, Estimator estimator, unsigned threads) {
  if (repetitions < 2) throw InvalidArgument("a campaign needs at least two repetitions");
  CampaignSummary summary;
  summary.fisher = fisher_homodyne(probe, scenario, y_true, theta);
  summary.crb = cramer_rao_bound(summary.fisher, n);
  summary.estimates.resize(repetitions);

  const auto run_one = [&](std::uint64_t rep) {
    const HomodyneRecord record =
        sample_homodyne(probe, scenario, y_true, theta, n, derive_stream_seed(seed, rep));
    summary.estimates[rep] =
        estimator == Estimator::MaxLikelihood ? mle_estimate(record) : moments_estimate(record);
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, repetitions));
  std::exception_ptr failure;
  {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::uint64_t rep = w; rep < repetitions; rep += workers) run_one(rep);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (auto& e : errors) {
      if (e && !failure) failure = e;
    }
  }
  if (failure) std::rethrow_exception(failure);

  double mean = 0.0;
  for (const auto& e : summary.estimates) mean += e.y_hat;
  mean /= static_cast<double>(repetitions);
  double ss = 0.0;
  for (const auto& e : summary.estimates) {
    ss += (e.y_hat - mean) * (e.y_hat - mean);
    if (e.clamped) ++summary.clamped_count;
  }
  summary.mean_y_hat = mean;
  summary.variance = ss / static_cast<double>(repetitions - 1);
  summary.efficiency = summary.variance > 0.0 ? summary.crb / summary.variance : 0.0;
  return summary;
}

}  // namespace thermchan
