#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "thermchan/estimation.hpp"

namespace thermchan {

// Raw homodyne data for one probe / channel configuration.
struct HomodyneRecord {
  double theta = 0.0;
  std::vector<double> outcomes;
  ProbeSpec probe;
  Scenario scenario;
  std::uint64_t seed = 0;
};

enum class Estimator { MaxLikelihood, Moments };

std::string_view to_string(Estimator e);

struct EstimationResult {
  double y_hat = 0.0;
  double std_error = 0.0;
  double fisher_used = 0.0;
  std::uint64_t n_samples = 0;
  Estimator estimator = Estimator::MaxLikelihood;
  bool clamped = false;
};

struct CampaignSummary {
  std::vector<EstimationResult> estimates;  // repetition-index order
  double mean_y_hat = 0.0;
  double variance = 0.0;  // unbiased sample variance of y_hat
  double fisher = 0.0;    // homodyne Fisher information at y_true
  double crb = 0.0;       // 1 / (N F)
  double efficiency = 0.0;
  std::uint64_t clamped_count = 0;
};

// Absolute tolerance on y for the likelihood maximisation.
inline constexpr double kMleTolerance = 1e-8;

// Seed of repetition `index` in a campaign started from `seed` (splitmix64
// finaliser applied to seed + golden-ratio * (index + 1)).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

// N i.i.d. draws from Normal(mu, v), with (mu, v) the rotated-quadrature
// statistics of the channel output at y_true. Bit-reproducible per seed on
// a given standard library.
HomodyneRecord sample_homodyne(const ProbeSpec& probe, const Scenario& scenario, double y_true,
                               double theta, std::uint64_t n, std::uint64_t seed);

// Maximum-likelihood estimate of y over the closed physical range.
EstimationResult mle_estimate(const HomodyneRecord& record);

// Inverts <q> = 2 sqrt(x) sqrt(n0) for a coherent probe measured at theta = 0.
EstimationResult moments_estimate(const HomodyneRecord& record);

// M independent experiments of N shots each. Repetitions run on up to
// `threads` workers (0 = hardware concurrency); the summary does not depend
// on the thread count.
CampaignSummary run_campaign(const ProbeSpec& probe, const Scenario& scenario, double y_true,
                             double theta, std::uint64_t n, std::uint64_t repetitions,
                             std::uint64_t seed, Estimator estimator = Estimator::MaxLikelihood,
                             unsigned threads = 0);

}  // namespace thermchan
