#pragma once

#include <cstdint>
#include <span>

#include "affiq/accum.hpp"

namespace affiq {

// Scalar Monte Carlo estimate with provenance. `transform` records the
// post-processing applied to the raw sample mean; the standard error is
// delta-method propagated through it.
struct MCEstimate {
    enum class Transform { None, ReciprocalRoot, LogMean };

    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    Transform transform = Transform::None;
    double power = 1.0;  // p of the reciprocal-root transform
};

// constant * mean(values)
MCEstimate mean_estimate(std::span<const double> values, std::uint64_t seed,
                         double constant = 1.0);

// constant * mean(values)^{1/p}; values are the already-powered samples X^p.
// stderr_out = |value| * stderr_raw / (|p| * raw_mean).
MCEstimate power_mean_estimate(std::span<const double> values, double p, double constant,
                               std::uint64_t seed);

// constant * exp(mean(log_values)); stderr by the delta method.
MCEstimate log_mean_estimate(std::span<const double> log_values, double constant,
                             std::uint64_t seed);

// a - b for independent estimates: stderr = sqrt(sa^2 + sb^2).
double joint_std_error(const MCEstimate& a, const MCEstimate& b);

// Standard error of a/b assuming independence (delta method).
double ratio_std_error(const MCEstimate& a, const MCEstimate& b);

// Margin between two transformed means computed from common random numbers;
// the standard error keeps the full 2x2 sample covariance.
struct PairedMargin {
    double value_a = 0.0;
    double value_b = 0.0;
    double margin = 0.0;  // value_a - value_b
    double std_error = 0.0;
};

// value_x = const_x * mean(x)^{1/p} (p != 0) or const_x * exp(mean(x)) for the
// log path (pass p = 0 with log-domain samples).
PairedMargin paired_power_margin(std::span<const double> a, std::span<const double> b,
                                 double p, double const_a, double const_b);

// Linear case: margin = c * (mean a - mean b), stderr from var(a_i - b_i).
PairedMargin paired_mean_margin(std::span<const double> a, std::span<const double> b,
                                double c = 1.0);

}  // namespace affiq
