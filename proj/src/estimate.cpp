#include "affiq/estimate.hpp"

#include <cmath>

#include "affiq/errors.hpp"

namespace affiq {

MCEstimate mean_estimate(std::span<const double> values, std::uint64_t seed, double constant) {
    MCEstimate e;
    e.n_samples = values.size();
    e.seed = seed;
    e.value = constant * mean(values);
    e.std_error = std::abs(constant) * standard_error(values);
    return e;
}

MCEstimate power_mean_estimate(std::span<const double> values, double p, double constant,
                               std::uint64_t seed) {
    require(p != 0.0, ErrorCode::InvalidArgument, "p = 0 needs log_mean_estimate");
    const double raw = mean(values);
    require(raw > 0.0, ErrorCode::NumericFailure, "non-positive raw moment");
    MCEstimate e;
    e.n_samples = values.size();
    e.seed = seed;
    e.transform = MCEstimate::Transform::ReciprocalRoot;
    e.power = p;
    e.value = constant * std::pow(raw, 1.0 / p);
    e.std_error = std::abs(e.value) * standard_error(values) / (std::abs(p) * raw);
    return e;
}

MCEstimate log_mean_estimate(std::span<const double> log_values, double constant,
                             std::uint64_t seed) {
    MCEstimate e;
    e.n_samples = log_values.size();
    e.seed = seed;
    e.transform = MCEstimate::Transform::LogMean;
    e.value = constant * std::exp(mean(log_values));
    e.std_error = std::abs(e.value) * standard_error(log_values);
    return e;
}

double joint_std_error(const MCEstimate& a, const MCEstimate& b) {
    return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

double ratio_std_error(const MCEstimate& a, const MCEstimate& b) {
    const double r = a.value / b.value;
    const double ra = a.value != 0.0 ? a.std_error / a.value : 0.0;
    const double rb = b.value != 0.0 ? b.std_error / b.value : 0.0;
    return std::abs(r) * std::sqrt(ra * ra + rb * rb);
}

PairedMargin paired_power_margin(std::span<const double> a, std::span<const double> b,
                                 double p, double const_a, double const_b) {
    const std::size_t n = a.size();
    require(b.size() == n && n >= 2, ErrorCode::InvalidArgument, "paired sample sizes");
    const double ma = mean(a);
    const double mb = mean(b);
    const double va = sample_sd(a) * sample_sd(a) / n;
    const double vb = sample_sd(b) * sample_sd(b) / n;
    const double cab = sample_cov(a, b) / n;

    PairedMargin out;
    double ga = 0.0, gb = 0.0;  // d value / d mean
    if (p == 0.0) {
        out.value_a = const_a * std::exp(ma);
        out.value_b = const_b * std::exp(mb);
        ga = out.value_a;
        gb = out.value_b;
    } else {
        require(ma > 0.0 && mb > 0.0, ErrorCode::NumericFailure, "non-positive raw moment");
        out.value_a = const_a * std::pow(ma, 1.0 / p);
        out.value_b = const_b * std::pow(mb, 1.0 / p);
        ga = out.value_a / (p * ma);
        gb = out.value_b / (p * mb);
    }
    out.margin = out.value_a - out.value_b;
    const double var = ga * ga * va + gb * gb * vb - 2.0 * ga * gb * cab;
    out.std_error = std::sqrt(std::max(var, 0.0));
    return out;
}

PairedMargin paired_mean_margin(std::span<const double> a, std::span<const double> b,
                                double c) {
    const std::size_t n = a.size();
    require(b.size() == n && n >= 1, ErrorCode::InvalidArgument, "paired sample sizes");
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
    PairedMargin out;
    out.value_a = c * mean(a);
    out.value_b = c * mean(b);
    out.margin = c * mean(diff);
    out.std_error = std::abs(c) * standard_error(diff);
    return out;
}

}  // namespace affiq
