#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "affiq/rng.hpp"

namespace affiq {

// Neumaier-compensated accumulator; order-insensitive to ~1e-16 relative.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

double compensated_total(std::span<const double> values);
double mean(std::span<const double> values);
// Two-pass sample standard deviation (ddof = 1); 0 for fewer than 2 samples.
double sample_sd(std::span<const double> values);
// sd / sqrt(n)
double standard_error(std::span<const double> values);
// Sample covariance (ddof = 1) of paired arrays.
double sample_cov(std::span<const double> a, std::span<const double> b);

int default_thread_count();

// Evaluates out[i] = fn(i, rng.substream(i)) for i in [0, n). Work is split
// into fixed-size chunks claimed by a small thread pool; because every sample
// derives its own substream and lands at its own index, the filled buffer is
// byte-identical for any thread count.
void fill_indexed_samples(std::vector<double>& out, std::size_t n, const RngStream& base,
                          const std::function<double(std::size_t, RngStream)>& fn, int threads);

// Same contract for sample functions producing a pair of values.
void fill_indexed_sample_pairs(std::vector<double>& out_a, std::vector<double>& out_b,
                               std::size_t n, const RngStream& base,
                               const std::function<std::pair<double, double>(std::size_t, RngStream)>& fn,
                               int threads);

}  // namespace affiq
