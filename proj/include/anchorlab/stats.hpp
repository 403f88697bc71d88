#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace anchorlab {

double mean(std::span<const double> values);
/// Population standard deviation.
double stddev(std::span<const double> values);

/// Ranks starting at 1; tied values share their average rank.
std::vector<double> fractional_ranks(std::span<const double> values);
double pearson(std::span<const double> a, std::span<const double> b);
double spearman(std::span<const double> a, std::span<const double> b);

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::size_t> counts;

    double bin_width() const { return counts.empty() ? 0.0 : (hi - lo) / counts.size(); }
};

/// Equal-width bins over [min, max] of the data; the maximum lands in the last bin.
Histogram histogram(std::span<const double> values, std::size_t bins = 20);

/// Third standardized moment (population form).
double skewness(std::span<const double> values);

}  // namespace anchorlab
