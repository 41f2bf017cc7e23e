#pragma once

#include <functional>
#include <span>
#include <vector>

namespace levyspec {

// sup_x |F_n(x) - F(x)|.
double ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);
// sup_x |F_a(x) - F_b(x)|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

struct MeanSe {
  double mean;
  double se;  // sample sd / sqrt(n); 0 for a single value
};
MeanSe mean_se(std::span<const double> values);

double median(std::span<const double> values);

}  // namespace levyspec
