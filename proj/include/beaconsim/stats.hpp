// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

namespace beaconsim::stats {

double mean(const std::vector<double>& xs);
double sample_stddev(const std::vector<double>& xs);  // n-1 denominator

/// Regularized incomplete beta function I_x(a, b).
double inc_beta(double a, double b, double x);

/// Two-sided 95% Student t critical value (0.975 quantile) for df >= 1.
double student_t_975(int df);

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;
  std::optional<double> ci95_half;  // empty when n < 2
};

Summary summarize(const std::vector<double>& xs);

/// True when [a ± ha] and [b ± hb] intersect.
bool intervals_overlap(double a, double ha, double b, double hb);

}  // namespace beaconsim::stats
