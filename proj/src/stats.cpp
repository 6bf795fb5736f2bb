// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace beaconsim::stats {

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

namespace {

// Continued fraction for the incomplete beta function (Lentz's method).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kTiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double inc_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("inc_beta needs a,b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln_front);
  // use whichever tail converges fast
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_975(int df) {
  if (df < 1) throw std::invalid_argument("student_t_975 needs df >= 1");
  double nu = df;
  // P(T <= t) = 1 - inc_beta(nu/2, 1/2, nu/(nu+t^2))/2 for t >= 0,
  // monotone in t, so bisect.
  auto upper_tail = [nu](double t) { return 0.5 * inc_beta(nu / 2.0, 0.5, nu / (nu + t * t)); };
  double lo = 0.0, hi = 1024.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (upper_tail(mid) > 0.025)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  s.n = xs.size();
  s.mean = mean(xs);
  s.stddev = sample_stddev(xs);
  if (s.n >= 2)
    s.ci95_half = student_t_975(static_cast<int>(s.n) - 1) * s.stddev /
                  std::sqrt(static_cast<double>(s.n));
  return s;
}

bool intervals_overlap(double a, double ha, double b, double hb) {
  return a - ha <= b + hb && b - hb <= a + ha;
}

}  // namespace beaconsim::stats
