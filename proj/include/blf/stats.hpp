#ifndef BLF_STATS_HPP
#define BLF_STATS_HPP

#include <cstddef>
#include <vector>

namespace blf {

// Probabilities are clamped into [kProbFloor, kProbCeil] before any log so
// that likelihood ratios stay finite even when a spatial field wanders past
// the point where the normal CDF underflows.
inline constexpr double kProbFloor = 1e-300;
inline constexpr double kProbCeil = 1.0 - 1e-16;

double clamp_prob(double p);
double log_prob(double p);  // log of the clamped probability

// Standard normal density, CDF and quantile. The CDF goes through erfc and
// the quantile is the Wichura rational approximation; both are accurate to
// well below 1e-12 absolute over the usable double range.
double normal_pdf(double x);
double normal_cdf(double x);
double normal_quantile(double p);

// Stable log(1 + exp(x)).
double log1pexp(double x);

// logistic(x) = 1 / (1 + exp(-x)), evaluated without overflow.
double logistic(double x);

// P = 1/(1+exp(-log_odds)) from a log odds ratio, stable in both tails.
double prob_from_log_odds(double log_odds);

// Linear-interpolation empirical quantile (order statistics at h=(n-1)p).
// `sorted` must be ascending and nonempty.
double quantile_sorted(const std::vector<double>& sorted, double p);

double mean(const std::vector<double>& x);
double sample_variance(const std::vector<double>& x);  // n-1 denominator

}  // namespace blf

#endif
