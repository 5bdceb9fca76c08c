#include "blf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "blf/error.hpp"

namespace blf {

double clamp_prob(double p) {
    return std::clamp(p, kProbFloor, kProbCeil);
}

double log_prob(double p) {
    return std::log(clamp_prob(p));
}

double normal_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014327;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

namespace {

double poly_horner(const double* c, int m, double x) {
    double value = c[m];
    for (int i = m - 1; i >= 0; --i) value = value * x + c[i];
    return value;
}

}  // namespace

// Wichura's PPND16 rational approximation to the standard normal quantile.
double normal_quantile(double p) {
    static const double a[8] = {
        3.3871328727963666080,    1.3314166789178437745e+2,
        1.9715909503065514427e+3, 1.3731693765509461125e+4,
        4.5921953931549871457e+4, 6.7265770927008700853e+4,
        3.3430575583588128105e+4, 2.5090809287301226727e+3};
    static const double b[8] = {
        1.0,                      4.2313330701600911252e+1,
        6.8718700749205790830e+2, 5.3941960214247511077e+3,
        2.1213794301586595867e+4, 3.9307895800092710610e+4,
        2.8729085735721942674e+4, 5.2264952788528545610e+3};
    static const double c[8] = {
        1.42343711074968357734,    4.63033784615654529590,
        5.76949722146069140550,    3.64784832476320460504,
        1.27045825245236838258,    2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static const double d[8] = {
        1.0,                       2.05319162663775882187,
        1.67638483018380384940,    6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static const double e[8] = {
        6.65790464350110377720,    5.46378491116411436990,
        1.78482653991729133580,    2.96560571828504891230e-1,
        2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static const double f[8] = {
        1.0,                       5.99832206555887937690e-1,
        1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};

    if (p <= 0.0) return -HUGE_VAL;
    if (p >= 1.0) return HUGE_VAL;

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly_horner(a, 7, r) / poly_horner(b, 7, r);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = poly_horner(c, 7, r) / poly_horner(d, 7, r);
    } else {
        r -= 5.0;
        value = poly_horner(e, 7, r) / poly_horner(f, 7, r);
    }
    return (q < 0.0) ? -value : value;
}

double log1pexp(double x) {
    if (x > 35.0) return x;
    if (x < -35.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

double logistic(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double prob_from_log_odds(double log_odds) {
    return logistic(log_odds);
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw InvalidArgument("quantile of empty sample");
    p = std::clamp(p, 0.0, 1.0);
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = static_cast<double>(n - 1) * p;
    const std::size_t i = static_cast<std::size_t>(h);
    if (i + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

double mean(const std::vector<double>& x) {
    if (x.empty()) throw InvalidArgument("mean of empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_variance(const std::vector<double>& x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

}  // namespace blf
