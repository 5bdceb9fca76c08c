#include "blf/rng.hpp"

#include <cmath>
#include <limits>

#include "blf/error.hpp"
#include "blf/stats.hpp"

namespace blf {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    const uint64_t prod = static_cast<uint64_t>(a) * static_cast<uint64_t>(b);
    hi = static_cast<uint32_t>(prod >> 32);
    lo = static_cast<uint32_t>(prod);
}

inline std::array<uint32_t, 4> philox_round(const std::array<uint32_t, 4>& ctr,
                                            uint32_t k0, uint32_t k1) {
    uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    return {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
}

}  // namespace

std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   uint64_t key) {
    std::array<uint32_t, 4> ctr = counter;
    uint32_t k0 = static_cast<uint32_t>(key);
    uint32_t k1 = static_cast<uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k0 += kPhiloxW0;
            k1 += kPhiloxW1;
        }
        ctr = philox_round(ctr, k0, k1);
    }
    return ctr;
}

RngStream::RngStream(uint64_t seed, uint32_t sweep, KernelId kernel,
                     uint32_t rater, uint32_t site) {
    // Counter layout: [sweep | kernel/rater | site | block]. The kernel word
    // reserves the low 16 bits for the rater index.
    prefix_ = {sweep, (static_cast<uint32_t>(kernel) << 16) | (rater & 0xFFFFu),
               site, 0};
    key_ = seed;
}

uint32_t RngStream::next_u32() {
    if (buffered_ == 0) {
        std::array<uint32_t, 4> ctr = prefix_;
        ctr[3] = static_cast<uint32_t>(block_++);
        buffer_ = philox4x32(ctr, key_);
        buffered_ = 4;
    }
    return buffer_[4 - buffered_--];
}

double RngStream::uniform() {
    const uint64_t hi = next_u32();
    const uint64_t lo = next_u32();
    const uint64_t bits = ((hi << 32) | lo) >> 11;  // top 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
    return normal_quantile(uniform());
}

double RngStream::normal(double mu, double sigma) {
    return mu + sigma * normal();
}

// Marsaglia-Tsang squeeze; shapes below one go through the boost identity
// gamma(a) = gamma(a+1) * U^{1/a}.
double RngStream::gamma(double shape, double rate) {
    if (shape <= 0.0 || rate <= 0.0)
        throw InvalidArgument("gamma draw needs positive shape and rate");
    double boost = 1.0;
    if (shape < 1.0) {
        boost = std::pow(uniform(), 1.0 / shape);
        shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return boost * d * v / rate;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return boost * d * v / rate;
    }
}

namespace {

constexpr double kTailCut = 5.0;

}  // namespace

double RngStream::truncated_normal(double mu, double sigma, double lower,
                                   double upper) {
    if (!(lower < upper))
        throw InvalidArgument("truncated normal needs lower < upper");
    if (sigma <= 0.0)
        throw InvalidArgument("truncated normal needs sigma > 0");
    double lo = (lower - mu) / sigma;
    double hi = (upper - mu) / sigma;

    // Reflect so any deep-tail interval lies in the right tail.
    bool flipped = false;
    if (hi < -kTailCut) {
        std::swap(lo, hi);
        lo = -lo;
        hi = -hi;
        flipped = true;
    }

    double z;
    if (lo > kTailCut) {
        // Exponential (Robert-style) rejection anchored at the lower bound.
        const double alpha = 0.5 * (lo + std::sqrt(lo * lo + 4.0));
        for (;;) {
            z = lo - std::log(uniform()) / alpha;
            if (z > hi) continue;
            const double diff = z - alpha;
            if (std::log(uniform()) <= -0.5 * diff * diff) break;
        }
    } else {
        const double p_lo = std::isinf(lo) ? 0.0 : normal_cdf(lo);
        const double p_hi = std::isinf(hi) ? 1.0 : normal_cdf(hi);
        if (p_hi - p_lo <= 0.0) {
            // Numerically collapsed interval; return the nearer endpoint.
            z = std::isinf(lo) ? hi : lo;
        } else {
            const double u = p_lo + uniform() * (p_hi - p_lo);
            z = normal_quantile(u);
            if (z < lo) z = lo;
            if (z > hi) z = hi;
        }
    }

    if (flipped) z = -z;
    return mu + sigma * z;
}

bool RngStream::bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform() < p;
}

}  // namespace blf
