#ifndef BLF_RNG_HPP
#define BLF_RNG_HPP

#include <array>
#include <cstdint>

namespace blf {

// Philox 4x32-10 block cipher (Salmon et al. style counter-based generator).
// Four 32-bit counter words and a 64-bit key in, four pseudorandom 32-bit
// words out. Stateless, so any draw site can be addressed directly.
std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   uint64_t key);

// Identifies which transition kernel is consuming randomness. The numeric
// values are part of the reproducibility contract: changing them changes
// every chain.
enum class KernelId : uint32_t {
    truth = 1,
    zeta1 = 2,
    zeta0 = 3,
    phi_field = 4,
    eta_field = 5,
    tau_phi = 6,
    tau_eta = 7,
    beta = 8,
    gamma = 9,
    delta = 10,
    label_regen = 11,
    simgen = 12,
    init = 13,
};

// One independent random stream addressed by (seed, sweep, kernel/rater,
// site). Every voxel-level draw site in a sweep owns its own stream, so the
// values produced are independent of how sites are scheduled across workers.
// Within the stream, successive blocks advance a private block counter; a
// rejection sampler may consume as many variates as it needs.
class RngStream {
  public:
    RngStream(uint64_t seed, uint32_t sweep, KernelId kernel, uint32_t rater,
              uint32_t site);

    // Uniform on the open interval (0,1), 53-bit resolution.
    double uniform();
    // Standard normal via the inverse CDF.
    double normal();
    double normal(double mu, double sigma);
    // Gamma with given shape and *rate* (mean shape/rate).
    double gamma(double shape, double rate);
    // Normal(mu, sigma^2) restricted to (lower, upper); bounds may be
    // +-infinity. Inverse-CDF in the body of the distribution, exponential
    // rejection once the interval sits more than 5 sd into a tail.
    double truncated_normal(double mu, double sigma, double lower, double upper);
    bool bernoulli(double p);

  private:
    uint32_t next_u32();

    std::array<uint32_t, 4> prefix_;
    uint64_t key_;
    uint64_t block_ = 0;
    std::array<uint32_t, 4> buffer_{};
    int buffered_ = 0;
};

}  // namespace blf

#endif
