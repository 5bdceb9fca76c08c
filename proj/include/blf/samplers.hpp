#ifndef BLF_SAMPLERS_HPP
#define BLF_SAMPLERS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "blf/lattice.hpp"
#include "blf/model.hpp"
#include "blf/parallel.hpp"

namespace blf {

// Kernel switches, mainly for freezing blocks in tests and small studies.
// Everything defaults on except the coefficient updates, which only matter
// when per-rater covariates are supplied.
struct KernelToggles {
    bool truth = true;
    bool zeta = true;
    bool fields = true;
    bool tau = true;
    bool beta_gamma = false;
    bool delta = true;
};

struct SamplerConfig {
    long n_iterations = 100000;
    long burn_in = 50000;
    long thin = 25;
    uint64_t rng_seed = 0;
    int n_workers = 1;
    KernelToggles update;
    bool store_rb = true;  // keep the full matrix of retained conditionals

    long n_retained() const { return (n_iterations - burn_in) / thin; }
    void validate() const;
};

// One retained iterate, handed to the streaming callback as it is produced.
struct RetainedSample {
    long iteration;
    double volume;
    const Eigen::VectorXd& rb_probs;
    const Eigen::VectorXd& delta;
    const Eigen::VectorXd& tau_phi;
    const Eigen::VectorXd& tau_eta;
};

// Thinned post-burn-in output of one chain.
struct ChainOutput {
    std::vector<long> iterations;
    Eigen::MatrixXd rb_probs;         // n_retained x V (0 x V when not stored)
    std::vector<double> volume_samples;
    Eigen::MatrixXd delta_samples;    // n_retained x J
    Eigen::MatrixXd tau_phi_samples;  // n_retained x R
    Eigen::MatrixXd tau_eta_samples;  // n_retained x R
    Eigen::VectorXd rb_sum;           // per-voxel running sums of conditionals
    Eigen::VectorXd rb_sumsq;
    Eigen::MatrixXd sens_mean;        // V x R posterior mean reliabilities
    Eigen::MatrixXd spec_mean;
    long n_retained = 0;
    long accepted_delta = 0;
    long proposed_delta = 0;
    double acceptance_rate_delta = 0.0;
};

// ---- individual transition kernels ----------------------------------------
// Every kernel draws all of its randomness from streams keyed by
// (seed, sweep, kernel, rater, voxel), so a draw never depends on scheduling.

// Redraws the augmented variables under their sign constraints.
void update_zeta(ModelState& state, const FusionDataset& data, uint64_t seed,
                 uint32_t sweep);

// P(T_v = 1 | everything but T and zeta, Y), evaluated in log space.
Eigen::VectorXd truth_conditional_probs(const ModelState& state,
                                        const FusionDataset& data,
                                        const HyperConfig& hyper);

// Draws T from its conditional with zeta marginalized out. Callers must
// refresh zeta before any kernel that conditions on it.
void update_truth(ModelState& state, const FusionDataset& data,
                  const HyperConfig& hyper, uint64_t seed, uint32_t sweep);

// Mean and variance of the single-site conditional at voxel v.
std::pair<double, double> field_conditional_moments(
    Reliability which, int r, int v, const ModelState& state,
    const FusionDataset& data, const LatticeGraph& graph,
    const HyperConfig& hyper);

// Chromatic update of one spatial field: color classes in fixed order, the
// sites of a class drawn simultaneously (optionally across workers) against
// the latest values of the other classes.
void update_spatial_field(Reliability which, int r, ModelState& state,
                          const FusionDataset& data, const LatticeGraph& graph,
                          const Coloring& coloring, const HyperConfig& hyper,
                          uint64_t seed, uint32_t sweep,
                          WorkerPool* pool = nullptr);

// Conjugate Gamma step for one field precision.
void update_tau(Reliability which, int r, ModelState& state,
                const LatticeGraph& graph, const HyperConfig& hyper,
                uint64_t seed, uint32_t sweep);

// Conjugate Gaussian steps for the reliability regression coefficients;
// no-ops when the corresponding covariates are absent.
void update_beta(int r, ModelState& state, const FusionDataset& data,
                 const HyperConfig& hyper, uint64_t seed, uint32_t sweep);
void update_gamma(int r, ModelState& state, const FusionDataset& data,
                  const HyperConfig& hyper, uint64_t seed, uint32_t sweep);

// Gaussian approximation N(mean, precision^{-1}) to the delta conditional,
// linearized at `at`: the working-response weighted least squares system,
// with the conditional-mean-prior pseudo observations appended as weighted
// rows when that prior is in force.
struct DeltaProposal {
    Eigen::VectorXd mean;
    Eigen::MatrixXd precision;
};
DeltaProposal delta_proposal(const Eigen::VectorXd& at, const ModelState& state,
                             const FusionDataset& data, const HyperConfig& hyper);

// One Metropolis-Hastings step with the proposal recomputed at the proposed
// point for the reverse density. Returns whether the move was accepted.
bool update_delta_gamerman(ModelState& state, const FusionDataset& data,
                           const HyperConfig& hyper, uint64_t seed,
                           uint32_t sweep);

// Regenerates Y in place from the current state's label distribution.
void regenerate_labels(const ModelState& state, FusionDataset& data,
                       uint64_t seed, uint32_t sweep);

// ---- sweep and chain -------------------------------------------------------

struct SweepStats {
    long accepted_delta = 0;
    long proposed_delta = 0;
};

// Fixed kernel order: T, zeta, spatial fields per rater, precisions per
// rater, optional coefficient updates, delta.
void gibbs_sweep(ModelState& state, const FusionDataset& data,
                 const LatticeGraph& graph, const Coloring& coloring,
                 const HyperConfig& hyper, const SamplerConfig& config,
                 uint32_t sweep, WorkerPool* pool = nullptr,
                 SweepStats* stats = nullptr);

using RetainedCallback = std::function<void(const RetainedSample&)>;

ChainOutput run_chain(const FusionDataset& data, const LatticeGraph& graph,
                      const HyperConfig& hyper, const SamplerConfig& config,
                      const RetainedCallback& on_retained = nullptr);

}  // namespace blf

#endif
