#include "blf/samplers.hpp"

#include <cassert>
#include <cmath>

#include <Eigen/Cholesky>

#include "blf/error.hpp"
#include "blf/rng.hpp"
#include "blf/stats.hpp"

namespace blf {

void SamplerConfig::validate() const {
    if (n_iterations < 1) throw InvalidArgument("need at least one iteration");
    if (burn_in < 0 || burn_in >= n_iterations)
        throw InvalidArgument("burn-in must lie in [0, n_iterations)");
    if (thin < 1) throw InvalidArgument("thinning interval must be >= 1");
    if (n_workers < 1) throw InvalidArgument("worker count must be >= 1");
}

void update_zeta(ModelState& state, const FusionDataset& data, uint64_t seed,
                 uint32_t sweep) {
    const int v_count = data.n_voxels();
    const int r_count = data.n_raters();
    constexpr double inf = std::numeric_limits<double>::infinity();

    for (int r = 0; r < r_count; ++r) {
        for (int v = 0; v < v_count; ++v) {
            const bool y = data.labels(v, r) == 1;
            const double mean1 =
                state.truth[v] *
                reliability_predictor(v, r, state, data, Reliability::sensitivity);
            RngStream s1(seed, sweep, KernelId::zeta1, static_cast<uint32_t>(r),
                         static_cast<uint32_t>(v));
            state.zeta1(v, r) = y ? s1.truncated_normal(mean1, 1.0, 0.0, inf)
                                  : s1.truncated_normal(mean1, 1.0, -inf, 0.0);

            const double mean0 =
                (1 - state.truth[v]) *
                reliability_predictor(v, r, state, data, Reliability::specificity);
            RngStream s0(seed, sweep, KernelId::zeta0, static_cast<uint32_t>(r),
                         static_cast<uint32_t>(v));
            state.zeta0(v, r) = y ? s0.truncated_normal(mean0, 1.0, -inf, 0.0)
                                  : s0.truncated_normal(mean0, 1.0, 0.0, inf);
        }
    }
    assert(state.signs_consistent(data));
}

Eigen::VectorXd truth_conditional_probs(const ModelState& state,
                                        const FusionDataset& data,
                                        const HyperConfig& hyper) {
    const int v_count = data.n_voxels();
    const int r_count = data.n_raters();
    Eigen::VectorXd probs(v_count);

    for (int v = 0; v < v_count; ++v) {
        const double p_v = state.delta.size() > 0
                               ? hyper.link.g_inv(data.truth_covariates.row(v).dot(state.delta))
                               : 0.5;
        if (p_v <= 0.0) {
            probs[v] = 0.0;
            continue;
        }
        if (p_v >= 1.0) {
            probs[v] = 1.0;
            continue;
        }
        double log_odds = log_prob(p_v) - log_prob(1.0 - p_v);
        for (int r = 0; r < r_count; ++r) {
            const double xi = normal_cdf(
                reliability_predictor(v, r, state, data, Reliability::sensitivity));
            const double psi = normal_cdf(
                reliability_predictor(v, r, state, data, Reliability::specificity));
            if (data.labels(v, r) == 1)
                log_odds += log_prob(xi) - log_prob(1.0 - psi);
            else
                log_odds += log_prob(1.0 - xi) - log_prob(psi);
        }
        probs[v] = prob_from_log_odds(log_odds);
    }
    return probs;
}

void update_truth(ModelState& state, const FusionDataset& data,
                  const HyperConfig& hyper, uint64_t seed, uint32_t sweep) {
    const Eigen::VectorXd probs = truth_conditional_probs(state, data, hyper);
    for (int v = 0; v < state.truth.size(); ++v) {
        RngStream s(seed, sweep, KernelId::truth, 0, static_cast<uint32_t>(v));
        state.truth[v] = s.bernoulli(probs[v]) ? 1 : 0;
    }
}

std::pair<double, double> field_conditional_moments(
    Reliability which, int r, int v, const ModelState& state,
    const FusionDataset& data, const LatticeGraph& graph,
    const HyperConfig& hyper) {
    const int degree = graph.degree(v);
    if (degree == 0)
        throw DegenerateVoxel("voxel " + std::to_string(v) +
                              " is isolated; the autoregression is undefined there");

    const bool sens = which == Reliability::sensitivity;
    const double tau = sens ? state.tau_phi[r] : state.tau_eta[r];
    const double rho = sens ? hyper.rho_phi : hyper.rho_eta;
    const Eigen::MatrixXd& field = sens ? state.phi : state.eta;
    const double indicator = sens ? state.truth[v] : 1 - state.truth[v];

    double neighbor_sum = 0.0;
    for (const int* it = graph.neighbors_begin(v); it != graph.neighbors_end(v); ++it)
        neighbor_sum += field(*it, r);

    double data_term = 0.0;
    if (indicator != 0.0) {
        if (sens) {
            double offset = 0.0;
            if (!data.sens_covariates.empty())
                offset = data.sens_covariates[r].row(v).dot(state.beta.col(r));
            data_term = state.zeta1(v, r) - offset;
        } else {
            double offset = 0.0;
            if (!data.spec_covariates.empty())
                offset = data.spec_covariates[r].row(v).dot(state.gamma.col(r));
            data_term = state.zeta0(v, r) - offset;
        }
    }

    const double var = 1.0 / (indicator + tau * degree);
    const double mean = var * (indicator * data_term + rho * tau * neighbor_sum);
    return {mean, var};
}

void update_spatial_field(Reliability which, int r, ModelState& state,
                          const FusionDataset& data, const LatticeGraph& graph,
                          const Coloring& coloring, const HyperConfig& hyper,
                          uint64_t seed, uint32_t sweep, WorkerPool* pool) {
    if (graph.min_degree() == 0)
        throw DegenerateVoxel("lattice has isolated voxels; spatial updates are undefined");

    const bool sens = which == Reliability::sensitivity;
    Eigen::MatrixXd& field = sens ? state.phi : state.eta;
    const KernelId kernel = sens ? KernelId::phi_field : KernelId::eta_field;

    for (const auto& cls : coloring.classes) {
        auto body = [&](int begin, int end) {
            for (int i = begin; i < end; ++i) {
                const int v = cls[i];
                const auto [mean, var] =
                    field_conditional_moments(which, r, v, state, data, graph, hyper);
                RngStream s(seed, sweep, kernel, static_cast<uint32_t>(r),
                            static_cast<uint32_t>(v));
                field(v, r) = s.normal(mean, std::sqrt(var));
            }
        };
        if (pool != nullptr)
            pool->run(static_cast<int>(cls.size()), body);
        else
            body(0, static_cast<int>(cls.size()));
    }
}

void update_tau(Reliability which, int r, ModelState& state,
                const LatticeGraph& graph, const HyperConfig& hyper,
                uint64_t seed, uint32_t sweep) {
    const bool sens = which == Reliability::sensitivity;
    const double rho = sens ? hyper.rho_phi : hyper.rho_eta;
    const Eigen::VectorXd field =
        sens ? state.phi.col(r) : state.eta.col(r);

    double q = car_quadratic_form(field, graph, rho);
    if (q < 0.0) {
        if (q < -1e-9)
            throw NumericalError("negative CAR quadratic form: precision matrix "
                                 "lost positive definiteness");
        q = 0.0;
    }

    const double shape = (sens ? hyper.a_phi : hyper.a_eta) + 0.5 * graph.n_voxels();
    const double rate = (sens ? hyper.b_phi : hyper.b_eta) + 0.5 * q;
    RngStream s(seed, sweep, sens ? KernelId::tau_phi : KernelId::tau_eta,
                static_cast<uint32_t>(r), 0);
    (sens ? state.tau_phi[r] : state.tau_eta[r]) = s.gamma(shape, rate);
}

namespace {

// Draw from N(mean, P^{-1}) given the Cholesky factor of the precision P.
Eigen::VectorXd sample_gaussian_from_precision(const Eigen::VectorXd& mean,
                                               const Eigen::LLT<Eigen::MatrixXd>& llt,
                                               RngStream& stream) {
    Eigen::VectorXd z(mean.size());
    for (int i = 0; i < z.size(); ++i) z[i] = stream.normal();
    return mean + llt.matrixU().solve(z);
}

void update_coefficients(Reliability which, int r, ModelState& state,
                         const FusionDataset& data, const HyperConfig& hyper,
                         uint64_t seed, uint32_t sweep) {
    const bool sens = which == Reliability::sensitivity;
    const auto& covs = sens ? data.sens_covariates : data.spec_covariates;
    if (covs.empty()) return;
    const Eigen::MatrixXd& design = covs[r];
    const int dim = static_cast<int>(design.cols());
    if (dim == 0) return;

    const Eigen::MatrixXd& prior_cov = sens ? hyper.sigma_beta : hyper.sigma_gamma;
    Eigen::LLT<Eigen::MatrixXd> prior_llt(prior_cov);
    if (prior_llt.info() != Eigen::Success)
        throw NumericalError("coefficient prior covariance not positive definite");

    // zeta - field restricted to the active voxels (T_v = 1 for the
    // sensitivity side, T_v = 0 for the specificity side).
    Eigen::MatrixXd precision =
        prior_llt.solve(Eigen::MatrixXd::Identity(dim, dim));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    for (int v = 0; v < data.n_voxels(); ++v) {
        const bool active = sens ? state.truth[v] == 1 : state.truth[v] == 0;
        if (!active) continue;
        const Eigen::VectorXd row = design.row(v).transpose();
        precision += row * row.transpose();
        const double resid = sens ? state.zeta1(v, r) - state.phi(v, r)
                                  : state.zeta0(v, r) - state.eta(v, r);
        rhs += resid * row;
    }

    Eigen::LLT<Eigen::MatrixXd> llt(precision);
    if (llt.info() != Eigen::Success)
        throw NumericalError("coefficient conditional precision not positive definite");
    const Eigen::VectorXd mean = llt.solve(rhs);

    RngStream s(seed, sweep, sens ? KernelId::beta : KernelId::gamma,
                static_cast<uint32_t>(r), 0);
    const Eigen::VectorXd draw = sample_gaussian_from_precision(mean, llt, s);
    if (sens)
        state.beta.col(r) = draw;
    else
        state.gamma.col(r) = draw;
}

double delta_log_likelihood(const Eigen::VectorXd& delta,
                            const Eigen::VectorXi& truth,
                            const FusionDataset& data) {
    const Eigen::VectorXd theta = data.truth_covariates * delta;
    double value = 0.0;
    for (int v = 0; v < theta.size(); ++v)
        value += truth[v] * theta[v] - log1pexp(theta[v]);
    return value;
}

double delta_log_prior(const Eigen::VectorXd& delta, const HyperConfig& hyper) {
    if (hyper.cmp) return cmp_log_prior(delta, *hyper.cmp, hyper.link);
    Eigen::LLT<Eigen::MatrixXd> llt(hyper.sigma_delta);
    if (llt.info() != Eigen::Success)
        throw NumericalError("Sigma_delta not positive definite");
    return -0.5 * delta.dot(llt.solve(delta));
}

double gaussian_log_density(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                            const Eigen::LLT<Eigen::MatrixXd>& precision_llt) {
    const Eigen::VectorXd diff = x - mean;
    const Eigen::MatrixXd L = precision_llt.matrixL();
    double log_det = 0.0;
    for (int i = 0; i < L.rows(); ++i) log_det += std::log(L(i, i));
    const Eigen::VectorXd half = L.transpose() * diff;
    return log_det - 0.5 * half.squaredNorm();
}

}  // namespace

void update_beta(int r, ModelState& state, const FusionDataset& data,
                 const HyperConfig& hyper, uint64_t seed, uint32_t sweep) {
    update_coefficients(Reliability::sensitivity, r, state, data, hyper, seed, sweep);
}

void update_gamma(int r, ModelState& state, const FusionDataset& data,
                  const HyperConfig& hyper, uint64_t seed, uint32_t sweep) {
    update_coefficients(Reliability::specificity, r, state, data, hyper, seed, sweep);
}

DeltaProposal delta_proposal(const Eigen::VectorXd& at, const ModelState& state,
                             const FusionDataset& data, const HyperConfig& hyper) {
    const int dim = static_cast<int>(at.size());
    DeltaProposal proposal;
    proposal.precision = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);

    if (!hyper.cmp) {
        Eigen::LLT<Eigen::MatrixXd> llt(hyper.sigma_delta);
        if (llt.info() != Eigen::Success)
            throw NumericalError("Sigma_delta not positive definite");
        proposal.precision = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
    }

    // Observed rows. Writing the weighted working response as
    // w*u + (T - p) sidesteps the 0 * inf indeterminacy when p saturates.
    for (int v = 0; v < data.n_voxels(); ++v) {
        const Eigen::VectorXd row = data.truth_covariates.row(v).transpose();
        const double u = row.dot(at);
        const double p = hyper.link.g_inv(u);
        const double w = p * (1.0 - p);
        proposal.precision += w * row * row.transpose();
        rhs += (w * u + (state.truth[v] - p)) * row;
    }

    // Pseudo observations of the conditional mean prior enter as weighted
    // binomial rows with a/(a+b) successes.
    if (hyper.cmp) {
        for (int j = 0; j < hyper.cmp->dim(); ++j) {
            const Eigen::VectorXd row = hyper.cmp->pseudo_design.row(j).transpose();
            const auto& [a, b] = hyper.cmp->shapes[j];
            const double trials = a + b;
            const double u = row.dot(at);
            const double p = hyper.link.g_inv(u);
            const double w = trials * p * (1.0 - p);
            proposal.precision += w * row * row.transpose();
            rhs += (w * u + (a - trials * p)) * row;
        }
    }

    Eigen::LLT<Eigen::MatrixXd> llt(proposal.precision);
    if (llt.info() != Eigen::Success) {
        const double dmin = proposal.precision.diagonal().minCoeff();
        const double dmax = proposal.precision.diagonal().maxCoeff();
        throw NumericalError(
            "proposal precision for delta is not invertible (diagonal range [" +
            std::to_string(dmin) + ", " + std::to_string(dmax) + "])");
    }
    proposal.mean = llt.solve(rhs);
    return proposal;
}

bool update_delta_gamerman(ModelState& state, const FusionDataset& data,
                           const HyperConfig& hyper, uint64_t seed,
                           uint32_t sweep) {
    if (state.delta.size() == 0) return false;

    const DeltaProposal forward = delta_proposal(state.delta, data, hyper);
    Eigen::LLT<Eigen::MatrixXd> forward_llt(forward.precision);

    RngStream s(seed, sweep, KernelId::delta, 0, 0);
    const Eigen::VectorXd candidate =
        sample_gaussian_from_precision(forward.mean, forward_llt, s);

    const DeltaProposal reverse = delta_proposal(candidate, data, hyper);
    Eigen::LLT<Eigen::MatrixXd> reverse_llt(reverse.precision);

    const double log_ratio =
        delta_log_prior(candidate, hyper) + delta_log_likelihood(candidate, state.truth, data) -
        delta_log_prior(state.delta, hyper) - delta_log_likelihood(state.delta, state.truth, data) +
        gaussian_log_density(state.delta, reverse.mean, reverse_llt) -
        gaussian_log_density(candidate, forward.mean, forward_llt);

    if (std::log(s.uniform()) < log_ratio) {
        state.delta = candidate;
        return true;
    }
    return false;
}

void regenerate_labels(const ModelState& state, FusionDataset& data,
                       uint64_t seed, uint32_t sweep) {
    for (int r = 0; r < data.n_raters(); ++r) {
        for (int v = 0; v < data.n_voxels(); ++v) {
            RngStream s(seed, sweep, KernelId::label_regen, static_cast<uint32_t>(r),
                        static_cast<uint32_t>(v));
            data.labels(v, r) = s.bernoulli(bernoulli_prob(v, r, state, data)) ? 1 : 0;
        }
    }
}

void gibbs_sweep(ModelState& state, const FusionDataset& data,
                 const LatticeGraph& graph, const Coloring& coloring,
                 const HyperConfig& hyper, const SamplerConfig& config,
                 uint32_t sweep, WorkerPool* pool, SweepStats* stats) {
    const uint64_t seed = config.rng_seed;
    if (config.update.truth) update_truth(state, data, hyper, seed, sweep);
    if (config.update.zeta) update_zeta(state, data, seed, sweep);
    if (config.update.fields) {
        for (int r = 0; r < data.n_raters(); ++r) {
            update_spatial_field(Reliability::sensitivity, r, state, data, graph,
                                 coloring, hyper, seed, sweep, pool);
            update_spatial_field(Reliability::specificity, r, state, data, graph,
                                 coloring, hyper, seed, sweep, pool);
        }
    }
    if (config.update.tau) {
        for (int r = 0; r < data.n_raters(); ++r) {
            update_tau(Reliability::sensitivity, r, state, graph, hyper, seed, sweep);
            update_tau(Reliability::specificity, r, state, graph, hyper, seed, sweep);
        }
    }
    if (config.update.beta_gamma) {
        for (int r = 0; r < data.n_raters(); ++r) {
            update_beta(r, state, data, hyper, seed, sweep);
            update_gamma(r, state, data, hyper, seed, sweep);
        }
    }
    if (config.update.delta && state.delta.size() > 0) {
        const bool accepted = update_delta_gamerman(state, data, hyper, seed, sweep);
        if (stats != nullptr) {
            ++stats->proposed_delta;
            if (accepted) ++stats->accepted_delta;
        }
    }
}

ChainOutput run_chain(const FusionDataset& data, const LatticeGraph& graph,
                      const HyperConfig& hyper, const SamplerConfig& config,
                      const RetainedCallback& on_retained) {
    data.validate();
    config.validate();
    hyper.validate(data.n_truth_covariates(), data.n_sens_covariates(),
                   data.n_spec_covariates());
    if (graph.n_voxels() != data.n_voxels())
        throw InvalidArgument("lattice size does not match the dataset");
    if ((config.update.fields || config.update.tau) && graph.min_degree() == 0)
        throw DegenerateVoxel(
            "lattice has isolated voxels; the spatial prior is singular there");

    const int v_count = data.n_voxels();
    const int r_count = data.n_raters();
    const int j_count = data.n_truth_covariates();
    const Coloring coloring = color_lattice(graph);
    WorkerPool pool(config.n_workers);

    ModelState state =
        ModelState::zeros(v_count, r_count, j_count, data.n_sens_covariates(),
                          data.n_spec_covariates());
    state.tau_phi.setConstant(hyper.a_phi / hyper.b_phi);
    state.tau_eta.setConstant(hyper.a_eta / hyper.b_eta);
    for (int v = 0; v < v_count; ++v) {
        RngStream s(config.rng_seed, 0, KernelId::init, 0, static_cast<uint32_t>(v));
        state.truth[v] = s.bernoulli(0.5) ? 1 : 0;
    }

    const long n_keep = config.n_retained();
    ChainOutput out;
    out.iterations.reserve(n_keep);
    out.volume_samples.reserve(n_keep);
    out.delta_samples.resize(n_keep, j_count);
    out.tau_phi_samples.resize(n_keep, r_count);
    out.tau_eta_samples.resize(n_keep, r_count);
    out.rb_probs.resize(config.store_rb ? n_keep : 0, v_count);
    out.rb_sum = Eigen::VectorXd::Zero(v_count);
    out.rb_sumsq = Eigen::VectorXd::Zero(v_count);
    out.sens_mean = Eigen::MatrixXd::Zero(v_count, r_count);
    out.spec_mean = Eigen::MatrixXd::Zero(v_count, r_count);

    SweepStats stats;
    long kept = 0;
    for (long iter = 1; iter <= config.n_iterations; ++iter) {
        gibbs_sweep(state, data, graph, coloring, hyper, config,
                    static_cast<uint32_t>(iter), &pool, &stats);
        if (iter <= config.burn_in || (iter - config.burn_in) % config.thin != 0)
            continue;

        const Eigen::VectorXd probs = truth_conditional_probs(state, data, hyper);
        const double volume = probs.sum();
        out.iterations.push_back(iter);
        out.volume_samples.push_back(volume);
        out.delta_samples.row(kept) = state.delta.transpose();
        out.tau_phi_samples.row(kept) = state.tau_phi.transpose();
        out.tau_eta_samples.row(kept) = state.tau_eta.transpose();
        if (config.store_rb) out.rb_probs.row(kept) = probs.transpose();
        out.rb_sum += probs;
        out.rb_sumsq += probs.cwiseProduct(probs);
        for (int r = 0; r < r_count; ++r) {
            for (int v = 0; v < v_count; ++v) {
                out.sens_mean(v, r) +=
                    reliability(v, r, state, data, Reliability::sensitivity);
                out.spec_mean(v, r) +=
                    reliability(v, r, state, data, Reliability::specificity);
            }
        }
        ++kept;
        if (on_retained) {
            on_retained(RetainedSample{iter, volume, probs, state.delta,
                                       state.tau_phi, state.tau_eta});
        }
    }

    out.n_retained = kept;
    if (kept > 0) {
        out.sens_mean /= static_cast<double>(kept);
        out.spec_mean /= static_cast<double>(kept);
    }
    out.accepted_delta = stats.accepted_delta;
    out.proposed_delta = stats.proposed_delta;
    out.acceptance_rate_delta =
        stats.proposed_delta > 0
            ? static_cast<double>(stats.accepted_delta) / stats.proposed_delta
            : 0.0;
    return out;
}

}  // namespace blf
