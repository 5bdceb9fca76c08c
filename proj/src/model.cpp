#include "blf/model.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "blf/error.hpp"
#include "blf/stats.hpp"

namespace blf {

namespace {

void require_spd(const Eigen::MatrixXd& m, const char* name, int expected_dim) {
    if (m.rows() != expected_dim || m.cols() != expected_dim)
        throw InvalidArgument(std::string(name) + " has wrong dimensions");
    if (expected_dim == 0) return;
    if (!m.isApprox(m.transpose(), 1e-10))
        throw InvalidArgument(std::string(name) + " is not symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
        throw InvalidArgument(std::string(name) + " is not positive definite");
}

double gaussian_log_kernel(const Eigen::VectorXd& x, const Eigen::MatrixXd& sigma) {
    if (x.size() == 0) return 0.0;
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw NumericalError("covariance lost positive definiteness");
    return -0.5 * x.dot(llt.solve(x));
}

}  // namespace

void HyperConfig::validate(int n_truth_covariates, int n_sens_covariates,
                           int n_spec_covariates) const {
    if (std::abs(rho_phi) >= 1.0 || std::abs(rho_eta) >= 1.0)
        throw InvalidArgument("propriety parameters must lie in (-1, 1)");
    if (a_phi <= 0.0 || b_phi <= 0.0 || a_eta <= 0.0 || b_eta <= 0.0)
        throw InvalidArgument("Gamma hyperparameters must be positive");
    if (cmp) {
        cmp->validate();
        if (cmp->dim() != n_truth_covariates)
            throw InvalidArgument("CMP dimension must match the covariate count");
    } else if (n_truth_covariates > 0) {
        require_spd(sigma_delta, "Sigma_delta", n_truth_covariates);
    }
    require_spd(sigma_beta, "Sigma_beta", n_sens_covariates);
    require_spd(sigma_gamma, "Sigma_gamma", n_spec_covariates);
}

ModelState ModelState::zeros(int n_voxels, int n_raters, int n_truth_covariates,
                             int n_sens_covariates, int n_spec_covariates) {
    ModelState s;
    s.truth = Eigen::VectorXi::Zero(n_voxels);
    s.phi = Eigen::MatrixXd::Zero(n_voxels, n_raters);
    s.eta = Eigen::MatrixXd::Zero(n_voxels, n_raters);
    s.zeta1 = Eigen::MatrixXd::Zero(n_voxels, n_raters);
    s.zeta0 = Eigen::MatrixXd::Zero(n_voxels, n_raters);
    s.delta = Eigen::VectorXd::Zero(n_truth_covariates);
    s.beta = Eigen::MatrixXd::Zero(n_sens_covariates, n_raters);
    s.gamma = Eigen::MatrixXd::Zero(n_spec_covariates, n_raters);
    s.tau_phi = Eigen::VectorXd::Ones(n_raters);
    s.tau_eta = Eigen::VectorXd::Ones(n_raters);
    return s;
}

bool ModelState::signs_consistent(const FusionDataset& data) const {
    for (int r = 0; r < data.n_raters(); ++r) {
        for (int v = 0; v < data.n_voxels(); ++v) {
            const bool y = data.labels(v, r) == 1;
            if (truth[v] == 1 && (zeta1(v, r) >= 0.0) != y) return false;
            if (truth[v] == 0 && (zeta0(v, r) < 0.0) != y) return false;
        }
    }
    return true;
}

double reliability_predictor(int v, int r, const ModelState& state,
                             const FusionDataset& data, Reliability which) {
    if (which == Reliability::sensitivity) {
        double value = state.phi(v, r);
        if (!data.sens_covariates.empty())
            value += data.sens_covariates[r].row(v).dot(state.beta.col(r));
        return value;
    }
    double value = state.eta(v, r);
    if (!data.spec_covariates.empty())
        value += data.spec_covariates[r].row(v).dot(state.gamma.col(r));
    return value;
}

double reliability(int v, int r, const ModelState& state,
                   const FusionDataset& data, Reliability which) {
    return normal_cdf(reliability_predictor(v, r, state, data, which));
}

double bernoulli_prob(int v, int r, const ModelState& state,
                      const FusionDataset& data) {
    if (state.truth[v] == 1)
        return reliability(v, r, state, data, Reliability::sensitivity);
    return 1.0 - reliability(v, r, state, data, Reliability::specificity);
}

double car_quadratic_form(const Eigen::VectorXd& field, const LatticeGraph& graph,
                          double rho) {
    double q = 0.0;
    for (int v = 0; v < graph.n_voxels(); ++v) {
        double neighbor_sum = 0.0;
        for (const int* it = graph.neighbors_begin(v); it != graph.neighbors_end(v); ++it)
            neighbor_sum += field[*it];
        q += field[v] * (graph.degree(v) * field[v] - rho * neighbor_sum);
    }
    return q;
}

double LogJointTerms::total() const {
    return likelihood + truth_prior + car_phi + car_eta + delta_prior +
           beta_prior + gamma_prior + tau_prior;
}

LogJointTerms log_joint_terms(const ModelState& state, const FusionDataset& data,
                              const HyperConfig& hyper, const LatticeGraph& graph) {
    const int v_count = data.n_voxels();
    const int r_count = data.n_raters();
    LogJointTerms terms;

    for (int r = 0; r < r_count; ++r) {
        for (int v = 0; v < v_count; ++v) {
            const bool y = data.labels(v, r) == 1;
            if (state.truth[v] == 1) {
                const double xi = reliability(v, r, state, data, Reliability::sensitivity);
                terms.likelihood += y ? log_prob(xi) : log_prob(1.0 - xi);
            } else {
                const double psi = reliability(v, r, state, data, Reliability::specificity);
                terms.likelihood += y ? log_prob(1.0 - psi) : log_prob(psi);
            }
        }
    }

    if (state.delta.size() > 0) {
        for (int v = 0; v < v_count; ++v) {
            const double p = hyper.link.g_inv(data.truth_covariates.row(v).dot(state.delta));
            terms.truth_prior += state.truth[v] == 1 ? log_prob(p) : log_prob(1.0 - p);
        }
        terms.delta_prior = hyper.cmp
                                ? cmp_log_prior(state.delta, *hyper.cmp, hyper.link)
                                : gaussian_log_kernel(state.delta, hyper.sigma_delta);
    }

    for (int r = 0; r < r_count; ++r) {
        const double q_phi = car_quadratic_form(state.phi.col(r), graph, hyper.rho_phi);
        const double q_eta = car_quadratic_form(state.eta.col(r), graph, hyper.rho_eta);
        terms.car_phi += 0.5 * v_count * std::log(state.tau_phi[r]) -
                         0.5 * state.tau_phi[r] * q_phi;
        terms.car_eta += 0.5 * v_count * std::log(state.tau_eta[r]) -
                         0.5 * state.tau_eta[r] * q_eta;
        if (state.beta.rows() > 0)
            terms.beta_prior += gaussian_log_kernel(state.beta.col(r), hyper.sigma_beta);
        if (state.gamma.rows() > 0)
            terms.gamma_prior += gaussian_log_kernel(state.gamma.col(r), hyper.sigma_gamma);
        terms.tau_prior += (hyper.a_phi - 1.0) * std::log(state.tau_phi[r]) -
                           hyper.b_phi * state.tau_phi[r];
        terms.tau_prior += (hyper.a_eta - 1.0) * std::log(state.tau_eta[r]) -
                           hyper.b_eta * state.tau_eta[r];
    }
    return terms;
}

double log_joint(const ModelState& state, const FusionDataset& data,
                 const HyperConfig& hyper, const LatticeGraph& graph) {
    const LogJointTerms terms = log_joint_terms(state, data, hyper, graph);
    const struct {
        const char* name;
        double value;
    } components[] = {
        {"likelihood", terms.likelihood},   {"truth_prior", terms.truth_prior},
        {"car_phi", terms.car_phi},         {"car_eta", terms.car_eta},
        {"delta_prior", terms.delta_prior}, {"beta_prior", terms.beta_prior},
        {"gamma_prior", terms.gamma_prior}, {"tau_prior", terms.tau_prior},
    };
    for (const auto& c : components) {
        if (!std::isfinite(c.value))
            throw NumericalError(std::string("log joint component '") + c.name +
                                 "' is non-finite");
    }
    return terms.total();
}

}  // namespace blf
