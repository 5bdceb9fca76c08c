#ifndef BLF_MODEL_HPP
#define BLF_MODEL_HPP

#include <optional>
#include <string>

#include <Eigen/Core>

#include "blf/dataset.hpp"
#include "blf/lattice.hpp"
#include "blf/link.hpp"
#include "blf/priors.hpp"

namespace blf {

// Prior hyperparameters. The propriety parameters keep the intrinsic
// autoregression proper; both precisions get Gamma(shape, rate) priors.
// The coefficient prior on delta is either Gaussian or the conditional
// mean prior; when `cmp` is set it takes precedence over Sigma_delta.
struct HyperConfig {
    double rho_phi = 0.95;
    double rho_eta = 0.95;
    double a_phi = 1.0;
    double b_phi = 2.0;
    double a_eta = 1.0;
    double b_eta = 2.0;
    Eigen::MatrixXd sigma_delta;  // J x J, SPD
    Eigen::MatrixXd sigma_beta;   // l x l, SPD (may be 0x0)
    Eigen::MatrixXd sigma_gamma;  // k x k, SPD (may be 0x0)
    std::optional<CmpSpec> cmp;
    LinkFunction link;

    void validate(int n_truth_covariates, int n_sens_covariates,
                  int n_spec_covariates) const;
};

// Every latent quantity of one MCMC iterate.
struct ModelState {
    Eigen::VectorXi truth;      // V, the latent labels T
    Eigen::MatrixXd phi;        // V x R sensitivity fields
    Eigen::MatrixXd eta;        // V x R specificity fields
    Eigen::MatrixXd zeta1;      // V x R augmented sensitivity variables
    Eigen::MatrixXd zeta0;      // V x R augmented specificity variables
    Eigen::VectorXd delta;      // J
    Eigen::MatrixXd beta;       // l x R
    Eigen::MatrixXd gamma;      // k x R
    Eigen::VectorXd tau_phi;    // R, strictly positive
    Eigen::VectorXd tau_eta;    // R, strictly positive

    static ModelState zeros(int n_voxels, int n_raters, int n_truth_covariates,
                            int n_sens_covariates, int n_spec_covariates);

    // True when the augmented variables' signs encode the observed labels:
    // where T_v = 1, zeta1 >= 0 iff Y = 1; where T_v = 0, zeta0 < 0 iff Y = 1.
    bool signs_consistent(const FusionDataset& data) const;
};

enum class Reliability { sensitivity, specificity };

// Linear predictor entering the probit for (v, r): x'beta + phi for the
// sensitivity, z'gamma + eta for the specificity.
double reliability_predictor(int v, int r, const ModelState& state,
                             const FusionDataset& data, Reliability which);

// Phi(predictor): the probability of a correct call at (v, r).
double reliability(int v, int r, const ModelState& state,
                   const FusionDataset& data, Reliability which);

// P(Y_vr = 1 | T_v, fields) = xi^{T} * (1 - psi)^{1-T}.
double bernoulli_prob(int v, int r, const ModelState& state,
                      const FusionDataset& data);

// phi' (D - rho W) phi via the neighbor lists.
double car_quadratic_form(const Eigen::VectorXd& field, const LatticeGraph& graph,
                          double rho);

// The unnormalized log posterior split by component; constants that do not
// involve any parameter are dropped (the tau^{V/2} term is kept).
struct LogJointTerms {
    double likelihood = 0.0;
    double truth_prior = 0.0;
    double car_phi = 0.0;
    double car_eta = 0.0;
    double delta_prior = 0.0;
    double beta_prior = 0.0;
    double gamma_prior = 0.0;
    double tau_prior = 0.0;
    double total() const;
};

LogJointTerms log_joint_terms(const ModelState& state, const FusionDataset& data,
                              const HyperConfig& hyper, const LatticeGraph& graph);

// Sum of the components above; throws NumericalError naming the offending
// component if anything is non-finite.
double log_joint(const ModelState& state, const FusionDataset& data,
                 const HyperConfig& hyper, const LatticeGraph& graph);

}  // namespace blf

#endif
