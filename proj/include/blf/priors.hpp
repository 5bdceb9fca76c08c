#ifndef BLF_PRIORS_HPP
#define BLF_PRIORS_HPP

#include <utility>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "blf/link.hpp"

namespace blf {

// Conditional mean prior on the true-status regression coefficients: Beta
// priors placed on the inclusion probability at J pseudo covariate points
// induce an (unnormalized) density on the coefficients themselves.
struct CmpSpec {
    Eigen::MatrixXd pseudo_design;                  // J x J, rows are c~_j
    std::vector<std::pair<double, double>> shapes;  // Beta (a, b) per row

    int dim() const { return static_cast<int>(pseudo_design.rows()); }
    // Throws InvalidArgument if the design is singular (condition-number
    // check) or any Beta shape is nonpositive.
    void validate() const;
};

void to_json(nlohmann::json& j, const CmpSpec& spec);
void from_json(const nlohmann::json& j, CmpSpec& spec);

// Gamma hyperparameters for a CAR precision, chosen so the prior mean hits
// the requested precision with shape 1.
std::pair<double, double> elicit_tau_hyper(double tau_target);

// Unnormalized log density of the conditional mean prior at delta.
double cmp_log_prior(const Eigen::VectorXd& delta, const CmpSpec& spec,
                     const LinkFunction& link);

// Analytic gradient of cmp_log_prior in delta.
Eigen::VectorXd cmp_log_prior_grad(const Eigen::VectorXd& delta, const CmpSpec& spec,
                                   const LinkFunction& link);

// Four-scenario default pseudo design built from the observed covariate
// ranges: (almost surely in) near + bright, (almost surely out) far + dark,
// (coin flip) mid-range, and (unlikely) far + bright. Shapes Beta(20,1),
// Beta(1,20), Beta(1,1), Beta(1,4).
CmpSpec default_cmp_scenarios(const Eigen::VectorXd& distance_covariate,
                              const Eigen::VectorXd& intensity_covariate);

}  // namespace blf

#endif
