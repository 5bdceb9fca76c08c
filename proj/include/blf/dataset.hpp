#ifndef BLF_DATASET_HPP
#define BLF_DATASET_HPP

#include <vector>

#include <Eigen/Core>

namespace blf {

// Observed inputs to a fusion run: rater labels, intensity fields, and the
// covariate design matrices. Immutable while a chain runs.
struct FusionDataset {
    Eigen::MatrixXi labels;            // V x R, entries in {0,1}
    Eigen::VectorXd target_intensity;  // V
    Eigen::MatrixXd rater_intensity;   // V x R
    Eigen::MatrixXd truth_covariates;  // V x J; column 0 is the intercept

    // Optional per-rater covariates for the sensitivity / specificity mean
    // functions. Empty vectors mean "pure spatial process" (the default).
    std::vector<Eigen::MatrixXd> sens_covariates;  // each V x l
    std::vector<Eigen::MatrixXd> spec_covariates;  // each V x k

    int n_voxels() const { return static_cast<int>(labels.rows()); }
    int n_raters() const { return static_cast<int>(labels.cols()); }
    int n_truth_covariates() const { return static_cast<int>(truth_covariates.cols()); }
    int n_sens_covariates() const;
    int n_spec_covariates() const;

    // Throws InvalidArgument on inconsistent dimensions, labels outside
    // {0,1}, or a missing intercept column.
    void validate() const;
};

}  // namespace blf

#endif
