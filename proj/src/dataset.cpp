#include "blf/dataset.hpp"

#include <string>

#include "blf/error.hpp"

namespace blf {

int FusionDataset::n_sens_covariates() const {
    return sens_covariates.empty() ? 0 : static_cast<int>(sens_covariates[0].cols());
}

int FusionDataset::n_spec_covariates() const {
    return spec_covariates.empty() ? 0 : static_cast<int>(spec_covariates[0].cols());
}

void FusionDataset::validate() const {
    const int v_count = n_voxels();
    const int r_count = n_raters();
    if (v_count < 1 || r_count < 1)
        throw InvalidArgument("dataset needs at least one voxel and one rater");

    for (int r = 0; r < r_count; ++r) {
        for (int v = 0; v < v_count; ++v) {
            const int y = labels(v, r);
            if (y != 0 && y != 1)
                throw InvalidArgument("label at voxel " + std::to_string(v) +
                                      ", rater " + std::to_string(r) +
                                      " is not binary");
        }
    }

    if (target_intensity.size() != v_count)
        throw InvalidArgument("target intensity length != voxel count");
    if (rater_intensity.rows() != v_count || rater_intensity.cols() != r_count)
        throw InvalidArgument("rater intensity dimensions mismatch");
    if (truth_covariates.rows() != 0 && truth_covariates.rows() != v_count)
        throw InvalidArgument("truth covariate rows != voxel count");
    if (truth_covariates.cols() >= 1) {
        for (int v = 0; v < v_count; ++v) {
            if (truth_covariates(v, 0) != 1.0)
                throw InvalidArgument("truth covariates must carry an intercept column");
        }
    }

    auto check_per_rater = [&](const std::vector<Eigen::MatrixXd>& mats,
                               const char* what) {
        if (mats.empty()) return;
        if (static_cast<int>(mats.size()) != r_count)
            throw InvalidArgument(std::string(what) + " covariates must cover every rater");
        const Eigen::Index cols = mats[0].cols();
        for (const auto& m : mats) {
            if (m.rows() != v_count || m.cols() != cols)
                throw InvalidArgument(std::string(what) + " covariate dimensions mismatch");
        }
    };
    check_per_rater(sens_covariates, "sensitivity");
    check_per_rater(spec_covariates, "specificity");
}

}  // namespace blf
