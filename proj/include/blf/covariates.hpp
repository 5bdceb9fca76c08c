#ifndef BLF_COVARIATES_HPP
#define BLF_COVARIATES_HPP

#include <vector>

#include <Eigen/Core>

#include "blf/lattice.hpp"

namespace blf {

// Signed Euclidean distance to a segmentation boundary: zero on boundary
// pixels, negative strictly inside the structure, positive outside. The
// boundary is taken on the foreground side (a one with a zero among its
// 8-neighbors). Images with no boundary at all get every pixel set to the
// image diagonal with `degenerate` raised.
struct SdlMap {
    Eigen::VectorXd values;
    int source_rater = -1;
    bool degenerate = false;
};

SdlMap signed_distance_transform(const Eigen::VectorXi& binary,
                                 const LatticeGraph& graph);

// Precision-weighted fusion of per-rater distance maps, weights inverse to
// the squared rater/target intensity gap at each voxel. Optionally min-max
// rescaled to [0,1] over the image.
Eigen::VectorXd weighted_sdl(const std::vector<SdlMap>& sdl,
                             const Eigen::MatrixXd& rater_intensity,
                             const Eigen::VectorXd& target_intensity,
                             double epsilon, bool rescale_unit = false);

// Design matrix [1, c1, c2] or [1, c1, c2, c1*c2].
Eigen::MatrixXd build_design(const Eigen::VectorXd& c1, const Eigen::VectorXd& c2,
                             bool with_interaction);

}  // namespace blf

#endif
