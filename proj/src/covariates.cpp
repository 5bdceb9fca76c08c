#include "blf/covariates.hpp"

#include <cmath>
#include <limits>

#include "blf/error.hpp"

namespace blf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Felzenszwalb-Huttenlocher 1-D squared distance transform.
void edt_1d(const std::vector<double>& f, std::vector<double>& d) {
    const int n = static_cast<int>(f.size());
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = 1; q < n; ++q) {
        double s;
        for (;;) {
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
            if (s <= z[k]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        d[q] = (q - v[k]) * static_cast<double>(q - v[k]) + f[v[k]];
    }
}

// Exact squared Euclidean distance to the seed set (seeds carry 0).
Eigen::VectorXd edt_squared(const std::vector<bool>& seed, int height, int width) {
    Eigen::VectorXd dist(height * width);
    std::vector<double> f(std::max(height, width));
    std::vector<double> d(std::max(height, width));

    // Pass over columns, then rows.
    Eigen::VectorXd tmp(height * width);
    for (int c = 0; c < width; ++c) {
        for (int r = 0; r < height; ++r)
            f[r] = seed[r * width + c] ? 0.0 : kInf;
        edt_1d(std::vector<double>(f.begin(), f.begin() + height), d);
        for (int r = 0; r < height; ++r) tmp[r * width + c] = d[r];
    }
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) f[c] = tmp[r * width + c];
        edt_1d(std::vector<double>(f.begin(), f.begin() + width), d);
        for (int c = 0; c < width; ++c) dist[r * width + c] = d[c];
    }
    return dist;
}

}  // namespace

SdlMap signed_distance_transform(const Eigen::VectorXi& binary,
                                 const LatticeGraph& graph) {
    const int v_count = graph.n_voxels();
    if (binary.size() != v_count)
        throw InvalidArgument("binary image length does not match the lattice");

    std::vector<bool> boundary(v_count, false);
    bool any_boundary = false;
    for (int v = 0; v < v_count; ++v) {
        if (binary[v] != 1) continue;
        for (const int* it = graph.neighbors_begin(v); it != graph.neighbors_end(v); ++it) {
            if (binary[*it] == 0) {
                boundary[v] = true;
                any_boundary = true;
                break;
            }
        }
    }

    SdlMap map;
    map.values.resize(v_count);
    if (!any_boundary) {
        map.degenerate = true;
        map.values.setConstant(std::hypot(graph.height(), graph.width()));
        return map;
    }

    const Eigen::VectorXd sq = edt_squared(boundary, graph.height(), graph.width());
    for (int v = 0; v < v_count; ++v) {
        const double d = std::sqrt(sq[v]);
        map.values[v] = binary[v] == 1 ? (boundary[v] ? 0.0 : -d) : d;
    }
    return map;
}

Eigen::VectorXd weighted_sdl(const std::vector<SdlMap>& sdl,
                             const Eigen::MatrixXd& rater_intensity,
                             const Eigen::VectorXd& target_intensity,
                             double epsilon, bool rescale_unit) {
    const int r_count = static_cast<int>(sdl.size());
    if (r_count == 0) throw InvalidArgument("need at least one distance map");
    if (epsilon <= 0.0) throw InvalidArgument("epsilon must be positive");
    const int v_count = static_cast<int>(target_intensity.size());
    if (rater_intensity.rows() != v_count || rater_intensity.cols() != r_count)
        throw InvalidArgument("intensity dimensions do not match the distance maps");
    for (const auto& m : sdl) {
        if (m.values.size() != v_count)
            throw InvalidArgument("distance map length mismatch");
    }

    Eigen::VectorXd fused(v_count);
    for (int v = 0; v < v_count; ++v) {
        double num = 0.0;
        double den = 0.0;
        for (int r = 0; r < r_count; ++r) {
            const double diff = rater_intensity(v, r) - target_intensity[v];
            const double w = 1.0 / (diff * diff + epsilon);
            num += w * sdl[r].values[v];
            den += w;
        }
        fused[v] = num / den;
    }

    if (rescale_unit) {
        const double lo = fused.minCoeff();
        const double hi = fused.maxCoeff();
        if (hi > lo)
            fused = (fused.array() - lo) / (hi - lo);
        else
            fused.setZero();
    }
    return fused;
}

Eigen::MatrixXd build_design(const Eigen::VectorXd& c1, const Eigen::VectorXd& c2,
                             bool with_interaction) {
    if (c1.size() != c2.size())
        throw InvalidArgument("covariate vectors must have equal length");
    const int v_count = static_cast<int>(c1.size());
    Eigen::MatrixXd design(v_count, with_interaction ? 4 : 3);
    design.col(0).setOnes();
    design.col(1) = c1;
    design.col(2) = c2;
    if (with_interaction) design.col(3) = c1.cwiseProduct(c2);
    return design;
}

}  // namespace blf
