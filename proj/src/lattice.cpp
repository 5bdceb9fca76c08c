#include "blf/lattice.hpp"

#include <algorithm>

#include "blf/error.hpp"

namespace blf {

LatticeGraph::LatticeGraph(int height, int width)
    : height_(height), width_(width) {
    if (height < 1 || width < 1)
        throw InvalidArgument("lattice dimensions must be positive");

    const int v_count = height * width;
    offsets_.assign(v_count + 1, 0);
    adjacency_.reserve(static_cast<std::size_t>(v_count) * 8);

    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const int v = r * width + c;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const int nr = r + dr;
                    const int nc = c + dc;
                    if (nr < 0 || nr >= height || nc < 0 || nc >= width) continue;
                    adjacency_.push_back(nr * width + nc);
                }
            }
            offsets_[v + 1] = static_cast<int>(adjacency_.size());
        }
    }

    min_degree_ = 8;
    for (int v = 0; v < v_count; ++v) min_degree_ = std::min(min_degree_, degree(v));
}

long LatticeGraph::n_edges() const {
    return static_cast<long>(adjacency_.size()) / 2;
}

LatticeGraph build_lattice(int height, int width) {
    return LatticeGraph(height, width);
}

Coloring color_lattice(const LatticeGraph& graph) {
    const int v_count = graph.n_voxels();
    Coloring coloring;
    coloring.color.resize(v_count);

    std::vector<std::vector<int>> by_color(4);
    for (int v = 0; v < v_count; ++v) {
        const int c = 2 * (graph.row_of(v) % 2) + (graph.col_of(v) % 2);
        coloring.color[v] = c;
        by_color[c].push_back(v);
    }
    for (auto& cls : by_color) {
        if (!cls.empty()) coloring.classes.push_back(std::move(cls));
    }
    return coloring;
}

double neighbor_mean(const Eigen::VectorXd& field, const LatticeGraph& graph, int v) {
    const int deg = graph.degree(v);
    if (deg == 0)
        throw DegenerateVoxel("voxel " + std::to_string(v) + " has no neighbors");
    double sum = 0.0;
    for (const int* it = graph.neighbors_begin(v); it != graph.neighbors_end(v); ++it)
        sum += field[*it];
    return sum / deg;
}

}  // namespace blf
