#ifndef BLF_LATTICE_HPP
#define BLF_LATTICE_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace blf {

// 8-adjacency grid graph over row-major voxel indices (index = row*width+col).
// Immutable after construction; safe to share across worker threads.
class LatticeGraph {
  public:
    LatticeGraph(int height, int width);

    int height() const { return height_; }
    int width() const { return width_; }
    int n_voxels() const { return height_ * width_; }

    int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
    int min_degree() const { return min_degree_; }

    // Neighbor indices of v, ascending.
    const int* neighbors_begin(int v) const { return adjacency_.data() + offsets_[v]; }
    const int* neighbors_end(int v) const { return adjacency_.data() + offsets_[v + 1]; }

    int row_of(int v) const { return v / width_; }
    int col_of(int v) const { return v % width_; }
    int index_of(int row, int col) const { return row * width_ + col; }

    long n_edges() const;  // undirected edge count

  private:
    int height_;
    int width_;
    int min_degree_;
    std::vector<int> offsets_;    // size V+1
    std::vector<int> adjacency_;  // concatenated neighbor lists
};

// Proper vertex coloring with the classes laid out in a fixed update order.
struct Coloring {
    std::vector<int> color;                // per voxel
    std::vector<std::vector<int>> classes; // nonempty classes, ascending color
};

LatticeGraph build_lattice(int height, int width);

// Closed-form 4-coloring color(r,c) = 2*(r%2) + (c%2); proper for the
// 8-adjacency grid and optimal there.
Coloring color_lattice(const LatticeGraph& graph);

// Arithmetic mean of `field` over the neighbors of v. Isolated voxels have
// no neighbor mean; callers must not ask.
double neighbor_mean(const Eigen::VectorXd& field, const LatticeGraph& graph, int v);

}  // namespace blf

#endif
