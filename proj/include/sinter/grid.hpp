#pragma once
// Uniform structured grid of square cells plus nodal field containers.
// Node (i,j) sits at (x0 + i*h, y0 + j*h); fields are row-major, x fastest.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sinter {

struct Grid2D {
    int nx = 0;      // node count in x (cells_x = nx - 1)
    int ny = 0;      // node count in y
    double h = 0.0;  // cell edge length, same in both directions
    double x0 = 0.0; // position of node (0,0)
    double y0 = 0.0;

    Grid2D() = default;
    Grid2D(int nx_, int ny_, double h_, double x0_ = 0.0, double y0_ = 0.0)
        : nx(nx_), ny(ny_), h(h_), x0(x0_), y0(y0_) {
        if (nx < 16 || ny < 16)
            throw std::invalid_argument("Grid2D: need at least 16 nodes per direction, got " +
                                        std::to_string(nx) + "x" + std::to_string(ny));
        if (!(h > 0.0))
            throw std::invalid_argument("Grid2D: cell size must be positive");
    }

    int nodes() const { return nx * ny; }
    int cells_x() const { return nx - 1; }
    int cells_y() const { return ny - 1; }
    int cells() const { return cells_x() * cells_y(); }
    double lx() const { return (nx - 1) * h; }
    double ly() const { return (ny - 1) * h; }

    int node(int i, int j) const { return j * nx + i; }
    double x(int i) const { return x0 + i * h; }
    double y(int j) const { return y0 + j * h; }

    bool on_boundary(int i, int j) const {
        return i == 0 || j == 0 || i == nx - 1 || j == ny - 1;
    }

    bool operator==(const Grid2D& o) const {
        return nx == o.nx && ny == o.ny && h == o.h && x0 == o.x0 && y0 == o.y0;
    }
};

struct ScalarField {
    Grid2D grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid2D& g, double fill = 0.0) : grid(g), v(g.nodes(), fill) {}

    double& operator()(int i, int j) { return v[grid.node(i, j)]; }
    double operator()(int i, int j) const { return v[grid.node(i, j)]; }
    std::size_t size() const { return v.size(); }
};

// One 2-vector per node, components stored as separate arrays.
struct VectorField {
    Grid2D grid;
    std::vector<double> x;
    std::vector<double> y;

    VectorField() = default;
    explicit VectorField(const Grid2D& g) : grid(g), x(g.nodes(), 0.0), y(g.nodes(), 0.0) {}

    std::size_t size() const { return x.size() + y.size(); }
};

inline void check_same_grid(const Grid2D& a, const Grid2D& b, const char* where) {
    if (!(a == b))
        throw std::invalid_argument(std::string(where) + ": fields live on different grids");
}

} // namespace sinter
