#include "sinter/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sinter/phasefield.hpp"

namespace sinter {

namespace {

void finish_box(Scene& s, double margin) {
    if (s.parts.empty()) throw std::invalid_argument("scene has no particles");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Particle& p : s.parts) {
        if (!(p.A > 0.0) || !(p.B > 0.0))
            throw std::invalid_argument("particle semi-axes must be positive");
        xmin = std::min(xmin, p.cx - p.A);
        xmax = std::max(xmax, p.cx + p.A);
        ymin = std::min(ymin, p.cy - p.B);
        ymax = std::max(ymax, p.cy + p.B);
    }
    s.xmin = xmin - margin;
    s.xmax = xmax + margin;
    s.ymin = ymin - margin;
    s.ymax = ymax + margin;
}

double max_extent(const Scene& s) {
    double m = 0.0;
    for (const Particle& p : s.parts) m = std::max({m, p.A, p.B});
    return m;
}

// Distance from first-quadrant point (u,v), v > 0, to the ellipse
// (x/A)^2 + (y/B)^2 = 1 with A >= B, via the monotone closest-point
// equation G(t) = (A u / (t+A^2))^2 + (B v / (t+B^2))^2 - 1 = 0.
double quadrant_distance(double A, double B, double u, double v) {
    auto G = [&](double t) {
        double fx = A * u / (t + A * A);
        double fy = B * v / (t + B * B);
        return fx * fx + fy * fy - 1.0;
    };
    double lo = -B * B + 1e-14 * B * B + B * v; // G(lo) >= 0 since fy >= 1 there
    double hi = std::max(A * u, B * v) + std::max(A * A, B * B);
    while (G(hi) > 0.0) hi = 2.0 * hi + A * A;
    for (int it = 0; it < 100 && hi - lo > 1e-15 * (std::abs(hi) + 1.0); ++it) {
        double mid = 0.5 * (lo + hi);
        (G(mid) > 0.0 ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    double x = A * A * u / (t + A * A);
    double y = B * B * v / (t + B * B);
    return std::hypot(u - x, v - y);
}

} // namespace

double signed_distance(const Particle& p, double px, double py) {
    double u = px - p.cx;
    double v = py - p.cy;
    if (p.A == p.B) return p.A - std::hypot(u, v);

    double A = p.A, B = p.B;
    u = std::abs(u);
    v = std::abs(v);
    if (A < B) { // mirror so the major axis is along u
        std::swap(A, B);
        std::swap(u, v);
    }
    bool inside = (px - p.cx) * (px - p.cx) / (p.A * p.A) +
                      (py - p.cy) * (py - p.cy) / (p.B * p.B) <
                  1.0;

    double dist;
    if (v == 0.0) {
        // on the major axis: closest point is off-axis while inside the evolute
        double cusp = (A * A - B * B) / A;
        if (u < cusp) {
            double x = A * A * u / (A * A - B * B);
            double y = B * std::sqrt(std::max(0.0, 1.0 - (x / A) * (x / A)));
            dist = std::hypot(u - x, y);
        } else {
            dist = std::abs(u - A);
        }
    } else {
        dist = quadrant_distance(A, B, u, v);
    }
    return inside ? dist : -dist;
}

Scene scene_two_equal(double R) {
    if (!(R > 0.0)) throw std::invalid_argument("radius must be positive");
    Scene s;
    s.parts = {{-R, 0.0, R, R}, {R, 0.0, R, R}};
    finish_box(s, 2.0 * R);
    return s;
}

Scene scene_pair(double R1, double b) {
    if (!(R1 > 0.0) || !(b > 0.0)) throw std::invalid_argument("radii must be positive");
    double R2 = b * R1;
    Scene s;
    s.parts = {{-R1, 0.0, R1, R1}, {R2, 0.0, R2, R2}};
    finish_box(s, 1.5 * std::max(R1, R2));
    return s;
}

Scene scene_chain(const std::vector<double>& radii) {
    if (radii.size() < 2) throw std::invalid_argument("chain needs at least two particles");
    Scene s;
    double x = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        double R = radii[k];
        if (!(R > 0.0)) throw std::invalid_argument("radii must be positive");
        if (k > 0) x += radii[k - 1] + R; // tangent to the previous circle
        s.parts.push_back({x, 0.0, R, R});
    }
    double shift = 0.5 * (s.parts.front().cx - s.parts.front().A +
                          s.parts.back().cx + s.parts.back().A);
    for (Particle& p : s.parts) p.cx -= shift;
    finish_box(s, 1.5 * max_extent(s));
    return s;
}

Scene scene_ellipse_pair(double R, double lambda) {
    if (!(R > 0.0)) throw std::invalid_argument("radius must be positive");
    if (!(lambda > 0.0) || lambda > 1.0)
        throw std::invalid_argument("ellipse aspect ratio must satisfy 0 < lambda = B/A <= 1");
    double A = R / std::sqrt(lambda);
    double B = R * std::sqrt(lambda);
    Scene s;
    s.parts = {{-A, 0.0, A, B}, {A, 0.0, A, B}};
    finish_box(s, 1.5 * A);
    return s;
}

Scene scene_disk(double R) {
    if (!(R > 0.0)) throw std::invalid_argument("radius must be positive");
    Scene s;
    s.parts = {{0.0, 0.0, R, R}};
    finish_box(s, 1.5 * R);
    return s;
}

void scene_set_initial_neck(Scene& s, double X0, NeckNorm norm) {
    if (s.parts.size() != 2 || s.parts[0].A != s.parts[0].B || s.parts[1].A != s.parts[1].B ||
        s.parts[0].A != s.parts[1].A)
        throw std::invalid_argument("pre-formed neck requires two equal circles");
    double R = s.parts[0].A;
    double hw = X0 * R * (norm == NeckNorm::sqrt2 ? std::sqrt(2.0) : 1.0);
    if (!(hw > 0.0) || hw >= R)
        throw std::invalid_argument("initial neck infeasible: half-width must lie in (0, R)");
    double x0 = std::sqrt(R * R - hw * hw); // crossing chord at half-height hw
    s.parts[0].cx = -x0;
    s.parts[1].cx = x0;
    finish_box(s, 2.0 * R); // keep the benchmark margin convention
}

Grid2D make_grid(const Scene& s, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("cell size must be positive");
    int cx = static_cast<int>(std::ceil((s.xmax - s.xmin) / h - 1e-9));
    int cy = static_cast<int>(std::ceil((s.ymax - s.ymin) / h - 1e-9));
    // centre the (possibly slightly larger) whole-cell box on the scene box
    double x0 = 0.5 * (s.xmin + s.xmax) - 0.5 * cx * h;
    double y0 = 0.5 * (s.ymin + s.ymax) - 0.5 * cy * h;
    return Grid2D(cx + 1, cy + 1, h, x0, y0);
}

ScalarField initial_field(const Scene& s, const Grid2D& g, double delta_sf, bool allow_x0,
                          bool allow_y0) {
    if (!(delta_sf > 0.0)) throw std::invalid_argument("interface width must be positive");
    for (const Particle& p : s.parts)
        if ((!allow_x0 && p.cx - p.A < g.x0) || p.cx + p.A > g.x0 + g.lx() ||
            (!allow_y0 && p.cy - p.B < g.y0) || p.cy + p.B > g.y0 + g.ly())
            throw std::invalid_argument("particle intersects the domain boundary");
    ScalarField C(g);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            double best = -1e300;
            for (const Particle& p : s.parts)
                best = std::max(best, signed_distance(p, g.x(i), g.y(j)));
            C.v[g.node(i, j)] = interface_profile(best, delta_sf);
        }
    }
    return C;
}

} // namespace sinter
