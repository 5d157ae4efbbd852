#include "cbspart/model_problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbspart {

void DiffusionSpec::validate() const {
    if (grid < 2) throw std::invalid_argument("DiffusionSpec: grid must be >= 2");
    if (!(jump_a > 0.0) || !(jump_b > 0.0))
        throw std::invalid_argument("DiffusionSpec: jump values must be positive");
}

bool in_jump_region(const DiffusionSpec& spec, double x, double y) {
    if (spec.geometry == JumpGeometry::SquareJump)
        return x > 0.25 && x < 0.75 && y > 0.25 && y < 0.75;
    int cx = std::min(4, static_cast<int>(x * 5.0));
    int cy = std::min(4, static_cast<int>(y * 5.0));
    return (cx + cy) % 2 == 0;
}

namespace {

double coeff_a(const DiffusionSpec& spec, double x, double y) {
    return in_jump_region(spec, x, y) ? spec.jump_a : 1.0;
}
double coeff_b(const DiffusionSpec& spec, double x, double y) {
    return in_jump_region(spec, x, y) ? spec.jump_b : 1.0;
}

double face_value(const DiffusionSpec& spec, bool horizontal, double x0, double y0, double x1,
                  double y1) {
    double (*coeff)(const DiffusionSpec&, double, double) = horizontal ? coeff_a : coeff_b;
    if (spec.midpoint_coeffs) return coeff(spec, 0.5 * (x0 + x1), 0.5 * (y0 + y1));
    double c0 = coeff(spec, x0, y0), c1 = coeff(spec, x1, y1);
    if (spec.harmonic_faces) return 2.0 * c0 * c1 / (c0 + c1);
    return 0.5 * (c0 + c1);
}

}  // namespace

SparseSymMatrix fd_diffusion(const DiffusionSpec& spec) {
    spec.validate();
    const int g = spec.grid;
    const int n = g * g;
    const double h = 1.0 / (g + 1);
    const double h2inv = 1.0 / (h * h);
    auto idx = [g](int ix, int iy) { return (iy - 1) * g + (ix - 1); };

    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(n) * 5);
    for (int iy = 1; iy <= g; ++iy) {
        for (int ix = 1; ix <= g; ++ix) {
            double x = ix * h, y = iy * h;
            int k = idx(ix, iy);
            double diag = 0.0;

            // x-direction faces carry a(x,y), y-direction faces carry b(x,y).
            double a_east = face_value(spec, true, x, y, (ix + 1) * h, y);
            double a_west = face_value(spec, true, (ix - 1) * h, y, x, y);
            double b_north = face_value(spec, false, x, y, x, (iy + 1) * h);
            double b_south = face_value(spec, false, x, (iy - 1) * h, x, y);

            diag = (a_east + a_west + b_north + b_south) * h2inv;
            t.push_back({k, k, diag});
            if (ix < g) t.push_back({k, idx(ix + 1, iy), -a_east * h2inv});
            if (ix > 1) t.push_back({k, idx(ix - 1, iy), -a_west * h2inv});
            if (iy < g) t.push_back({k, idx(ix, iy + 1), -b_north * h2inv});
            if (iy > 1) t.push_back({k, idx(ix, iy - 1), -b_south * h2inv});
        }
    }
    return SparseSymMatrix::from_triplets(n, t);
}

std::vector<GridPoint> grid_plot_data(const std::vector<VertexSet>& partition,
                                      const DiffusionSpec& spec) {
    spec.validate();
    const int g = spec.grid;
    const int n = g * g;
    const double h = 1.0 / (g + 1);

    std::vector<GridPoint> points(n);
    std::vector<char> assigned(n, 0);
    for (std::size_t s = 0; s < partition.size(); ++s) {
        check_vertex_set(partition[s], n, "grid_plot_data");
        for (int v : partition[s]) {
            if (assigned[v])
                throw std::invalid_argument("grid_plot_data: subdomains overlap at vertex " +
                                            std::to_string(v));
            assigned[v] = 1;
            points[v].subdomain = static_cast<int>(s);
        }
    }
    for (int v = 0; v < n; ++v)
        if (!assigned[v])
            throw std::invalid_argument("grid_plot_data: partition does not cover vertex " +
                                        std::to_string(v));

    for (int iy = 1; iy <= g; ++iy)
        for (int ix = 1; ix <= g; ++ix) {
            int k = (iy - 1) * g + (ix - 1);
            points[k].x = ix * h;
            points[k].y = iy * h;
            points[k].in_jump = in_jump_region(spec, points[k].x, points[k].y);
        }
    return points;
}

}  // namespace cbspart
