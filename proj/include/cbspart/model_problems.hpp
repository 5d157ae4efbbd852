#pragma once

#include <string>
#include <vector>

#include "cbspart/sparse_matrix.hpp"
#include "cbspart/vertex_set.hpp"

namespace cbspart {

enum class JumpGeometry { SquareJump, Checkerboard5x5 };

/// 2D diffusion model problem -(a u_x)_x - (b u_y)_y = f on the unit square,
/// zero Dirichlet boundary, 5-point finite differences on a uniform grid of
/// `grid` interior points per side. The coefficients are piecewise constant:
/// value `jump_a` (resp. `jump_b`) inside the jump region, 1 elsewhere.
/// SquareJump puts the region at 0.25 < x,y < 0.75 (strict); Checkerboard5x5
/// uses the "black" cells of a 5-by-5 checkerboard, cell (i,j) black iff
/// i + j is even.
struct DiffusionSpec {
    int grid = 20;
    JumpGeometry geometry = JumpGeometry::SquareJump;
    double jump_a = 100.0;
    double jump_b = 100.0;          // set to 1 for a jump in a(x,y) only
    bool harmonic_faces = false;    // harmonic instead of arithmetic face mean
    bool midpoint_coeffs = false;   // sample coefficients at face midpoints
                                    // instead of averaging node values

    void validate() const;
};

/// Interior node (ix, iy), 1-based on the grid, maps to index
/// (iy - 1) * grid + (ix - 1); node coordinates are (ix h, iy h) with
/// h = 1 / (grid + 1).
SparseSymMatrix fd_diffusion(const DiffusionSpec& spec);

bool in_jump_region(const DiffusionSpec& spec, double x, double y);

struct GridPoint {
    double x = 0.0;
    double y = 0.0;
    int subdomain = -1;
    bool in_jump = false;
};

/// Per-node plot table (x, y, subdomain id, in-jump flag) for a partition of
/// the model problem's grid. Rejects partitions whose union is not exactly
/// the grid's vertex set.
std::vector<GridPoint> grid_plot_data(const std::vector<VertexSet>& partition,
                                      const DiffusionSpec& spec);

}  // namespace cbspart
