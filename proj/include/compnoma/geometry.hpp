#pragma once

#include <Eigen/Dense>
#include <vector>

namespace compnoma {

// Planar node positions in normalized distance units (cell radius r = 1 for
// the presets) plus a common BS mast height.
struct CellLayout {
  std::vector<Eigen::Vector2d> bs_positions;
  std::vector<Eigen::Vector2d> ccu_positions;  // ccu_positions[j] served by bs_positions[j]
  Eigen::Vector2d ceu_position{0.0, 0.0};
  double bs_height = 0.05;
  double cell_radius = 1.0;

  int num_bs() const { return static_cast<int>(bs_positions.size()); }
};

// Two cells side by side on the x-axis, CEU on the line between the BSs.
CellLayout preset_b2();

// Three BSs at the vertices of an equilateral triangle of side 2, CEU on the
// BS1-BS2 edge; each CCU sits on the segment from its BS toward the CEU.
CellLayout preset_b3();

// 3-D distances: every entry is sqrt(planar^2 + bs_height^2).
struct DistanceTable {
  Eigen::MatrixXd d_ccu;  // (i, j): BS-i -> CCU-j
  Eigen::VectorXd d_ceu;  // (i):    BS-i -> CEU

  int num_bs() const { return static_cast<int>(d_ceu.size()); }
};

// Throws LayoutError on count mismatches, non-finite coordinates, coincident
// nodes, nonpositive radius, or negative height.
void validate(const CellLayout& layout);

// Planar separations before the mast height is folded in.
Eigen::MatrixXd planar_ccu_distances(const CellLayout& layout);
Eigen::VectorXd planar_ceu_distances(const CellLayout& layout);

DistanceTable distances(const CellLayout& layout);

}  // namespace compnoma
