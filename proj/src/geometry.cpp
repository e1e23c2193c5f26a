#include "compnoma/geometry.hpp"

#include <cmath>
#include <string>

#include "compnoma/errors.hpp"

namespace compnoma {

namespace {

// CCU-j on the segment from BS-j toward the CEU, at planar distance r from the BS
Eigen::Vector2d place_ccu(const Eigen::Vector2d& bs, const Eigen::Vector2d& ceu, double r) {
  return bs + r * (ceu - bs).normalized();
}

}  // namespace

CellLayout preset_b2() {
  CellLayout L;
  L.bs_positions = {{0.0, 0.0}, {2.0, 0.0}};
  L.ceu_position = {0.9, 0.0};
  L.ccu_positions = {place_ccu(L.bs_positions[0], L.ceu_position, 0.45),
                     place_ccu(L.bs_positions[1], L.ceu_position, 0.5)};
  return L;
}

CellLayout preset_b3() {
  CellLayout L;
  L.bs_positions = {{0.0, 0.0}, {2.0, 0.0}, {1.0, std::sqrt(3.0)}};
  L.ceu_position = {0.9, 0.0};
  L.ccu_positions = {place_ccu(L.bs_positions[0], L.ceu_position, 0.45),
                     place_ccu(L.bs_positions[1], L.ceu_position, 0.5),
                     place_ccu(L.bs_positions[2], L.ceu_position, 0.55)};
  return L;
}

void validate(const CellLayout& layout) {
  const int B = layout.num_bs();
  if (B < 2) throw LayoutError("layout: need at least 2 base stations, got " + std::to_string(B));
  if (static_cast<int>(layout.ccu_positions.size()) != B) {
    throw LayoutError("layout: " + std::to_string(layout.ccu_positions.size()) +
                      " CCU positions for " + std::to_string(B) + " base stations");
  }
  if (!(layout.cell_radius > 0.0)) throw LayoutError("layout: cell_radius must be > 0");
  if (!(layout.bs_height >= 0.0)) throw LayoutError("layout: bs_height must be >= 0");

  auto finite = [](const Eigen::Vector2d& p) { return p.allFinite(); };
  for (const auto& p : layout.bs_positions)
    if (!finite(p)) throw LayoutError("layout: non-finite BS coordinate");
  for (const auto& p : layout.ccu_positions)
    if (!finite(p)) throw LayoutError("layout: non-finite CCU coordinate");
  if (!finite(layout.ceu_position)) throw LayoutError("layout: non-finite CEU coordinate");
  if (!std::isfinite(layout.bs_height) || !std::isfinite(layout.cell_radius)) {
    throw LayoutError("layout: non-finite height or radius");
  }

  for (int i = 0; i < B; ++i) {
    for (int h = i + 1; h < B; ++h) {
      if ((layout.bs_positions[i] - layout.bs_positions[h]).norm() == 0.0) {
        throw LayoutError("layout: BS-" + std::to_string(i + 1) + " and BS-" +
                          std::to_string(h + 1) + " coincide");
      }
    }
  }
  // users may not sit at a BS planar position (zero distance at h=0 means
  // infinite channel variance)
  for (int i = 0; i < B; ++i) {
    for (int j = 0; j < B; ++j) {
      if ((layout.bs_positions[i] - layout.ccu_positions[j]).norm() == 0.0) {
        throw LayoutError("layout: CCU-" + std::to_string(j + 1) +
                          " coincides with BS-" + std::to_string(i + 1));
      }
    }
    if ((layout.bs_positions[i] - layout.ceu_position).norm() == 0.0) {
      throw LayoutError("layout: CEU coincides with BS-" + std::to_string(i + 1));
    }
  }
}

Eigen::MatrixXd planar_ccu_distances(const CellLayout& layout) {
  const int B = layout.num_bs();
  Eigen::MatrixXd d(B, B);
  for (int i = 0; i < B; ++i)
    for (int j = 0; j < B; ++j)
      d(i, j) = (layout.bs_positions[i] - layout.ccu_positions[j]).norm();
  return d;
}

Eigen::VectorXd planar_ceu_distances(const CellLayout& layout) {
  const int B = layout.num_bs();
  Eigen::VectorXd d(B);
  for (int i = 0; i < B; ++i)
    d(i) = (layout.bs_positions[i] - layout.ceu_position).norm();
  return d;
}

DistanceTable distances(const CellLayout& layout) {
  validate(layout);
  const double h2 = layout.bs_height * layout.bs_height;
  DistanceTable t;
  t.d_ccu = (planar_ccu_distances(layout).array().square() + h2).sqrt();
  t.d_ceu = (planar_ceu_distances(layout).array().square() + h2).sqrt();
  return t;
}

}  // namespace compnoma
