#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

#include "convexlab/corpus.hpp"
#include "convexlab/grid.hpp"

namespace convexlab {

using GridCorpus = CorpusTransform<GridFunction2D>;

struct RayMapping {
  std::vector<std::pair<LatticeDirection, LatticeDirection>> directions;  // d -> Phi(d)
  Eigen::Matrix2d B = Eigen::Matrix2d::Identity();  // least-squares linear fit on unit vectors
  double residual = 0.0;                            // max |B u - Phi(u)|
  double residual_cells = 0.0;                      // residual measured in cells at radius R
  std::vector<std::string> violations;
};

// Records the ray of every ray-supported corpus function and its image, and
// fits a linear map to the induced direction map.
RayMapping verify_ray_mapping(const GridCorpus& t);

// Shortest primitive lattice direction whose ray passes within half a cell of
// the ray through (ux, uy) where both leave the window; falls back to the
// nearest boundary node.
LatticeDirection snap_direction(const LatticeSpec& lattice, double ux, double uy);

// Rotates a ray-supported function by `angle` radians, keeping its profile
// and snapping the new ray to the lattice.
GridFunction2D rotate_ray_supported(const GridFunction2D& f, double angle);

}  // namespace convexlab
