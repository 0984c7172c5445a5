#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "convexlab/extended_value.hpp"
#include "convexlab/pl_convex.hpp"

namespace convexlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultConvexityTol = 1e-6;

// Slack used when validate() is called without an explicit tolerance.
double default_convexity_tol();
void set_default_convexity_tol(double rel_tol);

class LatticeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Origin-centred square lattice [-R, R]^2 with n nodes per axis. n is odd so
// the origin is a node.
struct LatticeSpec {
  double half_width = 4.0;
  int n = 129;

  LatticeSpec() = default;
  LatticeSpec(double r, int nodes);

  double step() const { return 2.0 * half_width / (n - 1); }
  int center() const { return (n - 1) / 2; }
  double coord(int i) const { return (i - center()) * step(); }
  bool contains(int i, int j) const { return i >= 0 && j >= 0 && i < n && j < n; }

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

// Primitive integer direction (gcd(|p|, |q|) = 1) of a lattice ray.
struct LatticeDirection {
  int p = 1;
  int q = 0;

  double norm() const;
  friend bool operator==(const LatticeDirection&, const LatticeDirection&) = default;
  friend auto operator<=>(const LatticeDirection&, const LatticeDirection&) = default;
};

LatticeDirection primitive_direction(int p, int q);

// Sampled extended-value function on a LatticeSpec. Values are stored row by
// row: index j * n + i holds the value at (coord(i), coord(j)); +inf is
// stored as an infinite double.
class GridFunction2D {
 public:
  GridFunction2D(LatticeSpec lattice, std::vector<double> values,
                 ClassTag tag = ClassTag::Geometric);

  static GridFunction2D sample(const LatticeSpec& lattice,
                               const std::function<double(double, double)>& fn,
                               ClassTag tag = ClassTag::Geometric);
  static GridFunction2D filled(const LatticeSpec& lattice, double value,
                               ClassTag tag = ClassTag::Geometric);

  const LatticeSpec& lattice() const { return lattice_; }
  ClassTag tag() const { return tag_; }
  const std::vector<double>& values() const { return values_; }

  double at(int i, int j) const { return values_[index(i, j)]; }
  ExtendedValue eval(int i, int j) const { return from_double(at(i, j)); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(lattice_.n) + static_cast<std::size_t>(i);
  }

  friend bool operator==(const GridFunction2D&, const GridFunction2D&) = default;

 private:
  LatticeSpec lattice_;
  std::vector<double> values_;
  ClassTag tag_;
};

struct GridViolation {
  int i = 0;
  int j = 0;
  std::string what;
};

class GridValidationError : public std::invalid_argument {
 public:
  GridValidationError(const std::string& op, std::vector<GridViolation> v);
  const std::vector<GridViolation>& violations() const { return violations_; }

 private:
  std::vector<GridViolation> violations_;
};

// Discrete convexity along axis and diagonal triples (midpoint <= average +
// rel_tol * (|average| + 1), finite endpoints force a finite midpoint) and
// the geometric-tag conditions.
std::vector<GridViolation> validate(const GridFunction2D& f);
std::vector<GridViolation> validate(const GridFunction2D& f, double rel_tol);

// Pointwise maximum (re-validated).
GridFunction2D sup2_grid(const GridFunction2D& f, const GridFunction2D& g);

// Lower convex envelope of min(f, g): the pointwise minimum is convexified by
// repeated one-dimensional lower hulls along every lattice line in the
// stencil directions until nothing changes. Infinite nodes carry no epigraph
// points; hulls fill in between finite nodes only.
GridFunction2D hat_inf2_grid(const GridFunction2D& f, const GridFunction2D& g);

namespace serial {
// Single-threaded reference; bit-identical to hat_inf2_grid.
GridFunction2D hat_inf2_grid(const GridFunction2D& f, const GridFunction2D& g);
}  // namespace serial

// First node (i, j) with f > factor * g (relative slack 1e-12).
std::optional<std::pair<int, int>> find_violation(const GridFunction2D& f, const GridFunction2D& g, double factor);
// f <= factor * g at every node.
bool leq(const GridFunction2D& f, const GridFunction2D& g, double factor = 1.0);

// One-dimensional restriction along the lattice ray R+ d, parametrised by
// Euclidean distance. If the finite values reach the lattice boundary the
// last slope is continued as the tail; otherwise the domain ends at the
// last finite node.
PLConvex1D ray_restrict(const GridFunction2D& f, LatticeDirection d);

// The unique ray carrying every finite value (other than the origin), if any.
std::optional<LatticeDirection> is_ray_supported(const GridFunction2D& f);

// Ray-supported function whose restriction along d is `profile`.
GridFunction2D embed_on_ray(const LatticeSpec& lattice, LatticeDirection d, const PLConvex1D& profile);

// 1_{[0, z]} for the lattice node z = (zi, zj) (offsets from the origin).
GridFunction2D make_segment_indicator_grid(const LatticeSpec& lattice, int zi, int zj);
// max(c |x| / |z|, 1_{[0,z]}): the n-D triangle, parametrised by the value c
// at its endpoint.
GridFunction2D make_triangle_grid(const LatticeSpec& lattice, int zi, int zj, double c);
// D_theta + c on the node (ti, tj).
GridFunction2D make_delta_grid(const LatticeSpec& lattice, int ti, int tj, double c);

// Signed permutation matrix [[a, b], [c, d]] acting on node offsets.
struct LatticeSymmetry {
  int a = 1, b = 0, c = 0, d = 1;
  static LatticeSymmetry rotation90(int quarter_turns);
  static LatticeSymmetry reflection_x();  // (x1, x2) -> (x1, -x2)
  LatticeDirection apply(LatticeDirection v) const { return {a * v.p + b * v.q, c * v.p + d * v.q}; }
};

GridFunction2D apply_symmetry(const GridFunction2D& f, const LatticeSymmetry& s);

struct GridComparison {
  double max_value_error = 0.0;      // over nodes finite in both
  double max_support_distance = 0.0; // distance from a one-sided finite node to the other's support
  bool ok = false;
};

// Compares a against reference b. Nodes within `margin` cells of the lattice
// boundary are skipped.
GridComparison compare_grids(const GridFunction2D& a, const GridFunction2D& b, double value_tol,
                             double support_tol, int margin = 0);

// CSV matrix: header "R,N,class", then N rows (x2 ascending) of N values
// (x1 ascending); +inf is written "inf".
void write_grid_csv(std::ostream& os, const GridFunction2D& f);
GridFunction2D read_grid_csv(std::istream& is);

}  // namespace convexlab
