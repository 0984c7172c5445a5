#include "convexlab/rays.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <optional>

namespace convexlab {

namespace {

Eigen::Vector2d unit(LatticeDirection d) { return Eigen::Vector2d(d.p, d.q) / d.norm(); }

std::size_t finite_count(const GridFunction2D& f) {
  std::size_t n = 0;
  for (double v : f.values()) n += std::isfinite(v) ? 1 : 0;
  return n;
}

std::string str(LatticeDirection d) { return "(" + std::to_string(d.p) + "," + std::to_string(d.q) + ")"; }

}  // namespace

RayMapping verify_ray_mapping(const GridCorpus& t) {
  t.validate();
  RayMapping out;
  std::map<LatticeDirection, LatticeDirection> phi;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto d = is_ray_supported(t.domain[i]);
    if (!d || finite_count(t.domain[i]) < 2) continue;
    const GridFunction2D& img = t.image(i);
    const auto e = is_ray_supported(img);
    if (!e || finite_count(img) < 2) {
      out.violations.push_back("image of corpus function " + std::to_string(i) + " on ray " + str(*d) +
                               " is not ray-supported");
      continue;
    }
    auto [it, fresh] = phi.emplace(*d, *e);
    if (!fresh && !(it->second == *e)) {
      out.violations.push_back("ray " + str(*d) + " is mapped to both " + str(it->second) + " and " + str(*e));
    }
  }
  for (const auto& kv : phi) out.directions.push_back(kv);
  if (out.directions.empty()) return out;

  Eigen::MatrixXd U(static_cast<Eigen::Index>(out.directions.size()), 2);
  Eigen::MatrixXd V(U.rows(), 2);
  for (Eigen::Index r = 0; r < U.rows(); ++r) {
    U.row(r) = unit(out.directions[static_cast<std::size_t>(r)].first).transpose();
    V.row(r) = unit(out.directions[static_cast<std::size_t>(r)].second).transpose();
  }
  // U B^T = V in the least-squares sense.
  const Eigen::MatrixXd Bt = U.completeOrthogonalDecomposition().solve(V);
  out.B = Bt.transpose();
  out.residual = (U * Bt - V).rowwise().norm().maxCoeff();
  const LatticeSpec& L = t.domain.front().lattice();
  out.residual_cells = out.residual * L.half_width / L.step();
  return out;
}

LatticeDirection snap_direction(const LatticeSpec& L, double ux, double uy) {
  const double norm = std::hypot(ux, uy);
  if (!(norm > 0)) throw std::invalid_argument("snap_direction: zero vector");
  ux /= norm;
  uy /= norm;
  const int c = L.center();
  // Distance, in cells, between the two rays where they leave the window.
  const double cells = L.half_width / L.step();
  auto miss = [&](int i, int j) {
    const double r = std::hypot(i, j);
    const double cross = std::fabs(ux * j - uy * i) / r;
    const double dot = (ux * i + uy * j) / r;
    return dot > 0 ? cross * cells : kInf;
  };
  for (int m = 1; m <= c; ++m) {
    std::optional<LatticeDirection> best;
    double best_miss = 0.5;
    for (int i = -m; i <= m; ++i) {
      for (int j = -m; j <= m; ++j) {
        if (std::max(std::abs(i), std::abs(j)) != m || std::gcd(i, j) != 1) continue;
        const double e = miss(i, j);
        if (e <= best_miss) {
          best_miss = e;
          best = LatticeDirection{i, j};
        }
      }
    }
    if (best) return *best;
  }
  const double m = std::max(std::fabs(ux), std::fabs(uy));
  return primitive_direction(static_cast<int>(std::lround(c * ux / m)), static_cast<int>(std::lround(c * uy / m)));
}

GridFunction2D rotate_ray_supported(const GridFunction2D& f, double angle) {
  const auto d = is_ray_supported(f);
  if (!d) throw std::invalid_argument("rotate_ray_supported: f is not ray-supported");
  const Eigen::Vector2d u = unit(*d);
  const double cs = std::cos(angle), sn = std::sin(angle);
  const LatticeDirection e = snap_direction(f.lattice(), cs * u.x() - sn * u.y(), sn * u.x() + cs * u.y());
  return embed_on_ray(f.lattice(), e, ray_restrict(f, *d));
}

}  // namespace convexlab
