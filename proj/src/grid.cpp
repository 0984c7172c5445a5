#include "convexlab/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace convexlab {

LatticeSpec::LatticeSpec(double r, int nodes) : half_width(r), n(nodes) {
  if (!(r > 0) || !std::isfinite(r)) throw std::invalid_argument("LatticeSpec: half-width must be positive");
  if (nodes < 3 || nodes % 2 == 0) throw std::invalid_argument("LatticeSpec: N must be odd and >= 3");
}

double LatticeDirection::norm() const { return std::hypot(static_cast<double>(p), static_cast<double>(q)); }

LatticeDirection primitive_direction(int p, int q) {
  if (p == 0 && q == 0) throw std::invalid_argument("primitive_direction: zero vector");
  const int g = std::gcd(p, q);
  return {p / g, q / g};
}

GridFunction2D::GridFunction2D(LatticeSpec lattice, std::vector<double> values, ClassTag tag)
    : lattice_(lattice), values_(std::move(values)), tag_(tag) {
  const auto n = static_cast<std::size_t>(lattice_.n);
  if (values_.size() != n * n) throw std::invalid_argument("GridFunction2D: expected N*N values");
  for (double v : values_) {
    if (std::isnan(v) || v < 0) throw std::invalid_argument("GridFunction2D: values must lie in [0, +inf]");
  }
}

GridFunction2D GridFunction2D::sample(const LatticeSpec& lattice,
                                      const std::function<double(double, double)>& fn, ClassTag tag) {
  std::vector<double> v(static_cast<std::size_t>(lattice.n) * lattice.n);
  for (int j = 0; j < lattice.n; ++j) {
    for (int i = 0; i < lattice.n; ++i) {
      v[static_cast<std::size_t>(j) * lattice.n + i] = fn(lattice.coord(i), lattice.coord(j));
    }
  }
  return GridFunction2D(lattice, std::move(v), tag);
}

GridFunction2D GridFunction2D::filled(const LatticeSpec& lattice, double value, ClassTag tag) {
  return GridFunction2D(lattice, std::vector<double>(static_cast<std::size_t>(lattice.n) * lattice.n, value), tag);
}

GridValidationError::GridValidationError(const std::string& op, std::vector<GridViolation> v)
    : std::invalid_argument([&] {
        std::string msg = op + ": " + std::to_string(v.size()) + " convexity violation(s)";
        if (!v.empty()) msg += ", first at node (" + std::to_string(v[0].i) + ", " + std::to_string(v[0].j) + "): " + v[0].what;
        return msg;
      }()),
      violations_(std::move(v)) {}

namespace {
std::atomic<double> g_convexity_tol{kDefaultConvexityTol};
}  // namespace

double default_convexity_tol() { return g_convexity_tol.load(); }

void set_default_convexity_tol(double rel_tol) {
  if (!(rel_tol >= 0) || !std::isfinite(rel_tol)) throw std::invalid_argument("convexity tolerance must be finite and >= 0");
  g_convexity_tol.store(rel_tol);
}

std::vector<GridViolation> validate(const GridFunction2D& f) { return validate(f, default_convexity_tol()); }

std::vector<GridViolation> validate(const GridFunction2D& f, double rel_tol) {
  const LatticeSpec& L = f.lattice();
  std::vector<GridViolation> out;
  if (f.tag() == ClassTag::Geometric && f.at(L.center(), L.center()) != 0.0) {
    out.push_back({L.center(), L.center(), "geometric function must vanish at the origin"});
  }
  static constexpr int kDirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  for (int j = 0; j < L.n; ++j) {
    for (int i = 0; i < L.n; ++i) {
      for (const auto& d : kDirs) {
        const int ai = i - d[0], aj = j - d[1], bi = i + d[0], bj = j + d[1];
        if (!L.contains(ai, aj) || !L.contains(bi, bj)) continue;
        const double va = f.at(ai, aj), vb = f.at(bi, bj), vm = f.at(i, j);
        if (std::isinf(va) || std::isinf(vb)) continue;
        if (std::isinf(vm)) {
          out.push_back({i, j, "finite neighbours around an infinite node"});
          break;
        }
        const double avg = 0.5 * (va + vb);
        if (vm > avg + rel_tol * (std::fabs(avg) + 1.0)) {
          char buf[96];
          std::snprintf(buf, sizeof buf, "midpoint %.6g exceeds average %.6g", vm, avg);
          out.push_back({i, j, buf});
          break;
        }
      }
    }
  }
  return out;
}

namespace {

void require_same_lattice(const GridFunction2D& f, const GridFunction2D& g, const char* op) {
  if (!(f.lattice() == g.lattice())) throw LatticeMismatch(std::string(op) + ": lattice specs differ");
}

GridFunction2D revalidated(GridFunction2D f, const char* op) {
  auto v = validate(f);
  if (!v.empty()) throw GridValidationError(op, std::move(v));
  return f;
}

// Primitive directions with |p|, |q| <= 2, one per +/- pair.
constexpr int kStencil[8][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {2, -1}, {1, -2}};

std::vector<std::vector<std::size_t>> lattice_lines(const LatticeSpec& L, int p, int q) {
  std::vector<std::vector<std::size_t>> lines;
  for (int j = 0; j < L.n; ++j) {
    for (int i = 0; i < L.n; ++i) {
      if (L.contains(i - p, j - q)) continue;
      std::vector<std::size_t> line;
      for (int a = i, b = j; L.contains(a, b); a += p, b += q) {
        line.push_back(static_cast<std::size_t>(b) * L.n + a);
      }
      if (line.size() >= 3) lines.push_back(std::move(line));
    }
  }
  return lines;
}

// Replaces the values on one line by min(value, lower hull of the finite
// points); returns the largest decrease.
double hull_line(std::vector<double>& vals, const std::vector<std::size_t>& line) {
  std::vector<std::size_t> hull;  // positions along the line
  for (std::size_t k = 0; k < line.size(); ++k) {
    const double v = vals[line[k]];
    if (std::isinf(v)) continue;
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull.back();
      const double va = vals[line[a]], vb = vals[line[b]];
      // b lies on or above the chord a -> k
      const double cross = (static_cast<double>(b) - a) * (v - va) - (static_cast<double>(k) - a) * (vb - va);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  double change = 0.0;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const std::size_t a = hull[s], b = hull[s + 1];
    const double va = vals[line[a]], vb = vals[line[b]];
    for (std::size_t k = a + 1; k < b; ++k) {
      const double t = static_cast<double>(k - a) / static_cast<double>(b - a);
      const double hv = va + t * (vb - va);
      double& cur = vals[line[k]];
      if (hv < cur) {
        change = std::max(change, std::isinf(cur) ? 1.0 : cur - hv);
        cur = hv;
      }
    }
  }
  return change;
}

GridFunction2D hat_inf_kernel(const GridFunction2D& f, const GridFunction2D& g, bool parallel) {
  require_same_lattice(f, g, "hat_inf2_grid");
  const LatticeSpec& L = f.lattice();
  std::vector<double> vals(f.values().size());
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = std::min(f.values()[k], g.values()[k]);

  std::vector<std::vector<std::vector<std::size_t>>> families;
  for (const auto& d : kStencil) families.push_back(lattice_lines(L, d[0], d[1]));

  for (int pass = 0; pass < 200; ++pass) {
    double change = 0.0;
    for (const auto& lines : families) {
      // Lines of one family are disjoint, so they can be swept concurrently
      // without changing the result.
      const long nl = static_cast<long>(lines.size());
#pragma omp parallel for if (parallel) reduction(max : change) schedule(static)
      for (long l = 0; l < nl; ++l) change = std::max(change, hull_line(vals, lines[static_cast<std::size_t>(l)]));
    }
    if (change <= 1e-14) break;
  }
  const ClassTag tag =
      f.tag() == ClassTag::NonNegative || g.tag() == ClassTag::NonNegative ? ClassTag::NonNegative : ClassTag::Geometric;
  return revalidated(GridFunction2D(L, std::move(vals), tag), "hat_inf2_grid");
}

}  // namespace

GridFunction2D sup2_grid(const GridFunction2D& f, const GridFunction2D& g) {
  require_same_lattice(f, g, "sup2_grid");
  std::vector<double> vals(f.values().size());
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = std::max(f.values()[k], g.values()[k]);
  const ClassTag tag =
      f.tag() == ClassTag::Geometric && g.tag() == ClassTag::Geometric ? ClassTag::Geometric : ClassTag::NonNegative;
  return revalidated(GridFunction2D(f.lattice(), std::move(vals), tag), "sup2_grid");
}

GridFunction2D hat_inf2_grid(const GridFunction2D& f, const GridFunction2D& g) { return hat_inf_kernel(f, g, true); }

namespace serial {
GridFunction2D hat_inf2_grid(const GridFunction2D& f, const GridFunction2D& g) { return hat_inf_kernel(f, g, false); }
}  // namespace serial

std::optional<std::pair<int, int>> find_violation(const GridFunction2D& f, const GridFunction2D& g, double factor) {
  require_same_lattice(f, g, "find_violation");
  if (!(factor > 0)) throw std::invalid_argument("find_violation: factor must be positive");
  const int n = f.lattice().n;
  for (std::size_t k = 0; k < f.values().size(); ++k) {
    const double a = f.values()[k];
    const double b = g.values()[k];
    if (std::isinf(b)) continue;
    const double rhs = factor * b;
    if (std::isinf(a) || a > rhs + 1e-12 * std::max(a, rhs)) {
      return std::make_pair(static_cast<int>(k % n), static_cast<int>(k / n));
    }
  }
  return std::nullopt;
}

bool leq(const GridFunction2D& f, const GridFunction2D& g, double factor) {
  return !find_violation(f, g, factor).has_value();
}

PLConvex1D ray_restrict(const GridFunction2D& f, LatticeDirection d) {
  if ((d.p == 0 && d.q == 0) || std::gcd(d.p, d.q) != 1) {
    throw std::invalid_argument("ray_restrict: direction is not a primitive lattice direction");
  }
  const LatticeSpec& L = f.lattice();
  const int c = L.center();
  const double step = L.step() * d.norm();
  std::vector<Knot> pts;
  int last_k = 0;
  for (int k = 0; L.contains(c + k * d.p, c + k * d.q); ++k) {
    last_k = k;
    const double v = f.at(c + k * d.p, c + k * d.q);
    if (std::isinf(v)) break;
    pts.push_back({to_rational(k * step), to_rational(v)});
  }
  if (pts.empty()) throw InvalidFunction("ray_restrict: f is +inf at the origin");
  const bool reaches_boundary = static_cast<int>(pts.size()) == last_k + 1 && pts.size() >= 2;

  // Exact lower hull of the samples, which absorbs rounding in the values.
  std::vector<Knot> hull;
  for (auto& p : pts) {
    while (hull.size() >= 2) {
      const Knot& a = hull[hull.size() - 2];
      const Knot& b = hull.back();
      if ((b.x - a.x) * (p.v - a.v) - (p.x - a.x) * (b.v - a.v) <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(std::move(p));
  }
  ExactValue tail = ExactValue::infinity();
  if (reaches_boundary) {
    const Knot& a = hull[hull.size() - 2];
    const Knot& b = hull.back();
    tail = ExactValue((b.v - a.v) / (b.x - a.x));
  }
  return PLConvex1D(std::move(hull), tail, f.tag());
}

std::optional<LatticeDirection> is_ray_supported(const GridFunction2D& f) {
  const LatticeSpec& L = f.lattice();
  const int c = L.center();
  if (std::isinf(f.at(c, c))) return std::nullopt;
  std::optional<LatticeDirection> dir;
  for (int j = 0; j < L.n; ++j) {
    for (int i = 0; i < L.n; ++i) {
      if ((i == c && j == c) || std::isinf(f.at(i, j))) continue;
      const LatticeDirection d = primitive_direction(i - c, j - c);
      if (!dir) {
        dir = d;
      } else if (!(*dir == d)) {
        return std::nullopt;
      }
    }
  }
  // Finite only at the origin: every ray works; report e1.
  if (!dir) dir = LatticeDirection{1, 0};
  return dir;
}

GridFunction2D embed_on_ray(const LatticeSpec& L, LatticeDirection d, const PLConvex1D& profile) {
  if ((d.p == 0 && d.q == 0) || std::gcd(d.p, d.q) != 1) {
    throw std::invalid_argument("embed_on_ray: direction is not a primitive lattice direction");
  }
  auto g = GridFunction2D::filled(L, kInf, profile.tag());
  std::vector<double> vals = g.values();
  const int c = L.center();
  const double step = L.step() * d.norm();
  for (int k = 0; L.contains(c + k * d.p, c + k * d.q); ++k) {
    vals[g.index(c + k * d.p, c + k * d.q)] = profile.eval(k * step).to_double();
  }
  return GridFunction2D(L, std::move(vals), profile.tag());
}

GridFunction2D make_segment_indicator_grid(const LatticeSpec& L, int zi, int zj) {
  return make_triangle_grid(L, zi, zj, 0.0);
}

GridFunction2D make_triangle_grid(const LatticeSpec& L, int zi, int zj, double c) {
  if (!(c >= 0) || !std::isfinite(c)) throw std::invalid_argument("make_triangle_grid: c must be finite and >= 0");
  const int o = L.center();
  if (!L.contains(o + zi, o + zj)) throw std::invalid_argument("make_triangle_grid: endpoint outside the lattice");
  std::vector<double> vals(static_cast<std::size_t>(L.n) * L.n, kInf);
  vals[static_cast<std::size_t>(o) * L.n + o] = 0.0;
  if (zi != 0 || zj != 0) {
    const int m = std::gcd(zi, zj);
    const LatticeDirection d = primitive_direction(zi, zj);
    for (int k = 1; k <= m; ++k) {
      vals[static_cast<std::size_t>(o + k * d.q) * L.n + (o + k * d.p)] = c * k / m;
    }
  }
  return GridFunction2D(L, std::move(vals), ClassTag::Geometric);
}

GridFunction2D make_delta_grid(const LatticeSpec& L, int ti, int tj, double c) {
  if (!(c >= 0) || !std::isfinite(c)) throw std::invalid_argument("make_delta_grid: c must be finite and >= 0");
  const int o = L.center();
  if (!L.contains(o + ti, o + tj)) throw std::invalid_argument("make_delta_grid: theta outside the lattice");
  std::vector<double> vals(static_cast<std::size_t>(L.n) * L.n, kInf);
  vals[static_cast<std::size_t>(o + tj) * L.n + (o + ti)] = c;
  return GridFunction2D(L, std::move(vals), ClassTag::NonNegative);
}

LatticeSymmetry LatticeSymmetry::rotation90(int quarter_turns) {
  switch (((quarter_turns % 4) + 4) % 4) {
    case 0: return {1, 0, 0, 1};
    case 1: return {0, -1, 1, 0};
    case 2: return {-1, 0, 0, -1};
    default: return {0, 1, -1, 0};
  }
}

LatticeSymmetry LatticeSymmetry::reflection_x() { return {1, 0, 0, -1}; }

GridFunction2D apply_symmetry(const GridFunction2D& f, const LatticeSymmetry& s) {
  const bool perm = (s.a == 0 && s.d == 0 && std::abs(s.b) == 1 && std::abs(s.c) == 1) ||
                    (s.b == 0 && s.c == 0 && std::abs(s.a) == 1 && std::abs(s.d) == 1);
  if (!perm) throw std::invalid_argument("apply_symmetry: not a signed permutation");
  const LatticeSpec& L = f.lattice();
  const int o = L.center();
  std::vector<double> vals(f.values().size());
  for (int j = 0; j < L.n; ++j) {
    for (int i = 0; i < L.n; ++i) {
      const LatticeDirection img = s.apply({i - o, j - o});
      vals[static_cast<std::size_t>(o + img.q) * L.n + (o + img.p)] = f.at(i, j);
    }
  }
  return GridFunction2D(L, std::move(vals), f.tag());
}

GridComparison compare_grids(const GridFunction2D& a, const GridFunction2D& b, double value_tol,
                             double support_tol, int margin) {
  require_same_lattice(a, b, "compare_grids");
  const LatticeSpec& L = a.lattice();
  std::vector<std::pair<int, int>> fin_a, fin_b;
  for (int j = 0; j < L.n; ++j) {
    for (int i = 0; i < L.n; ++i) {
      if (std::isfinite(a.at(i, j))) fin_a.emplace_back(i, j);
      if (std::isfinite(b.at(i, j))) fin_b.emplace_back(i, j);
    }
  }
  auto nearest = [&](int i, int j, const std::vector<std::pair<int, int>>& set) {
    double best = kInf;
    for (const auto& [u, v] : set) best = std::min(best, std::hypot(double(u - i), double(v - j)));
    return best * L.step();
  };
  GridComparison out;
  for (int j = margin; j < L.n - margin; ++j) {
    for (int i = margin; i < L.n - margin; ++i) {
      const double va = a.at(i, j), vb = b.at(i, j);
      const bool fa = std::isfinite(va), fb = std::isfinite(vb);
      if (fa && fb) {
        out.max_value_error = std::max(out.max_value_error, std::fabs(va - vb));
      } else if (fa) {
        out.max_support_distance = std::max(out.max_support_distance, nearest(i, j, fin_b));
      } else if (fb) {
        out.max_support_distance = std::max(out.max_support_distance, nearest(i, j, fin_a));
      }
    }
  }
  out.ok = out.max_value_error <= value_tol && out.max_support_distance <= support_tol;
  return out;
}

void write_grid_csv(std::ostream& os, const GridFunction2D& f) {
  const LatticeSpec& L = f.lattice();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", L.half_width);
  os << "R,N,class\n" << buf << ',' << L.n << ',' << to_string(f.tag()) << '\n';
  for (int j = 0; j < L.n; ++j) {
    for (int i = 0; i < L.n; ++i) {
      if (i) os << ',';
      const double v = f.at(i, j);
      if (std::isinf(v)) {
        os << "inf";
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
      }
    }
    os << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

double parse_cell(const std::string& s, int line, std::size_t col) {
  if (s == "inf" || s == "+inf" || s == "Inf") return kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("grid csv line " + std::to_string(line) + ", column " + std::to_string(col + 1) +
                              ": cannot parse \"" + s + "\"");
}

}  // namespace

GridFunction2D read_grid_csv(std::istream& is) {
  std::string line;
  int lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next()) throw std::invalid_argument("grid csv: empty input");
  if (split_csv(line) == std::vector<std::string>{"R", "N", "class"}) {
    if (!next()) throw std::invalid_argument("grid csv: missing lattice row");
  }
  const auto head = split_csv(line);
  if (head.size() != 3) throw std::invalid_argument("grid csv line " + std::to_string(lineno) + ": expected R,N,class");
  const double r = parse_cell(head[0], lineno, 0);
  const double nd = parse_cell(head[1], lineno, 1);
  if (nd != std::floor(nd) || nd < 3 || nd > 100001) {
    throw std::invalid_argument("grid csv line " + std::to_string(lineno) + ": N must be an odd integer");
  }
  ClassTag tag;
  if (head[2] == "geometric") {
    tag = ClassTag::Geometric;
  } else if (head[2] == "nonnegative") {
    tag = ClassTag::NonNegative;
  } else {
    throw std::invalid_argument("grid csv line " + std::to_string(lineno) + ": unknown class \"" + head[2] + "\"");
  }
  const LatticeSpec L(r, static_cast<int>(nd));
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(L.n) * L.n);
  for (int j = 0; j < L.n; ++j) {
    if (!next()) throw std::invalid_argument("grid csv: expected " + std::to_string(L.n) + " value rows");
    const auto cells = split_csv(line);
    if (static_cast<int>(cells.size()) != L.n) {
      throw std::invalid_argument("grid csv line " + std::to_string(lineno) + ": expected " + std::to_string(L.n) +
                                  " values, got " + std::to_string(cells.size()));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) vals.push_back(parse_cell(cells[i], lineno, i));
  }
  return GridFunction2D(L, std::move(vals), tag);
}

}  // namespace convexlab
