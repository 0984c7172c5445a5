#pragma once

#include "convexlab/grid.hpp"

namespace convexlab {

// Discrete conjugate: max over finite nodes y of <s, y> - f(y), at every
// node s of the same lattice. Requires a geometric f; throws
// GridValidationError on non-convex input.
GridFunction2D legendre_grid(const GridFunction2D& f);

// Discrete geometric dual. Nodes outside the discrete polar of the zero set
// are +inf; inside, the value is the max of 0, (<x, y> - 1) / f(y) over
// nodes with 0 < f(y) < inf, and <x, u> / s for boundary nodes y = |y| u
// whose last cell along their lattice ray rises with slope s > 0 (the tail
// of an f that continues past the window). Requires a geometric f.
GridFunction2D a_grid(const GridFunction2D& f);

// legendre_grid(a_grid(f)).
GridFunction2D j_grid(const GridFunction2D& f);

namespace serial {
// Single-threaded references; bit-identical to the parallel kernels.
GridFunction2D legendre_grid(const GridFunction2D& f);
GridFunction2D a_grid(const GridFunction2D& f);
}  // namespace serial

}  // namespace convexlab
