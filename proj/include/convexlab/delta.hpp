#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "json.hpp"

#include "convexlab/almost_order.hpp"
#include "convexlab/corpus.hpp"
#include "convexlab/extremal.hpp"

namespace convexlab {

// Finitely supported function: value `value` at each atom's theta, +inf
// elsewhere. A delta function is the one-atom case.
struct FiniteSupportFunction {
  std::vector<DeltaFunction> atoms;
  bool is_delta() const { return atoms.size() == 1; }
};

using DeltaCorpus = CorpusTransform<DeltaFunction, FiniteSupportFunction>;

struct DeltaStructureReport {
  std::vector<std::string> violations;  // structural: non-delta images, broken fibres
  Eigen::MatrixXd A;                    // fitted phi(theta) = A theta + b
  Eigen::VectorXd b;
  double residual = 0.0;                // max |A theta + b - phi(theta)|
  bool affine_ok = false;
  QuasiLinearResult psi;                // psi(theta, c) against the quasi-linear lemma
  double beta = 0.0;
  bool ok() const { return violations.empty() && affine_ok && psi.ok; }
};

// Checks that deltas map to deltas, that all deltas over one point land over
// one point, fits the point map affinely and runs the quasi-linear lemma on
// the values with constant C~.
DeltaStructureReport check_delta_structure(const DeltaCorpus& t, const AlmostOrderConstant& k,
                                           double affine_tol = 1e-6);

nlohmann::json to_json(const DeltaStructureReport& r);

}  // namespace convexlab
