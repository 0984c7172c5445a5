#include "convexlab/delta.hpp"

#include <map>

namespace convexlab {

namespace {

std::vector<double> key(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

DeltaStructureReport check_delta_structure(const DeltaCorpus& t, const AlmostOrderConstant& k, double affine_tol) {
  t.validate();
  DeltaStructureReport out;
  if (t.size() == 0) {
    out.violations.push_back("empty corpus");
    return out;
  }
  const Eigen::Index dim = t.domain.front().theta.size();
  std::map<std::vector<double>, Eigen::VectorXd> fibre;  // theta -> phi(theta)
  std::map<std::vector<double>, std::vector<double>> preimage;
  std::vector<QuasiLinearSample> samples;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const DeltaFunction& d = t.domain[i];
    if (d.theta.size() != dim) throw ConfigurationError("check_delta_structure: mixed dimensions");
    const FiniteSupportFunction& img = t.image(i);
    if (!img.is_delta()) {
      out.violations.push_back("image of delta " + std::to_string(i) + " has " + std::to_string(img.atoms.size()) +
                               " support points");
      continue;
    }
    const DeltaFunction& e = img.atoms.front();
    auto [it, fresh] = fibre.emplace(key(d.theta), e.theta);
    if (!fresh && it->second != e.theta) {
      out.violations.push_back("fibre over delta " + std::to_string(i) + " is split across image points");
      continue;
    }
    auto [jt, fresh2] = preimage.emplace(key(e.theta), key(d.theta));
    if (!fresh2 && jt->second != key(d.theta)) {
      out.violations.push_back("two base points share the image point of delta " + std::to_string(i));
      continue;
    }
    samples.push_back({d.theta, d.value, e.value});
  }
  if (!out.violations.empty() || fibre.empty()) return out;

  const Eigen::Index m = static_cast<Eigen::Index>(fibre.size());
  const Eigen::Index out_dim = fibre.begin()->second.size();
  Eigen::MatrixXd X(m, dim + 1);
  Eigen::MatrixXd Y(m, out_dim);
  Eigen::Index r = 0;
  for (const auto& [theta, phi] : fibre) {
    for (Eigen::Index c = 0; c < dim; ++c) X(r, c) = theta[static_cast<std::size_t>(c)];
    X(r, dim) = 1.0;
    Y.row(r) = phi.transpose();
    ++r;
  }
  const Eigen::MatrixXd W = X.completeOrthogonalDecomposition().solve(Y);
  out.A = W.topRows(dim).transpose();
  out.b = W.row(dim).transpose();
  out.residual = (X * W - Y).rowwise().norm().maxCoeff();
  out.affine_ok = out.residual <= affine_tol;
  if (m < dim + 1) out.violations.push_back("too few base points to determine an affine map");

  const double c = k.value() > 1.0 ? k.value() : 1.0 + 1e-9;
  out.psi = quasi_linear_sandwich(samples, c);
  out.beta = out.psi.beta;
  return out;
}

nlohmann::json to_json(const DeltaStructureReport& r) {
  using nlohmann::json;
  json A = json::array();
  for (Eigen::Index i = 0; i < r.A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < r.A.cols(); ++j) row.push_back(r.A(i, j));
    A.push_back(row);
  }
  json b = json::array();
  for (Eigen::Index i = 0; i < r.b.size(); ++i) b.push_back(r.b(i));
  json out = {{"violations", r.violations}, {"A", A},
              {"b", b},
              {"residual", r.residual},
              {"affine_ok", r.affine_ok},
              {"beta", r.beta},
              {"psi", {{"ok", r.psi.ok}, {"c_prime", r.psi.c_prime}, {"spread", r.psi.spread}}}};
  if (r.psi.violation) {
    out["psi"]["violation"] = {{"first", r.psi.violation->first},
                               {"second", r.psi.violation->second},
                               {"middle", r.psi.violation->middle},
                               {"what", r.psi.violation->what}};
  }
  return out;
}

}  // namespace convexlab
