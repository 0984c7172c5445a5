#include "commands.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "convexlab/corpus.hpp"
#include "convexlab/extremal.hpp"
#include "convexlab/grid_transforms.hpp"
#include "convexlab/spec_io.hpp"
#include "convexlab/stability.hpp"
#include "convexlab/transforms.hpp"
#include "plots.hpp"

namespace convexlab::cli {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot write " + path);
  os << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

PLConvex1D read_function(const std::string& path) {
  const json j = read_json(path);
  try {
    return parse_function_spec(j);
  } catch (const SpecError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

AlmostOrderConstant make_constant(double ctilde) {
  if (!(ctilde > 1.0)) throw UsageError("--ctilde must exceed 1");
  return AlmostOrderConstant(ctilde);
}

std::vector<PLConvex1D> parse_function_list(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw SpecError(where, "expected an array of function specs");
  std::vector<PLConvex1D> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(parse_function_spec(arr[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Corpus1D read_corpus_transform(const std::string& path) {
  const json j = read_json(path);
  Corpus1D t;
  try {
    if (!j.is_object()) throw SpecError("$", "transform file must be an object");
    if (j.contains("pairs")) {
      const json& ps = j.at("pairs");
      if (!ps.is_array()) throw SpecError("$.pairs", "expected an array of [f, Tf]");
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string at = "$.pairs[" + std::to_string(i) + "]";
        if (!ps[i].is_array() || ps[i].size() != 2) throw SpecError(at, "expected [f, Tf]");
        t.domain.push_back(parse_function_spec(ps[i][0], at + "[0]"));
        t.codomain.push_back(parse_function_spec(ps[i][1], at + "[1]"));
        t.mapping.push_back(i);
      }
    } else {
      if (!j.contains("domain") || !j.contains("codomain")) throw SpecError("$", "expected \"pairs\" or \"domain\"/\"codomain\"");
      t.domain = parse_function_list(j.at("domain"), "$.domain");
      t.codomain = parse_function_list(j.at("codomain"), "$.codomain");
      if (j.contains("mapping")) {
        const json& m = j.at("mapping");
        if (!m.is_array()) throw SpecError("$.mapping", "expected an array of indices");
        for (std::size_t i = 0; i < m.size(); ++i) {
          if (!m[i].is_number_unsigned()) throw SpecError("$.mapping[" + std::to_string(i) + "]", "expected an index");
          t.mapping.push_back(m[i].get<std::size_t>());
        }
      } else {
        for (std::size_t i = 0; i < t.domain.size(); ++i) t.mapping.push_back(i);
      }
    }
    t.validate();
  } catch (const SpecError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const ConfigurationError& e) {
    throw UsageError(path + ": " + e.what());
  }
  t.provenance.generator = "file " + path;
  return t;
}

std::pair<std::vector<PLConvex1D>, std::string> read_corpus(const std::string& path) {
  if (path.empty()) {
    CorpusSpec spec;
    return {build_corpus(spec), spec.describe()};
  }
  const json j = read_json(path);
  try {
    if (!j.is_object()) throw SpecError("$", "corpus file must be an object");
    if (j.contains("functions")) {
      auto fs = parse_function_list(j.at("functions"), "$.functions");
      return {fs, "explicit corpus " + path + " (" + std::to_string(fs.size()) + " functions)"};
    }
    CorpusSpec spec;
    if (j.contains("half_range")) spec.half_range = j.at("half_range").get<int>();
    if (j.contains("triangle_half_range")) spec.triangle_half_range = j.at("triangle_half_range").get<int>();
    if (j.contains("ratio")) spec.ratio = rational_from_json(j.at("ratio"), "$.ratio");
    if (j.contains("families")) {
      spec.indicators = spec.linears = spec.extremes = spec.triangles = false;
      for (const auto& f : j.at("families")) {
        const std::string name = f.get<std::string>();
        if (name == "indicators") {
          spec.indicators = true;
        } else if (name == "linears") {
          spec.linears = true;
        } else if (name == "extremes") {
          spec.extremes = true;
        } else if (name == "triangles") {
          spec.triangles = true;
        } else {
          throw SpecError("$.families", "unknown family \"" + name + "\"");
        }
      }
    }
    return {build_corpus(spec), spec.describe()};
  } catch (const SpecError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const ConfigurationError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

json violations_json(const std::vector<ConditionViolation>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

}  // namespace

int run_transform(const TransformArgs& a) {
  if (a.op != "legendre" && a.op != "a" && a.op != "j") throw UsageError("--op must be legendre, a or j");
  if (ends_with(a.in, ".csv")) {
    std::ifstream is(a.in);
    if (!is) throw UsageError("cannot open " + a.in);
    GridFunction2D f = [&] {
      try {
        return read_grid_csv(is);
      } catch (const std::invalid_argument& e) {
        throw UsageError(a.in + ": " + e.what());
      }
    }();
    try {
      const GridFunction2D g = a.op == "legendre" ? legendre_grid(f) : a.op == "a" ? a_grid(f) : j_grid(f);
      std::ostringstream os;
      write_grid_csv(os, g);
      write_text(a.out, os.str());
    } catch (const GridValidationError& e) {
      throw UsageError(a.in + ": " + e.what());
    }
    return kOk;
  }
  const PLConvex1D f = read_function(a.in);
  PLConvex1D g = a.op == "legendre" ? legendre(f) : a.op == "a" ? a_transform(f) : j_transform(f, a.cross_check);
  write_text(a.out, to_function_spec(g).dump(2) + "\n");
  return kOk;
}

int run_check_ptilde(const PtildeArgs& a) {
  const AlmostOrderConstant k = make_constant(a.ctilde);
  const PLConvex1D f = read_function(a.in);
  json out = {{"ctilde", a.ctilde}, {"function", to_function_spec(f)}};
  const auto w = ptilde_witness_search(f, k);
  if (w) {
    out["witness"] = {{"g", to_function_spec(w->g)},
                      {"h", to_function_spec(w->h)},
                      {"slope", rational_to_json(w->slope)},
                      {"support", rational_to_json(w->support)}};
  } else {
    out["witness"] = nullptr;
  }
  out["almost_linear"] = f.is_indicator() ? json(nullptr) : json(almost_linear_bounds(f, k));
  std::cout << out.dump(2) << "\n";
  return w ? kViolations : kOk;
}

int run_check_order(const OrderArgs& a) {
  const AlmostOrderConstant k = make_constant(a.ctilde);
  const Corpus1D t = read_corpus_transform(a.transform);
  json out = {{"transform", a.transform}, {"ctilde", a.ctilde}, {"orientation", a.reversing ? "reversing" : "preserving"}};
  const auto v = a.reversing ? check_almost_reversing(t, k) : check_almost_preserving(t, k);
  out["violations"] = violations_json(v);
  bool bad = !v.empty();
  if (a.inverse) {
    const auto iv = check_inverse_conditions(a.reversing ? compose_with_dual(t) : t, k);
    out["inverse_violations"] = violations_json(iv);
    bad = bad || !iv.empty();
  }
  write_text(a.report, out.dump(2) + "\n");
  return bad ? kViolations : kOk;
}

int run_fuzz(const FuzzArgs& a) {
  const AlmostOrderConstant k = make_constant(a.ctilde);
  FuzzConfig cfg;
  cfg.seed = a.seed;
  try {
    cfg.base = parse_base(a.base);
    cfg.alpha = parse_rational(a.alpha);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (cfg.alpha <= 0) throw UsageError("--alpha must be positive");
  const auto [domain, description] = read_corpus(a.corpus);
  Corpus1D t;
  try {
    t = fuzz_transform(cfg, k, domain);
  } catch (const FuzzConstructionError& e) {
    std::cerr << e.what() << "\n";
    return kViolations;
  }
  const StabilityReport r = analyze(t, k, is_reversing(cfg.base), description);
  write_text(a.report, to_json(r).dump(2) + "\n");
  if (!a.plots.empty()) emit_plots(a.plots, r, r.reversing ? compose_with_dual(t) : t);
  return r.classification == Classification::Inconsistent ? kViolations : kOk;
}

int run_hyers_ulam(const HyersUlamArgs& a) {
  if (!(a.eps >= 0)) throw UsageError("--eps must be >= 0");
  std::istringstream is(slurp(a.in));
  std::vector<Sample> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw UsageError(a.in + " line " + std::to_string(lineno) + ": expected x,value");
    try {
      samples.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    } catch (const std::exception&) {
      if (samples.empty() && lineno == 1) continue;  // header
      throw UsageError(a.in + " line " + std::to_string(lineno) + ": cannot parse \"" + line + "\"");
    }
  }
  HyersUlamResult r;
  try {
    r = hyers_ulam_approx(samples, a.eps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(a.in + ": " + e.what());
  }
  json out = {{"eps", a.eps}};
  if (r.violation) {
    out["violation"] = {{"x", samples[r.violation->i].x}, {"y", samples[r.violation->j].x}, {"defect", r.violation->defect}};
    write_text(a.out, out.dump(2) + "\n");
    return kViolations;
  }
  json g = json::array();
  for (std::size_t i = 0; i < r.x.size(); ++i) g.push_back(json::array({r.x[i], r.g[i]}));
  out["delta"] = r.delta;
  out["n"] = r.n;
  out["slope"] = r.slope;
  out["sup_error"] = r.sup_error;
  out["g"] = g;
  write_text(a.out, out.dump(2) + "\n");
  return kOk;
}

int run_report(const ReportArgs& a) {
  const json r = read_json(a.in);
  try {
    std::ostringstream os;
    os << "classification: " << r.at("classification").get<std::string>() << " ("
       << r.at("orientation").get<std::string>() << ", C~=" << r.at("ctilde").get<double>() << ")\n";
    os << "corpus:         " << r.at("corpus").get<std::string>() << "\n";
    os << "provenance:     " << r.at("provenance").at("generator").get<std::string>() << ", seed "
       << r.at("provenance").at("seed").get<std::uint64_t>() << "\n";
    os << "violations:     " << r.at("violations").size() << " (inverse " << r.at("inverse_violations").size()
       << ", lattice " << r.at("lattice_violations").size() << ")\n";
    if (!r.at("extremes_ok").is_null()) os << "extremes:       " << (r.at("extremes_ok").get<bool>() ? "fixed" : "moved") << "\n";
    if (!r.at("exponent").is_null()) {
      const json& e = r.at("exponent");
      os << "exponent:       gamma=" << e.at("gamma").get<double>() << " cauchy_defect=" << e.at("cauchy_defect").get<double>()
         << " sup_error=" << e.at("sup_error").get<double>() << " n=" << e.at("n").get<int>() << "\n";
    }
    if (!r.at("sandwich").is_null()) {
      const json& s = r.at("sandwich");
      os << "sandwich:       alpha=" << s.at("alpha").dump() << " c=" << s.at("c").dump() << " C=" << s.at("C").dump()
         << " C/c=" << s.at("ratio").dump() << " (C~^7=" << s.at("ctilde7").get<double>() << ")"
         << (s.at("certified").get<bool>() ? " certified" : " NOT certified") << (s.at("flagged").get<bool>() ? " FLAGGED" : "")
         << "\n";
    }
    os << "phi samples:    " << r.at("indicator_map").at("phi").size() << ", c samples: "
       << r.at("indicator_map").at("c").size() << "\n";
    for (const auto& d : r.at("diagnostics")) os << "note: " << d.get<std::string>() << "\n";
    for (const auto& v : r.at("violations")) {
      os << "violation: pair (" << v.at("i") << "," << v.at("j") << ") " << v.at("condition").get<std::string>() << " at "
         << v.at("witness").get<std::string>() << "\n";
    }
    std::cout << os.str();
  } catch (const json::exception& e) {
    throw UsageError(a.in + ": not a stability report: " + e.what());
  }
  return kOk;
}

}  // namespace convexlab::cli
