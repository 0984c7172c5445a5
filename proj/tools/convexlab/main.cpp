#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"
#include "convexlab/grid.hpp"
#include "convexlab/spec_io.hpp"

using namespace convexlab::cli;

int main(int argc, char** argv) {
  CLI::App app{"convexlab: transforms and almost-order stability checks for geometric convex functions"};
  app.require_subcommand(1);

  double tol = -1;
  app.add_option("--tol", tol, "convexity slack for grid validation (default: $CONVEXLAB_TOL or 1e-6)");

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "apply legendre, a or j to a function spec (.json) or grid (.csv)");
  transform->add_option("--op", ta.op, "legendre | a | j")->required();
  transform->add_option("--in", ta.in, "input spec or grid")->required()->check(CLI::ExistingFile);
  transform->add_option("--out", ta.out, "output path (stdout if omitted)");
  transform->add_flag("--cross-check", ta.cross_check, "compare j against the parametric formula");

  auto* check = app.add_subcommand("check", "check relative property P~ or corpus order conditions");
  check->require_subcommand(1);
  PtildeArgs pa;
  auto* ptilde = check->add_subcommand("ptilde", "search for a (linear, indicator) witness against P~");
  ptilde->add_option("--in", pa.in, "function spec")->required()->check(CLI::ExistingFile);
  ptilde->add_option("--ctilde", pa.ctilde, "constant C~ > 1")->required();
  OrderArgs oa;
  auto* order = check->add_subcommand("order", "check the almost order conditions of a corpus transform");
  order->add_option("--transform", oa.transform, "mapping file")->required()->check(CLI::ExistingFile);
  order->add_option("--ctilde", oa.ctilde, "constant C~ > 1")->required();
  order->add_flag("--reversing", oa.reversing, "check the reversing conditions");
  order->add_flag("--inverse", oa.inverse, "also check the inverse conditions");
  order->add_option("--report", oa.report, "write the JSON result here");

  FuzzArgs fa;
  auto* fuzz = app.add_subcommand("fuzz", "build a jittered transform and run the stability pipeline");
  fuzz->add_option("--base", fa.base, "identity | gauge | legendre | a")->required();
  fuzz->add_option("--ctilde", fa.ctilde, "constant C~ > 1")->required();
  fuzz->add_option("--seed", fa.seed, "jitter and shuffle seed")->required();
  fuzz->add_option("--corpus", fa.corpus, "corpus spec file (default: dyadic indicators, linears, extremes)")
      ->check(CLI::ExistingFile);
  fuzz->add_option("--report", fa.report, "write the JSON report here (stdout if omitted)");
  fuzz->add_option("--alpha", fa.alpha, "dilation applied after the base transform");
  fuzz->add_option("--emit-plots", fa.plots, "directory for CSV and SVG plots");

  HyersUlamArgs ha;
  auto* hu = app.add_subcommand("hyers-ulam", "additive approximation of sampled data");
  hu->add_option("--in", ha.in, "CSV of x,value on a symmetric uniform grid")->required()->check(CLI::ExistingFile);
  hu->add_option("--eps", ha.eps, "additive defect bound")->required();
  hu->add_option("--out", ha.out, "output path (stdout if omitted)");

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "render a stability report as text");
  report->add_option("--in", ra.in, "report JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (tol < 0) {
      if (const char* env = std::getenv("CONVEXLAB_TOL")) {
        try {
          tol = std::stod(env);
        } catch (const std::exception&) {
          throw UsageError("CONVEXLAB_TOL is not a number");
        }
      }
    }
    if (tol >= 0) convexlab::set_default_convexity_tol(tol);

    if (*transform) return run_transform(ta);
    if (*ptilde) return run_check_ptilde(pa);
    if (*order) return run_check_order(oa);
    if (*fuzz) return run_fuzz(fa);
    if (*hu) return run_hyers_ulam(ha);
    if (*report) return run_report(ra);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const convexlab::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
