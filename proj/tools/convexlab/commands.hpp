#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace convexlab::cli {

enum ExitCode : int { kOk = 0, kViolations = 1, kUsage = 2 };

// Bad input files or arguments; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TransformArgs {
  std::string op;
  std::string in;
  std::string out;
  bool cross_check = false;
};

struct PtildeArgs {
  std::string in;
  double ctilde = 0;
};

struct OrderArgs {
  std::string transform;
  double ctilde = 0;
  bool reversing = false;
  bool inverse = false;
  std::string report;
};

struct FuzzArgs {
  std::string base;
  double ctilde = 0;
  std::uint64_t seed = 0;
  std::string corpus;
  std::string report;
  std::string alpha = "1";
  std::string plots;
};

struct HyersUlamArgs {
  std::string in;
  double eps = 0;
  std::string out;
};

struct ReportArgs {
  std::string in;
};

int run_transform(const TransformArgs& a);
int run_check_ptilde(const PtildeArgs& a);
int run_check_order(const OrderArgs& a);
int run_fuzz(const FuzzArgs& a);
int run_hyers_ulam(const HyersUlamArgs& a);
int run_report(const ReportArgs& a);

}  // namespace convexlab::cli
