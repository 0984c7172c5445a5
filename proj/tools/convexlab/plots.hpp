#pragma once

#include <string>

#include "convexlab/corpus.hpp"
#include "convexlab/stability.hpp"

namespace convexlab::cli {

// phi.{csv,svg}, c.{csv,svg} and sandwich.{csv,svg} under dir.
void emit_plots(const std::string& dir, const StabilityReport& report, const Corpus1D& t);

}  // namespace convexlab::cli
