#pragma once

#include <iosfwd>

#include "swat/team_formation.hpp"

namespace swat::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kDomainError = 2, kUsageError = 3 };

/// Runs `swat <command> [flags]`. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Parses `comp=1,coh=0.5,...` (long names accepted too); omitted metrics
/// get weight 0. Throws InvalidParams.
MetricWeights parse_weight_spec(const std::string& spec);

}  // namespace swat::cli
