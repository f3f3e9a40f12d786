#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "minply/greedy.hpp"
#include "minply/instances.hpp"
#include "minply/verify.hpp"

namespace minply {

inline constexpr const char* kVersion = "minply 0.1.0";

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 2,
  kExitGeneration = 3,
  kExitInput = 4,
  kExitBound = 5,
};

enum class SolveMode { kLine1, kLine2, kSlab, kFull };

const char* to_string(SolveMode mode);
// Throws kInvalidArgument for unknown names.
SolveMode parse_solve_mode(const std::string& name);

// Dispatches to the solver for `mode`. Throws kModeMismatch when the
// instance kind does not fit the mode (full accepts every kind).
Solution solve_instance(const Instance& instance, SolveMode mode, TableStats* stats = nullptr);

// The clip under which `mode` measures ply for this instance.
ClipRegion clip_for(const Instance& instance, SolveMode mode);

struct CaseResult {
  Solution solution;
  OracleResult oracle;
  BoundReport report;
  double solve_ms = 0.0;
};

// Solves (or takes `given`), runs the oracle and checks every bound that
// applies to `mode`, including feasibility and, for slab mode, the
// structural validator.
CaseResult run_case(const Instance& instance, SolveMode mode, int cap = kDefaultOracleCap,
                    const std::optional<Solution>& given = std::nullopt);

// Entry point of the command-line tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minply
