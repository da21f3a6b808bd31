// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ezcasp/asp_core.hpp"
#include "ezcasp/fd_solver.hpp"
#include "ezcasp/grounder.hpp"
#include "ezcasp/schema_engine.hpp"

namespace ezcasp {

struct OracleLimits {
	std::size_t max_atoms = 16;
	std::uint64_t max_assignments = 10'000;
};

/// Exhaustive feasibility over the declared domains; throws when the product exceeds the limit.
bool csp_feasible_exhaustive(const CAProgram& p, const std::vector<Term>& constraints, const OracleLimits& lim = {});
/// First solution in lexicographic order of the variables by first occurrence.
std::optional<Evaluation> csp_solution_exhaustive(const CAProgram& p, const std::vector<Term>& constraints,
                                                  const OracleLimits& lim = {});

/// M+ of every answer set of p extended by `extra` denials: (a1)+(a2) for Full, (w1)+(w2) for Weak.
/// Sorted by the binary value of the atom set.
std::vector<Interpretation> enumerate_answer_sets(const CAProgram& p, Semantics s, const std::vector<Denial>& extra = {},
                                                  const OracleLimits& lim = {});
/// Every answer set paired with its first evaluation.
std::vector<ExtendedAnswerSet> enumerate_extended_answer_sets(const CAProgram& p, Semantics s, const OracleLimits& lim = {});
std::vector<Interpretation> enumerate_weak_answer_sets(const CAProgram& p, const OracleLimits& lim = {});
std::vector<Interpretation> enumerate_full_answer_sets(const CAProgram& p, const OracleLimits& lim = {});

struct ValidationReport {
	bool ok = true;
	std::size_t index = 0; // first violating step; steps.size() for the final state
	std::string reason;
};

/// Replays t from the initial state, checking every guard, restart-safety, the schema's strategy
/// and the final state. With check_strategy off only the transition rules and restart-safety are checked.
ValidationReport validate_trace(const Trace& t, const CAProgram& p, const OracleLimits& lim = {},
                                bool check_strategy = true);

struct RandomProgramOptions {
	std::size_t rules = 8;
	std::size_t atoms = 5;       // regular atoms p0..p(n-1)
	std::size_t variables = 2;   // at most 4
	std::size_t constraints = 4; // distinct constraint expressions
	std::size_t required = 2;    // at most this many required heads
	std::int64_t max_value = 4;  // domains are 0..u with u <= max_value
};

/// Deterministic per seed. rules == 0 gives the empty program.
std::string random_program_text(std::uint64_t seed, const RandomProgramOptions& opts = {});
CAProgram random_program(std::uint64_t seed, const RandomProgramOptions& opts = {});

} // namespace ezcasp
