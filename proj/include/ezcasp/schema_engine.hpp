// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ezcasp/asp_core.hpp"
#include "ezcasp/fd_solver.hpp"
#include "ezcasp/grounder.hpp"

namespace ezcasp {

enum class Schema { Black, Grey, Clear };

std::string to_string(Schema s);
std::string to_string(Semantics s);
std::optional<Schema> parse_schema(const std::string& s);
std::optional<Semantics> parse_semantics(const std::string& s);

struct SchemaConfig {
	Schema schema = Schema::Black;
	Semantics semantics = Semantics::Weak;
	std::size_t check_frequency = 1; // clear-box: CSP check every k decisions
	std::size_t limit = 1;           // extended answer sets; 0 = all
	std::size_t alpha_limit = 0;     // evaluations per answer set; 0 = up to limit
	bool negative_first = false;     // Decide polarity
	std::uint64_t step_budget = 0;   // 0 = default_step_budget()
	std::uint64_t seed = 0;          // reserved
	bool record_trace = false;
};

/// EZCASP_STEP_BUDGET if set, else 20 million.
std::uint64_t default_step_budget();

struct ExtendedAnswerSet {
	Interpretation atoms; // M+; M is complete, so this determines it
	Evaluation alpha;
};

struct StateDigest {
	std::size_t m = 0;
	std::size_t decisions = 0;
	std::size_t gamma = 0;
	std::size_t lambda = 0;
	bool fail = false;
	std::uint64_t hash = 0;
	bool present = true; // false for hand-written traces without digests

	friend bool operator==(const StateDigest&, const StateDigest&) = default;
};

/// One edge of a path, or an "Answer" marker for a reported semi-terminal state.
struct TraceStep {
	std::string rule;
	std::optional<Lit> lit;     // Decide, UnitPropagate, Unfounded, ASP-Propagate
	Clause clause;              // UnitPropagate
	std::vector<Atom> unfounded; // Unfounded
	Denial denial;              // Learn, Learn_t
	bool blocking = false;      // Learn of an enumeration blocking denial
	StateDigest pre;
	StateDigest post;
};

struct Trace {
	Schema schema = Schema::Black;
	Semantics semantics = Semantics::Weak;
	std::size_t num_atoms = 0;
	bool complete = true; // false when the run stopped on a budget
	std::vector<TraceStep> steps;
};

struct RunStats {
	std::uint64_t steps = 0;
	std::uint64_t decisions = 0;
	std::uint64_t propagations = 0;
	std::uint64_t csp_checks = 0;
	std::uint64_t complete_candidates = 0; // CSP checks on complete assignments
	std::uint64_t learned = 0;
	std::uint64_t restarts = 0;
	std::uint64_t backtracks = 0;
	std::vector<std::size_t> lambda_at_restart;
};

enum class Outcome { Sat, Unsat, Budget };

struct SolveOutput {
	Outcome outcome = Outcome::Unsat;
	std::vector<ExtendedAnswerSet> answers;
	std::vector<Denial> gamma; // permanent denials at the end, blocking ones excluded
	RunStats stats;
	Trace trace;
};

SolveOutput solve_ca(const CAProgram& p, const SchemaConfig& cfg);

/// Denial blocking the constraint literals of m (positives only under weak semantics).
/// Throws when the csp-abstraction of m is feasible.
Denial cp_entailed_denial(const Record& m, const CAProgram& p, Semantics s);

/// Digest of a state; used by the engine and the trace validator.
StateDigest digest(const Record& m, const std::vector<Denial>& gamma, const std::vector<Denial>& lambda, bool fail);

/// Canonical denial: sorted, duplicates removed.
Denial normalize_denial(Denial d);

std::string trace_to_jsonl(const Trace& t, const CAProgram& p);
/// Throws Error on malformed input.
Trace trace_from_jsonl(const std::string& text);

} // namespace ezcasp
