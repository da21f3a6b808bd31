// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ezcasp/schema_engine.hpp"

namespace ezcasp {

/// "{ a, b, x=1 }": visible atoms sorted, then variable bindings sorted by name. "{}" when empty.
std::string format_answer(const CAProgram& p, const ExtendedAnswerSet& e);

/// CLP(FD) rendering of the CSP of m: solve([v,V_v,...]) :- ranges, posted constraints, labeling([...]).
std::string emit_clp(const CAProgram& p, const Interpretation& m, Semantics s = Semantics::Weak);

struct RunReport {
	std::string instance;
	Schema schema = Schema::Black;
	Semantics semantics = Semantics::Weak;
	std::string outcome; // "SAT", "UNSAT", "BUDGET" or "ERROR"
	std::size_t answers = 0;
	double wall_ms = 0;
	RunStats stats;
	std::string error;
};

struct BenchRow {
	std::string instance;
	Schema schema = Schema::Black;
};

/// One `instance<TAB>schema` pair per line; blank lines and # comments are skipped.
std::vector<BenchRow> parse_bench_spec(const std::string& text);

/// Enumerates all answer sets of the instance (one evaluation each).
RunReport run_instance(const std::string& path, Schema schema, Semantics semantics);

/// Rows run in parallel; the result order follows the spec.
std::vector<RunReport> run_bench(const std::vector<BenchRow>& rows, Semantics semantics, const std::string& base_dir = "");

std::string format_table(const std::vector<RunReport>& reports);
std::string format_tsv(const std::vector<RunReport>& reports);

/// Exit status: 10 SAT, 20 UNSAT, 0 for bench, dumps and valid traces, 1 on errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ezcasp
