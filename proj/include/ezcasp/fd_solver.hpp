// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ezcasp/asp_core.hpp"
#include "ezcasp/grounder.hpp"
#include "ezcasp/term.hpp"

namespace ezcasp {

enum class Semantics { Weak, Full };

using Evaluation = std::map<Term, std::int64_t, TermLess>;

/// Integer domain: bounds plus removed interior values.
class Domain {
public:
	Domain() = default;
	Domain(std::int64_t lo, std::int64_t hi) : lo_(lo), hi_(hi) {}

	std::int64_t min() const { return lo_; }
	std::int64_t max() const { return hi_; }
	bool empty() const { return lo_ > hi_; }
	bool fixed() const { return lo_ == hi_; }
	bool contains(std::int64_t v) const { return v >= lo_ && v <= hi_ && !holes_.count(v); }
	std::uint64_t size() const;
	/// Values in ascending order; only sensible for small domains.
	std::vector<std::int64_t> values() const;
	/// Smallest member greater than v, or max()+1.
	std::int64_t next(std::int64_t v) const;

	// Each returns true when the domain changed.
	bool set_min(std::int64_t v);
	bool set_max(std::int64_t v);
	bool remove(std::int64_t v);
	bool assign(std::int64_t v);

	friend bool operator==(const Domain&, const Domain&) = default;

private:
	void normalize();
	std::int64_t lo_ = 0;
	std::int64_t hi_ = -1;
	std::set<std::int64_t> holes_;
};

/// <X, D, C>: variables with their declared ranges and constraint terms over them.
struct CSPInstance {
	std::vector<Term> variables;
	std::vector<Domain> domains;
	std::vector<Term> constraints;

	/// Adds v if absent; returns its index.
	std::size_t add_variable(const Term& v, std::int64_t lo, std::int64_t hi);
	std::optional<std::size_t> index_of(const Term& v) const;
};

/// Csp-abstraction of p with respect to m. Range constraints are always posted.
CSPInstance build_csp(const CAProgram& p, const Record& m, Semantics s);

/// Complement of a primitive comparison or reified formula; throws "complement unsupported" for globals.
Term complement(const Term& c);

/// Ground-truth check of a constraint term under a total evaluation.
bool satisfied(const Term& c, const Evaluation& e);

/// Constraint variables occurring in c, in first-occurrence order.
std::vector<Term> constraint_variables(const Term& c, const std::vector<VariableDecl>& decls);

enum class SolveMode { First, Count, Enumerate };

struct SolveResult {
	std::vector<Evaluation> solutions;
	std::size_t count = 0;
	bool exhausted = false; // whole search tree explored
	std::size_t nodes = 0;
};

/// Depth-first labeling: leftmost unfixed variable, ascending values. limit 0 = unbounded.
SolveResult solve(const CSPInstance& csp, SolveMode mode, std::size_t limit = 0,
                  std::size_t node_budget = 50'000'000);

/// Propagation fixpoint at the root; nullopt on inconsistency.
std::optional<std::vector<Domain>> propagate(const CSPInstance& csp);

} // namespace ezcasp
