// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <functional>

#include "ezcasp/oracle.hpp"

namespace ezcasp {

namespace {

void collect(const Term& t, const CAProgram& p, std::vector<const VariableDecl*>& out) {
	if (const VariableDecl* d = p.find_variable(t)) {
		if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
		return;
	}
	for (const Term& a : t.args) collect(a, p, out);
}

} // namespace

std::optional<Evaluation> csp_solution_exhaustive(const CAProgram& p, const std::vector<Term>& constraints,
                                                  const OracleLimits& lim) {
	std::vector<const VariableDecl*> vars;
	for (const Term& c : constraints) collect(c, p, vars);
	std::uint64_t total = 1;
	for (const VariableDecl* v : vars) {
		if (v->upper < v->lower) return std::nullopt;
		const auto size = static_cast<std::uint64_t>(v->upper - v->lower) + 1;
		if (size > lim.max_assignments || total * size > lim.max_assignments)
			throw Error("oracle bounds exceeded: more than " + std::to_string(lim.max_assignments) + " assignments");
		total *= size;
	}
	Evaluation e;
	std::function<bool(std::size_t)> rec = [&](std::size_t i) {
		if (i == vars.size()) {
			return std::all_of(constraints.begin(), constraints.end(), [&e](const Term& c) { return satisfied(c, e); });
		}
		for (std::int64_t v = vars[i]->lower; v <= vars[i]->upper; ++v) {
			e[vars[i]->var] = v;
			if (rec(i + 1)) return true;
		}
		return false;
	};
	if (!rec(0)) return std::nullopt;
	return e;
}

bool csp_feasible_exhaustive(const CAProgram& p, const std::vector<Term>& constraints, const OracleLimits& lim) {
	return csp_solution_exhaustive(p, constraints, lim).has_value();
}

namespace {

std::vector<Term> abstraction_csp(const CAProgram& p, Semantics s, const Interpretation& x) {
	std::vector<Term> k = p.range_constraints;
	for (Atom c : p.constraints) {
		if (x[c]) k.push_back(p.gamma.at(c));
		else if (s == Semantics::Full) k.push_back(complement(p.gamma.at(c)));
	}
	return k;
}

} // namespace

std::vector<Interpretation> enumerate_answer_sets(const CAProgram& p, Semantics s, const std::vector<Denial>& extra,
                                                  const OracleLimits& lim) {
	RegularProgram abs = p.asp_abstraction();
	if (abs.num_atoms() > lim.max_atoms)
		throw Error("oracle bounds exceeded: " + std::to_string(abs.num_atoms()) + " atoms");
	for (const Denial& d : extra) abs.add_denial(d);
	std::vector<Interpretation> out;
	for (const Interpretation& x : enumerate_answer_sets_bruteforce(abs, lim.max_atoms)) {
		if (csp_feasible_exhaustive(p, abstraction_csp(p, s, x), lim)) out.push_back(x);
	}
	return out;
}

std::vector<ExtendedAnswerSet> enumerate_extended_answer_sets(const CAProgram& p, Semantics s, const OracleLimits& lim) {
	std::vector<ExtendedAnswerSet> out;
	for (Interpretation& x : enumerate_answer_sets(p, s, {}, lim)) {
		auto alpha = csp_solution_exhaustive(p, abstraction_csp(p, s, x), lim);
		out.push_back({std::move(x), std::move(*alpha)});
	}
	return out;
}

std::vector<Interpretation> enumerate_weak_answer_sets(const CAProgram& p, const OracleLimits& lim) {
	return enumerate_answer_sets(p, Semantics::Weak, {}, lim);
}

std::vector<Interpretation> enumerate_full_answer_sets(const CAProgram& p, const OracleLimits& lim) {
	return enumerate_answer_sets(p, Semantics::Full, {}, lim);
}

} // namespace ezcasp
