// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <numeric>

#include "ezcasp/fd_solver.hpp"
#include "internal.hpp"

namespace ezcasp {

std::size_t CSPInstance::add_variable(const Term& v, std::int64_t lo, std::int64_t hi) {
	if (auto i = index_of(v)) return *i;
	variables.push_back(v);
	domains.emplace_back(lo, hi);
	return variables.size() - 1;
}

std::optional<std::size_t> CSPInstance::index_of(const Term& v) const {
	auto it = std::find(variables.begin(), variables.end(), v);
	if (it == variables.end()) return std::nullopt;
	return static_cast<std::size_t>(it - variables.begin());
}

namespace {

const VariableDecl* find_decl(const std::vector<VariableDecl>& decls, const Term& v) {
	auto it = std::lower_bound(decls.begin(), decls.end(), v,
	                           [](const VariableDecl& d, const Term& t) { return compare_terms(d.var, t) < 0; });
	if (it != decls.end() && it->var == v) return &*it;
	return nullptr;
}

void walk(const Term& t, const std::vector<VariableDecl>& decls, std::vector<Term>& out) {
	if (find_decl(decls, t)) {
		if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
		return;
	}
	for (const auto& a : t.args) walk(a, decls, out);
}

} // namespace

std::vector<Term> constraint_variables(const Term& c, const std::vector<VariableDecl>& decls) {
	std::vector<Term> out;
	walk(c, decls, out);
	return out;
}

Term complement(const Term& c) {
	if (c.kind == TermKind::Function && c.args.size() == 2 && fd::is_comparison_name(c.name))
		return Term::function(fd::complement_op(c.name), c.args);
	if (c.kind == TermKind::Function && fd::is_connective(c.name, c.args.size())) {
		if (c.name == "neg") return c.args[0];
		return Term::function("neg", {c});
	}
	throw Error("complement unsupported for " + to_display_string(c));
}

CSPInstance build_csp(const CAProgram& p, const Record& m, Semantics s) {
	CSPInstance k;
	auto post = [&](const Term& c) {
		for (const Term& v : constraint_variables(c, p.variables)) {
			const VariableDecl* d = find_decl(p.variables, v);
			k.add_variable(v, d->lower, d->upper);
		}
		k.constraints.push_back(c);
	};
	for (const Term& rc : p.range_constraints) post(rc);
	for (Atom c : p.constraints) {
		if (m.is_true(Lit::pos(c))) post(p.gamma.at(c));
		else if (s == Semantics::Full && m.is_true(Lit::neg(c))) post(complement(p.gamma.at(c)));
	}
	std::vector<std::size_t> order(k.variables.size());
	std::iota(order.begin(), order.end(), 0);
	std::sort(order.begin(), order.end(),
	          [&k](std::size_t a, std::size_t b) { return compare_terms(k.variables[a], k.variables[b]) < 0; });
	CSPInstance sorted;
	for (std::size_t i : order) {
		sorted.variables.push_back(k.variables[i]);
		sorted.domains.push_back(k.domains[i]);
	}
	sorted.constraints = std::move(k.constraints);
	return sorted;
}

} // namespace ezcasp
