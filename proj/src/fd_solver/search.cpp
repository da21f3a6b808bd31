// SPDX-License-Identifier: Apache-2.0
#include "internal.hpp"
#include "model.hpp"

namespace ezcasp {

namespace {

struct Search {
	const CSPInstance& csp;
	const fd::Model& model;
	SolveMode mode;
	std::size_t limit;
	std::size_t budget;
	SolveResult out;
	bool stop = false;

	bool consistent(std::vector<Domain>& d) {
		fd::Propagator p(model, d);
		return p.fixpoint();
	}

	void leaf(const std::vector<Domain>& d) {
		Evaluation e;
		for (std::size_t i = 0; i < d.size(); ++i) e.emplace(csp.variables[i], d[i].min());
		for (const Term& c : csp.constraints)
			if (!satisfied(c, e)) return;
		++out.count;
		if (mode != SolveMode::Count) out.solutions.push_back(std::move(e));
		if (mode == SolveMode::First || (limit && out.count >= limit)) stop = true;
	}

	void dfs(std::vector<Domain> d) {
		if (stop) return;
		if (++out.nodes > budget) {
			stop = true;
			return;
		}
		if (!consistent(d)) return;
		std::size_t var = d.size();
		for (std::size_t i = 0; i < d.size(); ++i)
			if (!d[i].fixed()) {
				var = i;
				break;
			}
		if (var == d.size()) {
			leaf(d);
			return;
		}
		while (!stop) {
			const std::int64_t v = d[var].min();
			std::vector<Domain> child = d;
			child[var].assign(v);
			dfs(std::move(child));
			if (stop) return;
			d[var].remove(v);
			if (!consistent(d)) return;
			if (d[var].fixed()) {
				dfs(std::move(d));
				return;
			}
		}
	}
};

} // namespace

SolveResult solve(const CSPInstance& csp, SolveMode mode, std::size_t limit, std::size_t node_budget) {
	const fd::Model model(csp);
	Search s{csp, model, mode, limit, node_budget, {}};
	s.dfs(csp.domains);
	s.out.exhausted = !s.stop;
	return std::move(s.out);
}

std::optional<std::vector<Domain>> propagate(const CSPInstance& csp) {
	const fd::Model model(csp);
	std::vector<Domain> d = csp.domains;
	fd::Propagator p(model, d);
	if (!p.fixpoint()) return std::nullopt;
	return d;
}

} // namespace ezcasp
