#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ezcasp/ez_lang.hpp"
#include "ezcasp/fd_solver.hpp"

namespace csp_fixtures {

using namespace ezcasp;

inline Term term(const std::string& text) {
	EzProgram p = preprocess(parse("required(" + text + ")."));
	return p.rules.at(0).head.atom.term.args.at(0);
}

inline Term sym(const std::string& s) { return Term::symbol(s); }
inline Term num(std::int64_t v) { return Term::integer(v); }
inline Term fn(const std::string& n, std::vector<Term> a) { return Term::function(n, std::move(a)); }

inline CSPInstance instance(std::vector<std::pair<std::string, std::pair<int, int>>> vars, std::vector<std::string> cs) {
	CSPInstance c;
	for (auto& [n, r] : vars) c.add_variable(sym(n), r.first, r.second);
	for (auto& s : cs) c.constraints.push_back(term(s));
	return c;
}

/// All total evaluations of csp that satisfy every constraint.
inline std::vector<Evaluation> brute_force(const CSPInstance& c) {
	std::vector<Evaluation> out;
	Evaluation e;
	std::function<void(std::size_t)> rec = [&](std::size_t i) {
		if (i == c.variables.size()) {
			for (const auto& k : c.constraints)
				if (!satisfied(k, e)) return;
			out.push_back(e);
			return;
		}
		for (std::int64_t v : c.domains[i].values()) {
			e[c.variables[i]] = v;
			rec(i + 1);
		}
	};
	rec(0);
	return out;
}

inline Evaluation eval(std::vector<std::pair<std::string, std::int64_t>> kv) {
	Evaluation e;
	for (auto& [k, v] : kv) e[sym(k)] = v;
	return e;
}

inline const char* kOps[] = {"eq", "neq", "lt", "leq", "gt", "geq"};

struct RandomCsp {
	std::mt19937_64& rng;
	std::vector<Term> vars;

	int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
	Term var() { return vars[pick(0, static_cast<int>(vars.size()) - 1)]; }
	Term value() { return pick(0, 3) == 0 ? num(pick(0, 3)) : var(); }
	Term list(int n) {
		std::vector<Term> xs;
		for (int i = 0; i < n; ++i) xs.push_back(value());
		return Term::list(xs);
	}
	Term distinct_vars(int n) {
		std::vector<Term> xs = vars;
		std::shuffle(xs.begin(), xs.end(), rng);
		xs.resize(n);
		return Term::list(xs);
	}
	Term op() { return sym(kOps[pick(0, 5)]); }
	Term expr(int depth) {
		if (depth == 0 || pick(0, 2) == 0) return value();
		const char* ops[] = {"plus", "minus", "times"};
		return fn(ops[pick(0, 2)], {expr(depth - 1), expr(depth - 1)});
	}
	Term primitive() { return fn(kOps[pick(0, 5)], {expr(2), expr(1)}); }

	Term global(const std::string& g) {
		const int n = pick(1, 4);
		if (g == "all_different" || g == "all_distinct") return fn(g, {list(n)});
		if (g == "count") return fn(g, {value(), list(n), op(), value()});
		if (g == "element") return fn(g, {value(), list(n), value()});
		if (g == "minimum" || g == "maximum") return fn(g, {value(), list(n)});
		if (g == "sum") return fn(g, {list(n), op(), value()});
		if (g == "scalar_product") {
			std::vector<Term> cs;
			for (int i = 0; i < n; ++i) cs.push_back(num(pick(-2, 3)));
			return fn(g, {Term::list(cs), list(n), op(), value()});
		}
		if (g == "assignment") {
			const int k = std::min(2, static_cast<int>(vars.size()) / 2);
			std::vector<Term> xs = vars;
			std::shuffle(xs.begin(), xs.end(), rng);
			return fn(g, {Term::list({xs.begin(), xs.begin() + k}), Term::list({xs.begin() + k, xs.begin() + 2 * k})});
		}
		if (g == "circuit") return fn(g, {distinct_vars(std::min<int>(n, static_cast<int>(vars.size())))});
		if (g == "cumulative") return fn(g, {list(n), list(n), list(n), value()});
		if (g == "serialized") return fn(g, {list(n), list(n)});
		return fn(g, {list(n), list(n), list(n), list(n)}); // disjoint2
	}
	Term connective(Term a, Term b) {
		switch (pick(0, 5)) {
		case 0: return fn("or", {a, b});
		case 1: return fn("and", {a, b});
		case 2: return fn("xor", {a, b});
		case 3: return fn("impl", {a, b});
		case 4: return fn("equiv", {a, b});
		default: return fn("neg", {a});
		}
	}
};

inline const std::vector<std::string> kGlobals = {"all_different", "all_distinct", "assignment", "circuit", "count",
                                           "cumulative", "disjoint2", "element", "maximum", "minimum",
                                           "scalar_product", "serialized", "sum"};

/// Two to four variables with small domains, the global `name`, and sometimes a primitive
/// constraint and a reified connective.
inline CSPInstance random_global_instance(std::mt19937_64& rng, const std::string& name) {
	const int nv = 2 + static_cast<int>(rng() % 3);
	CSPInstance c;
	RandomCsp g{rng, {}};
	for (int i = 0; i < nv; ++i) {
		const int lo = g.pick(-1, 1);
		c.add_variable(sym("v" + std::to_string(i)), lo, lo + g.pick(1, 4));
		g.vars.push_back(sym("v" + std::to_string(i)));
	}
	c.constraints.push_back(g.global(name));
	if (g.pick(0, 1)) c.constraints.push_back(g.primitive());
	if (g.pick(0, 3) == 0) c.constraints.push_back(g.connective(g.primitive(), g.global(name)));
	return c;
}

} // namespace csp_fixtures
