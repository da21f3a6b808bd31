#include <chrono>
#include <functional>
#include <map>
#include <random>

#include "doctest.h"

#include "csp_fixtures.hpp"
#include "ezcasp/fd_solver.hpp"

using namespace ezcasp;
using namespace csp_fixtures;

TEST_CASE("fd: single inequality") {
	CSPInstance c = instance({{"x", {0, 23}}}, {"x >= 12"});
	SolveResult r = solve(c, SolveMode::Enumerate);
	CHECK(r.count == 12);
	CHECK(r.exhausted);
	CHECK(r.solutions.front().at(sym("x")) == 12);
	auto d = propagate(c);
	REQUIRE(d);
	CHECK((*d)[0] == Domain(12, 23));
}

TEST_CASE("fd: first solution and inconsistency") {
	CSPInstance c = instance({{"x", {0, 9}}, {"y", {0, 9}}}, {"x + y = 14", "x - y = 4"});
	SolveResult r = solve(c, SolveMode::First);
	REQUIRE(r.solutions.size() == 1);
	CHECK(r.solutions[0] == eval({{"x", 9}, {"y", 5}}));
	CSPInstance bad = instance({{"a", {1, 1}}, {"b", {1, 1}}}, {"all_different([a,b])"});
	CHECK_FALSE(propagate(bad));
	CHECK(solve(bad, SolveMode::Count).count == 0);
}

TEST_CASE("fd: send more money") {
	std::vector<std::pair<std::string, std::pair<int, int>>> vars;
	for (const char* v : {"s", "e", "n", "d", "m", "o", "r", "y"}) vars.push_back({v, {0, 9}});
	CSPInstance c = instance(vars, {"all_different([s,e,n,d,m,o,r,y])", "s > 0", "m > 0",
	                                "1000*s + 100*e + 10*n + d + 1000*m + 100*o + 10*r + e = "
	                                "10000*m + 1000*o + 100*n + 10*e + y"});
	const auto start = std::chrono::steady_clock::now();
	SolveResult r = solve(c, SolveMode::Enumerate);
	const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	REQUIRE(r.count == 1);
	CHECK(r.solutions[0] == eval({{"s", 9}, {"e", 5}, {"n", 6}, {"d", 7}, {"m", 1}, {"o", 0}, {"r", 8}, {"y", 2}}));
	CHECK(secs < 5.0);
}

TEST_CASE("fd: satisfied on globals") {
	Evaluation e = eval({{"a", 2}, {"b", 3}, {"c", 1}});
	CHECK(satisfied(term("circuit([a,b,c])"), e));
	CHECK_FALSE(satisfied(term("circuit([a,c,b])"), e));
	CHECK(satisfied(term("element(c,[a,b,c],2)"), e));
	CHECK(satisfied(term("sum([a,b,c],eq,6)"), e));
	CHECK(satisfied(term("scalar_product([1,2,3],[a,b,c],eq,11)"), e));
	CHECK(satisfied(term("count(1,[a,b,c],leq,1)"), e));
	CHECK(satisfied(term("minimum(1,[a,b,c])"), e));
	CHECK(satisfied(term("maximum(3,[a,b,c])"), e));
	CHECK(satisfied(term("assignment([a,b,c],[b,c,a])"), e));
	CHECK_FALSE(satisfied(term("cumulative([a,b],[2,2],[1,1],1)"), e));
	CHECK(satisfied(term("cumulative([c,b],[2,2],[1,1],1)"), e));
	CHECK(satisfied(term("serialized([c,b],[2,1])"), e));
	CHECK(satisfied(term("disjoint2([c,b],[2,1],[1,1],[1,1])"), e));
	CHECK_FALSE(satisfied(term("a / 0 = 0"), e));
	CHECK(satisfied(term("(a > b) \\/ (c = 1)"), e));
}

TEST_CASE("fd: cumulative propagation pushes start times") {
	CSPInstance c = instance({{"s1", {0, 0}}, {"s2", {0, 10}}}, {"cumulative([s1,s2],[3,2],[2,2],3)"});
	auto d = propagate(c);
	REQUIRE(d);
	CHECK((*d)[1].min() == 3);
}

TEST_CASE("fd: complement") {
	CHECK(to_string(complement(term("x >= 12"))) == "lt(x,12)");
	CHECK(to_string(complement(term("x != y"))) == "eq(x,y)");
	CHECK_THROWS_WITH(complement(term("all_different([x,y])")), doctest::Contains("complement unsupported"));
	CHECK(to_string(complement(term("(x > 1) \\/ (y > 1)"))) == "neg(or(gt(x,1),gt(y,1)))");
	CHECK(to_string(complement(term("!(x > 1)"))) == "gt(x,1)");
	std::mt19937_64 rng(7);
	RandomCsp g{rng, {sym("x"), sym("y"), sym("z")}};
	std::uniform_int_distribution<int> v(-5, 5);
	for (int i = 0; i < 100000; ++i) {
		const Term c = g.primitive();
		const Evaluation e = eval({{"x", v(rng)}, {"y", v(rng)}, {"z", v(rng)}});
		REQUIRE(satisfied(c, e) != satisfied(complement(c), e));
	}
}

TEST_CASE("fd: random instances agree with exhaustive search") {
	std::mt19937_64 rng(2024);
	std::map<std::string, int> seen;
	for (int round = 0; round < 60; ++round)
		for (const std::string& name : kGlobals) {
			const CSPInstance c = random_global_instance(rng, name);
			INFO(to_string(c.constraints[0]));
			const SolveResult got = solve(c, SolveMode::Enumerate);
			REQUIRE(got.exhausted);
			REQUIRE(got.solutions == brute_force(c));
			++seen[name];
		}
	for (const auto& name : kGlobals) CHECK(seen[name] >= 50);
}

TEST_CASE("fd: all_distinct agrees with all_different") {
	std::mt19937_64 rng(11);
	for (int round = 0; round < 200; ++round) {
		CSPInstance a;
		RandomCsp g{rng, {}};
		for (int i = 0; i < 4; ++i) {
			const int lo = g.pick(0, 2);
			a.add_variable(sym("v" + std::to_string(i)), lo, lo + g.pick(0, 2));
			g.vars.push_back(sym("v" + std::to_string(i)));
		}
		CSPInstance b = a;
		Term xs = g.distinct_vars(4);
		a.constraints.push_back(fn("all_different", {xs}));
		b.constraints.push_back(fn("all_distinct", {xs}));
		REQUIRE(solve(a, SolveMode::Enumerate).solutions == solve(b, SolveMode::Enumerate).solutions);
	}
	CSPInstance pigeon = instance({{"a", {1, 2}}, {"b", {1, 2}}, {"c", {1, 2}}}, {"all_distinct([a,b,c])"});
	CHECK_FALSE(propagate(pigeon));
}

TEST_CASE("fd: build_csp under weak and full semantics") {
	CAProgram p = compile(R"(
cspdomain(fd). cspvar(x,0,23).
required(x >= 12) :- switch.
{ switch }.
)");
	Record m(p.pi.num_atoms());
	for (Atom a = 0; a < p.pi.num_atoms(); ++a) m.push(Lit::neg(a));
	CSPInstance weak = build_csp(p, m, Semantics::Weak);
	CHECK(weak.constraints.size() == 2);
	CHECK(solve(weak, SolveMode::Count).count == 24);
	CSPInstance full = build_csp(p, m, Semantics::Full);
	CHECK(full.constraints.size() == 3);
	CHECK(solve(full, SolveMode::Count).count == 12);
}

TEST_CASE("fd: node budget stops search") {
	CSPInstance c = instance({{"x", {0, 100}}, {"y", {0, 100}}}, {"x != y"});
	SolveResult r = solve(c, SolveMode::Count, 0, 50);
	CHECK_FALSE(r.exhausted);
}
