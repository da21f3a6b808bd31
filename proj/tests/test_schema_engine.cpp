#include <cstdlib>
#include <set>

#include "doctest.h"

#include "ezcasp/oracle.hpp"
#include "programs.hpp"

using namespace ezcasp;
using namespace fixtures;

namespace {

const Schema kSchemas[] = {Schema::Black, Schema::Grey, Schema::Clear};

SolveOutput run(const CAProgram& p, Schema s, Semantics sem, std::size_t limit = 0, std::size_t alpha = 0) {
	SchemaConfig c;
	c.schema = s;
	c.semantics = sem;
	c.limit = limit;
	c.alpha_limit = alpha;
	c.record_trace = true;
	SolveOutput o = solve_ca(p, c);
	const ValidationReport v = validate_trace(o.trace, p);
	INFO(to_string(s), " ", to_string(sem), " step ", v.index, ": ", v.reason);
	CHECK(v.ok);
	return o;
}

std::set<std::set<std::string>> atom_sets(const CAProgram& p, const SolveOutput& o) {
	std::set<std::set<std::string>> out;
	for (const auto& a : o.answers) out.insert(names(p, a.atoms));
	return out;
}

std::vector<std::string> rules_of(const Trace& t) {
	std::vector<std::string> out;
	for (const auto& s : t.steps) out.push_back(s.rule);
	return out;
}

} // namespace

TEST_CASE("light domain ez-program: twelve extended answer sets") {
	const CAProgram p = encoding("light.ez");
	for (Schema s : kSchemas) {
		const SolveOutput o = run(p, s, Semantics::Weak);
		REQUIRE(o.outcome == Outcome::Sat);
		REQUIRE(o.answers.size() == 12);
		std::set<std::int64_t> xs;
		for (const auto& a : o.answers) {
			std::set<std::string> visible;
			for (Atom b = 0; b < a.atoms.size(); ++b)
				if (a.atoms[b] && p.visible(b)) visible.insert(p.display(b));
			CHECK(visible == std::set<std::string>{"cspdomain(fd)", "cspvar(x,0,23)", "lightOn", "required(x >= 12)", "switch"});
			xs.insert(value_of(a.alpha, "x"));
		}
		CHECK(xs.size() == 12);
		CHECK(*xs.begin() == 12);
		CHECK(*xs.rbegin() == 23);
	}
}

TEST_CASE("light CA program: one answer set, twelve evaluations") {
	const CAProgram p = light_program();
	for (Schema s : kSchemas) {
		const SolveOutput o = run(p, s, Semantics::Full);
		REQUIRE(o.answers.size() == 12);
		CHECK(atom_sets(p, o) == std::set<std::set<std::string>>{{"switch", "lightOn", "|x >= 12|"}});
		CHECK(atom_sets(p, run(p, s, Semantics::Weak, 0, 1)) ==
		      std::set<std::set<std::string>>{{"switch", "lightOn", "|x >= 12|"}, {"switch", "lightOn"}});
	}
}

TEST_CASE("night/am: three answer sets, four weak answer sets") {
	const CAProgram p = encoding("night_am.ez");
	const std::set<std::string> facts{"cspdomain(fd)", "cspvar(x,0,23)"};
	auto with = [&facts](std::set<std::string> s) {
		s.insert(facts.begin(), facts.end());
		return s;
	};
	const std::set<std::set<std::string>> full{with({"night", "am", "|x < 6|", "|x < 12|"}), with({"am", "|x < 12|"}),
	                                           with({})};
	std::set<std::set<std::string>> weak = full;
	weak.insert(with({"night", "|x < 6|"}));
	for (Schema s : kSchemas) {
		CHECK(atom_sets(p, run(p, s, Semantics::Full, 0, 1)) == full);
		CHECK(atom_sets(p, run(p, s, Semantics::Weak, 0, 1)) == weak);
	}
}

TEST_CASE("weak answer set without an answer set") {
	const CAProgram p = encoding("weak_vs_full.ez");
	for (Schema s : kSchemas) {
		const SolveOutput w = run(p, s, Semantics::Weak, 0, 1);
		CHECK(w.outcome == Outcome::Sat);
		CHECK(atom_sets(p, w) == std::set<std::set<std::string>>{{"cspdomain(fd)", "cspvar(x,0,23)"}});
		CHECK(run(p, s, Semantics::Full).outcome == Outcome::Unsat);
	}
}

TEST_CASE("brothers riddle: ages 12, 9 and 6") {
	const CAProgram p = encoding("riddle.ez");
	for (Schema s : kSchemas) {
		const SolveOutput o = run(p, s, Semantics::Weak);
		REQUIRE(o.answers.size() == 1);
		const Evaluation& e = o.answers[0].alpha;
		CHECK(value_of(e, "age(1)") == 12);
		CHECK(value_of(e, "age(2)") == 9);
		CHECK(value_of(e, "age(3)") == 6);
	}
}

TEST_CASE("double negation: answer sets {} and {a}") {
	const CAProgram p = compile("a :- not not a.");
	for (Schema s : kSchemas) {
		const SolveOutput o = run(p, s, Semantics::Weak);
		CHECK(atom_sets(p, o) == std::set<std::set<std::string>>{{}, {"a"}});
	}
}

TEST_CASE("programs without constraint atoms behave as plain ASP") {
	const CAProgram p = compile("a :- not b. b :- not a.");
	for (Schema s : kSchemas) {
		const SolveOutput o = run(p, s, Semantics::Weak);
		CHECK(atom_sets(p, o) == std::set<std::set<std::string>>{{"a"}, {"b"}});
		CHECK(o.stats.csp_checks >= 1);
		CHECK(o.stats.learned == 2);
	}
}

TEST_CASE("empty program and empty-clause programs") {
	const CAProgram empty = compile("");
	for (Schema s : kSchemas) {
		const SolveOutput o = run(empty, s, Semantics::Weak);
		REQUIRE(o.answers.size() == 1);
		CHECK(o.answers[0].atoms.empty());
	}
	const CAProgram bad = compile("a. :- 1 = 1.");
	for (Schema s : kSchemas) {
		const SolveOutput o = run(bad, s, Semantics::Weak);
		CHECK(o.outcome == Outcome::Unsat);
		CHECK(rules_of(o.trace).back() == "Fail");
	}
}

TEST_CASE("limit and alpha limit") {
	const CAProgram p = encoding("night_am.ez");
	CHECK(run(p, Schema::Black, Semantics::Weak, 1).answers.size() == 1);
	CHECK(run(p, Schema::Black, Semantics::Weak, 5).answers.size() == 5);
	CHECK(run(p, Schema::Grey, Semantics::Weak, 0, 2).answers.size() == 8);
	CHECK(run(p, Schema::Clear, Semantics::Full, 0).answers.size() == 24);
}

TEST_CASE("clear-box conflict: decide, CP-Propagate, learn, backtrack") {
	const CAProgram p = light_program();
	SchemaConfig c;
	c.schema = Schema::Clear;
	c.semantics = Semantics::Full;
	c.negative_first = true;
	c.record_trace = true;
	const SolveOutput o = solve_ca(p, c);
	REQUIRE(o.answers.size() == 1);
	CHECK(validate_trace(o.trace, p).ok);
	const Atom ge = atom_of(p, "|x >= 12|");
	const auto& st = o.trace.steps;
	bool found = false;
	for (std::size_t i = 0; i + 3 < st.size() && !found; ++i) {
		if (st[i].rule != "Decide" || !st[i].lit || *st[i].lit != Lit::neg(ge)) continue;
		found = st[i + 1].rule == "CP-Propagate" && st[i + 2].rule == "Learn" && st[i + 3].rule == "Backtrack";
	}
	CHECK(found);
	CHECK(o.answers[0].atoms[ge]);

	c.schema = Schema::Black;
	const SolveOutput b = solve_ca(p, c);
	CHECK(validate_trace(b.trace, p).ok);
	for (std::size_t i = 0; i < b.trace.steps.size(); ++i) {
		if (b.trace.steps[i].rule != "CP-Propagate") continue;
		CHECK(b.trace.steps[i].pre.m == p.pi.num_atoms());
		REQUIRE(i + 2 < b.trace.steps.size());
		CHECK(b.trace.steps[i + 1].rule == "Learn");
		CHECK(b.trace.steps[i + 2].rule == "Restart_t");
	}
}

TEST_CASE("cp_entailed_denial") {
	const CAProgram p = light_program();
	const Atom lt = atom_of(p, "|x < 12|");
	const Atom ge = atom_of(p, "|x >= 12|");
	Record m(p.pi.num_atoms());
	m.push(Lit::pos(atom_of(p, "lightOn")));
	m.push(Lit::pos(atom_of(p, "switch")));
	m.push(Lit::neg(atom_of(p, "am")));
	m.push(Lit::neg(lt));
	m.push(Lit::neg(ge), true);
	CHECK(cp_entailed_denial(m, p, Semantics::Full) == normalize_denial({Lit::neg(lt), Lit::neg(ge)}));
	CHECK_THROWS_WITH_AS(cp_entailed_denial(m, p, Semantics::Weak), doctest::Contains("feasible"), Error);

	Record both(p.pi.num_atoms());
	both.push(Lit::pos(lt));
	both.push(Lit::pos(ge));
	CHECK(cp_entailed_denial(both, p, Semantics::Weak) == normalize_denial({Lit::pos(lt), Lit::pos(ge)}));
	CHECK_THROWS_AS(cp_entailed_denial(Record(p.pi.num_atoms()), p, Semantics::Full), Error);
}

TEST_CASE("pm extension: the denial 'not pm' holds in every answer set") {
	const CAProgram p = light_program(true);
	const Atom pm = atom_of(p, "pm");
	const auto full = enumerate_full_answer_sets(p);
	REQUIRE(full.size() == 1);
	CHECK(names(p, full[0]) == std::set<std::string>{"switch", "lightOn", "pm", "|x >= 12|"});
	bool violated_by_abstraction = false;
	for (const auto& x : enumerate_answer_sets_bruteforce(p.asp_abstraction()))
		if (!x[pm]) violated_by_abstraction = true;
	CHECK(violated_by_abstraction);
	for (Schema s : kSchemas) {
		const SolveOutput o = run(p, s, Semantics::Full, 0, 1);
		REQUIRE(o.answers.size() == 1);
		CHECK(o.answers[0].atoms[pm]);
	}
}

TEST_CASE("grey keeps temporal denials at least as long as black") {
	const CAProgram p = encoding("is_toy.ez");
	const SolveOutput b = run(p, Schema::Black, Semantics::Weak, 0, 1);
	const SolveOutput g = run(p, Schema::Grey, Semantics::Weak, 0, 1);
	REQUIRE(b.stats.lambda_at_restart.size() == g.stats.lambda_at_restart.size());
	for (std::size_t i = 0; i < b.stats.lambda_at_restart.size(); ++i)
		CHECK(g.stats.lambda_at_restart[i] >= b.stats.lambda_at_restart[i]);
	CHECK(b.stats.restarts > 0);
	CHECK(run(p, Schema::Clear, Semantics::Weak, 0, 1).stats.restarts == 0);
}

TEST_CASE("clear-box and black-box agree on random programs") {
	for (std::uint64_t seed = 0; seed < 200; ++seed) {
		const CAProgram p = random_program(seed);
		for (Semantics sem : {Semantics::Weak, Semantics::Full}) {
			SchemaConfig c;
			c.semantics = sem;
			c.limit = 0;
			c.alpha_limit = 1;
			const SolveOutput b = solve_ca(p, c);
			c.schema = Schema::Clear;
			const SolveOutput k = solve_ca(p, c);
			CHECK(k.answers.size() == b.answers.size());
		}
	}
}

TEST_CASE("step budget") {
	const CAProgram p = encoding("rf_toy.ez");
	SchemaConfig c;
	c.limit = 0;
	c.step_budget = 200;
	c.record_trace = true;
	const SolveOutput o = solve_ca(p, c);
	CHECK(o.outcome == Outcome::Budget);
	CHECK_FALSE(o.trace.complete);
	CHECK(o.trace.steps.size() <= 200);
	CHECK(validate_trace(o.trace, p).ok);

	setenv("EZCASP_STEP_BUDGET", "1234", 1);
	CHECK(default_step_budget() == 1234);
	setenv("EZCASP_STEP_BUDGET", "junk", 1);
	CHECK(default_step_budget() == 20'000'000);
	unsetenv("EZCASP_STEP_BUDGET");
}

TEST_CASE("trace JSON lines round trip") {
	const CAProgram p = encoding("night_am.ez");
	for (Schema s : kSchemas) {
		const SolveOutput o = run(p, s, Semantics::Full, 0, 1);
		const Trace t = trace_from_jsonl(trace_to_jsonl(o.trace, p));
		CHECK(t.schema == s);
		CHECK(t.semantics == Semantics::Full);
		REQUIRE(t.steps.size() == o.trace.steps.size());
		for (std::size_t i = 0; i < t.steps.size(); ++i) {
			CHECK(t.steps[i].rule == o.trace.steps[i].rule);
			CHECK(t.steps[i].lit == o.trace.steps[i].lit);
			CHECK(t.steps[i].denial == o.trace.steps[i].denial);
			CHECK(t.steps[i].post == o.trace.steps[i].post);
		}
		CHECK(trace_to_jsonl(t, p) == trace_to_jsonl(o.trace, p));
	}
	CHECK_THROWS_WITH_AS(trace_from_jsonl(""), doctest::Contains("empty"), Error);
	CHECK_THROWS_WITH_AS(trace_from_jsonl("{\"trace\":\"ezcasp\",\"schema\":\"black\",\"semantics\":\"weak\",\"atoms\":1}\n{"),
	                     doctest::Contains("trace line 2"), Error);
	CHECK(parse_schema("gray") == Schema::Grey);
	CHECK_FALSE(parse_schema("white"));
	CHECK_FALSE(parse_semantics("strong"));
}
