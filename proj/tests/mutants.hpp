#pragma once

#include "ezcasp/oracle.hpp"
#include "programs.hpp"

namespace fixtures {

inline TraceStep hand_step(const std::string& rule, std::optional<Lit> lit = std::nullopt, Denial denial = {}) {
	TraceStep s;
	s.rule = rule;
	s.lit = lit;
	s.denial = std::move(denial);
	s.pre.present = false;
	s.post.present = false;
	return s;
}

inline Trace recorded_trace(const CAProgram& p, Schema s, Semantics sem) {
	SchemaConfig c;
	c.schema = s;
	c.semantics = sem;
	c.limit = 0;
	c.alpha_limit = 1;
	c.record_trace = true;
	return solve_ca(p, c).trace;
}

inline std::size_t find_rule(const Trace& t, const std::string& rule) {
	for (std::size_t i = 0; i < t.steps.size(); ++i)
		if (t.steps[i].rule == rule) return i;
	throw Error("no " + rule + " step");
}

struct Mutant {
	std::string name;
	const CAProgram* program;
	Trace trace;
	std::size_t index; // first step the validator must reject
};

/// Hand-mutated traces of the light program `light` (light_program()) and of `loop`, a program
/// whose black-box full-semantics trace contains an Unfounded step.
inline std::vector<Mutant> mutant_suite(const CAProgram& light, const CAProgram& loop) {
	const Atom on = atom_of(light, "lightOn");
	const Trace black = recorded_trace(light, Schema::Black, Semantics::Full);
	const Trace clear = recorded_trace(light, Schema::Clear, Semantics::Full);
	const Trace ut = recorded_trace(loop, Schema::Black, Semantics::Full);
	const std::size_t d = find_rule(black, "Decide");
	const std::size_t r = find_rule(black, "Restart_t");
	std::vector<Mutant> out;
	auto add = [&out](std::string name, const CAProgram& p, Trace t, std::size_t i) {
		out.push_back({std::move(name), &p, std::move(t), i});
	};
	auto insert = [](Trace t, std::size_t i, TraceStep s) {
		t.steps.insert(t.steps.begin() + static_cast<std::ptrdiff_t>(i), std::move(s));
		return t;
	};

	add("Decide on an assigned literal", light, insert(black, 1, hand_step("Decide", *black.steps[0].lit)), 1);
	{
		Trace t = black;
		const std::size_t u = find_rule(t, "UnitPropagate");
		t.steps[u].lit = ~*t.steps[u].lit;
		add("UnitPropagate of the wrong literal", light, t, u);
	}
	add("CP-Propagate on a feasible state", light, insert(black, 0, hand_step("CP-Propagate")), 0);
	add("Backtrack on a consistent state", light, insert(black, d + 1, hand_step("Backtrack")), d + 1);
	add("Fail with a decision", light, insert(black, d + 1, hand_step("Fail")), d + 1);
	{
		const std::size_t l = find_rule(clear, "Learn");
		TraceStep again = clear.steps[l];
		again.pre.present = again.post.present = false;
		add("Learn of a known denial", light, insert(clear, l + 1, again), l + 1);
	}
	{
		Trace t = black;
		t.steps.erase(t.steps.begin() + static_cast<std::ptrdiff_t>(r - 1));
		for (auto& s : t.steps) s.pre.present = s.post.present = false;
		add("restart without a dedicated Learn", light, t, r - 1);
	}
	{
		Trace t = black;
		t.steps.resize(d + 1);
		add("truncated path", light, t, d + 1);
	}
	add("Answer on a non-terminal state", light, insert(black, 0, hand_step("Answer")), 0);
	{
		Trace t = black;
		t.steps[2].post.hash ^= 1;
		add("digest mismatch", light, t, 2);
	}
	{
		Trace t = black;
		std::size_t b = 0;
		while (!(t.steps[b].rule == "Learn" && t.steps[b].blocking)) ++b;
		t.steps[b].denial.pop_back();
		add("blocking denial differs from the answer", light, t, b);
	}
	{
		Trace t = black;
		t.schema = Schema::Grey;
		add("schema label", light, t, r);
	}
	add("Learn of a denial that is not entailed", light,
	    insert(black, 0, hand_step("Learn", std::nullopt, {Lit::pos(on)})), 0);
	{
		Trace t = black;
		t.steps.push_back(hand_step("Decide", Lit::pos(on)));
		add("step after Fail", light, t, t.steps.size() - 1);
	}
	{
		Trace t = black;
		t.steps[d].rule = "Guess";
		add("unknown rule", light, t, d);
	}
	{
		Trace t = ut;
		const std::size_t i = find_rule(t, "Unfounded");
		t.steps[i].unfounded.clear();
		add("empty unfounded set", loop, t, i);
	}
	{
		Trace t = ut;
		const std::size_t i = find_rule(t, "Unfounded");
		t.steps[i].unfounded.push_back(t.steps[0].lit->atom());
		add("founded atom in an unfounded set", loop, t, i);
	}
	return out;
}

} // namespace fixtures
