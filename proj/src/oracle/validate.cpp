// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <set>

#include "ezcasp/oracle.hpp"

namespace ezcasp {

namespace {

struct Violation {
	std::string reason;
};

std::string lit_name(const CAProgram& p, Lit l) {
	const Atom a = l.atom();
	const std::string n = a < p.pi.num_atoms() ? p.display(a) : std::to_string(a);
	return (l.negative() ? "not " : "") + n;
}

Clause normalize_clause(Clause c) { return normalize_denial(std::move(c)); }

Clause clause_of(const Denial& d) {
	Clause c;
	for (Lit l : d) c.push_back(~l);
	return normalize_clause(c);
}

class Replay {
public:
	Replay(const Trace& t, const CAProgram& p, const OracleLimits& lim, bool strategy)
	    : t_(t), p_(p), lim_(lim), strategy_(strategy), abs_(p.asp_abstraction()), m_(abs_.num_atoms()) {
		for (const Clause& c : clausify(abs_)) {
			if (c.empty()) empty_clause_ = true;
			base_.insert(normalize_clause(c));
		}
	}

	ValidationReport run() {
		ValidationReport r;
		if (t_.num_atoms != abs_.num_atoms()) {
			r.ok = false;
			r.reason = "trace has " + std::to_string(t_.num_atoms) + " atoms, program has " +
			           std::to_string(abs_.num_atoms());
			return r;
		}
		for (std::size_t i = 0; i < t_.steps.size(); ++i) {
			try {
				step(i);
			} catch (const Violation& v) {
				return {false, i, v.reason};
			} catch (const Error& e) {
				return {false, i, e.what()};
			}
		}
		if (t_.steps.empty() || !t_.complete) return r;
		try {
			if (!fail_) {
				if (open_blocking_) throw Violation{"run ends between Answer and its blocking Learn"};
				semi_terminal();
			}
		} catch (const Violation& v) {
			return {false, t_.steps.size(), "final state: " + v.reason};
		} catch (const Error& e) {
			return {false, t_.steps.size(), std::string("final state: ") + e.what()};
		}
		return r;
	}

private:
	[[noreturn]] static void fail(const std::string& why) { throw Violation{why}; }

	StateDigest now() const { return digest(m_, gamma_, lambda_, fail_); }

	void check_digest(const StateDigest& d, const char* which) const {
		if (!d.present) return;
		if (!(d == now())) fail(std::string(which) + "-state digest mismatch");
	}

	// K_{P,M} under the trace semantics; exhaustive when small, fd-solver otherwise.
	bool k_feasible(const Record& m) const {
		std::vector<Term> k = p_.range_constraints;
		for (Atom c : p_.constraints) {
			if (m.is_true(Lit::pos(c))) k.push_back(p_.gamma.at(c));
			else if (t_.semantics == Semantics::Full && m.is_true(Lit::neg(c))) k.push_back(complement(p_.gamma.at(c)));
		}
		if (small_csp()) return csp_feasible_exhaustive(p_, k, lim_);
		const SolveResult res = solve(build_csp(p_, m, t_.semantics), SolveMode::First);
		if (res.solutions.empty() && !res.exhausted) fail("csp check exceeded its budget");
		return !res.solutions.empty();
	}

	bool small_csp() const {
		std::uint64_t total = 1;
		for (const VariableDecl& v : p_.variables) {
			if (v.upper < v.lower) return true;
			const auto size = static_cast<std::uint64_t>(v.upper - v.lower) + 1;
			if (size > lim_.max_assignments || total * size > lim_.max_assignments) return false;
			total *= size;
		}
		return true;
	}

	bool small_asp() const { return abs_.num_atoms() <= lim_.max_atoms; }

	std::vector<Denial> learned() const {
		std::vector<Denial> all = gamma_;
		all.insert(all.end(), lambda_.begin(), lambda_.end());
		return all;
	}

	bool known(const Denial& d) const {
		const Denial n = normalize_denial(d);
		auto in = [&n](const std::vector<Denial>& s) {
			return std::any_of(s.begin(), s.end(), [&n](const Denial& x) { return normalize_denial(x) == n; });
		};
		return in(gamma_) || in(lambda_);
	}

	bool has_clause(const Clause& c) const {
		const Clause n = normalize_clause(c);
		if (base_.count(n)) return true;
		for (const Denial& d : learned())
			if (clause_of(d) == n) return true;
		return false;
	}

	// Every answer set of P[Gamma u Lambda] (trace semantics) satisfies the denial.
	bool entails(const Denial& d) const {
		bool constructive = !d.empty();
		Record k(abs_.num_atoms());
		for (Lit l : d) {
			if (l.atom() >= abs_.num_atoms()) fail("denial literal out of range");
			if (!p_.is_constraint(l.atom()) || (l.negative() && t_.semantics == Semantics::Weak)) constructive = false;
			else k.push(l);
		}
		if (constructive && k.consistent() && !k_feasible(k)) return true;
		if (!small_asp()) fail("entailment of a non-constructive denial is not checkable at this size");
		for (const Interpretation& x : enumerate_answer_sets(p_, t_.semantics, learned(), lim_)) {
			const bool violated = std::all_of(d.begin(), d.end(), [&x](Lit l) { return x[l.atom()] == l.positive(); });
			if (violated) return false;
		}
		return true;
	}

	// P[Gamma u Lambda] asp-entails l with respect to M.
	bool asp_entails(Lit l) const {
		if (empty_clause_) return true;
		if (!small_asp()) fail("ASP-Propagate is not checkable at this size");
		RegularProgram q = abs_;
		for (const Denial& d : learned()) q.add_denial(d);
		for (const Interpretation& x : enumerate_answer_sets_bruteforce(q, lim_.max_atoms)) {
			const bool extends = std::all_of(m_.entries().begin(), m_.entries().end(),
			                                 [&x](const RecordEntry& e) { return x[e.lit.atom()] == e.lit.positive(); });
			if (extends && x[l.atom()] != l.positive()) return false;
		}
		return true;
	}

	void semi_terminal() const {
		if (!m_.consistent()) fail("state is inconsistent");
		if (!m_.complete()) fail("state is not complete (Decide applies)");
		Interpretation x(abs_.num_atoms());
		for (Atom a = 0; a < x.size(); ++a) x[a] = m_.value(a) > 0;
		for (const Clause& c : base_)
			if (!std::any_of(c.begin(), c.end(), [&x](Lit l) { return x[l.atom()] == l.positive(); }))
				fail("a program clause is falsified (Unit Propagate applies)");
		for (const Denial& d : learned())
			if (std::all_of(d.begin(), d.end(), [&x](Lit l) { return x[l.atom()] == l.positive(); }))
				fail("a learned denial is violated (Unit Propagate applies)");
		const Interpretation u = greatest_unfounded_set(abs_, m_);
		for (Atom a = 0; a < u.size(); ++a)
			if (u[a] && x[a]) fail("true atom " + p_.display(a) + " is unfounded");
		if (!k_feasible(m_)) fail("csp-abstraction is infeasible (CP-Propagate applies)");
	}

	void conformance(std::size_t i) const {
		const TraceStep& s = t_.steps[i];
		if (!strategy_) return;
		const Schema sc = t_.schema;
		if (s.rule == "Restart" && sc != Schema::Grey) fail(to_string(sc) + "-box never applies Restart");
		if (s.rule == "Restart_t" && sc != Schema::Black) fail(to_string(sc) + "-box never applies Restart_t");
		if (sc == Schema::Clear) return;
		if ((s.rule == "Restart" || s.rule == "Restart_t") && (i == 0 || t_.steps[i - 1].rule != "Learn" ||
		                                                      !(t_.steps[i - 1].blocking || (i >= 2 && t_.steps[i - 2].rule == "CP-Propagate"))))
			fail("restart must immediately follow a Learn after CP-Propagate or an answer");
		if (s.rule == "Learn" && i + 1 < t_.steps.size()) {
			const std::string& next = t_.steps[i + 1].rule;
			if (next != "Restart" && next != "Restart_t") fail("Learn must be followed immediately by a restart");
		}
		if (s.rule == "Learn" && !s.blocking && (i == 0 || t_.steps[i - 1].rule != "CP-Propagate"))
			fail("Learn must immediately follow CP-Propagate");
		if (s.rule == "CP-Propagate" && !m_.complete() && !m_.empty())
			fail("CP-Propagate on a partial assignment");
	}

	void step(std::size_t i) {
		const TraceStep& s = t_.steps[i];
		if (fail_) fail("step after Failstate");
		check_digest(s.pre, "pre");
		const std::string& r = s.rule;
		if ((r == "Restart" || r == "Restart_t") && !learned_since_restart_)
			fail(r + " without a dedicated preceding Learn");
		if (open_blocking_ && !(r == "Learn" && s.blocking)) fail("Answer must be followed by its blocking Learn");
		conformance(i);
		auto need_lit = [&]() -> Lit {
			if (!s.lit) fail(r + " without a literal");
			if (s.lit->atom() >= abs_.num_atoms()) fail("literal out of range");
			return *s.lit;
		};
		if (r == "Decide") {
			const Lit l = need_lit();
			if (!m_.consistent()) fail("Decide on an inconsistent state");
			if (m_.assigned(l.atom())) fail(lit_name(p_, l) + " is already assigned");
			m_.push(l, true);
		} else if (r == "UnitPropagate") {
			const Lit l = need_lit();
			if (!m_.consistent()) fail("UnitPropagate on an inconsistent state");
			if (m_.contains(l)) fail(lit_name(p_, l) + " is already in M");
			if (std::find(s.clause.begin(), s.clause.end(), l) == s.clause.end()) fail("literal is not in its clause");
			for (Lit c : s.clause)
				if (c != l && !m_.is_false(c)) fail("clause literal " + lit_name(p_, c) + " is not false");
			if (!has_clause(s.clause)) fail("clause is not in the clausification of the program and learned denials");
			m_.push(l);
		} else if (r == "Unfounded") {
			const Lit l = need_lit();
			if (!m_.consistent()) fail("Unfounded on an inconsistent state");
			if (l.positive()) fail("Unfounded adds a negative literal");
			if (m_.contains(l)) fail(lit_name(p_, l) + " is already in M");
			Interpretation u(abs_.num_atoms());
			for (Atom a : s.unfounded) {
				if (a >= u.size()) fail("unfounded atom out of range");
				u[a] = true;
			}
			if (!u[l.atom()]) fail("atom is not in its unfounded set");
			if (!is_unfounded(abs_, m_, u)) fail("set is not unfounded on M");
			m_.push(l);
		} else if (r == "ASP-Propagate") {
			const Lit l = need_lit();
			if (m_.contains(l)) fail(lit_name(p_, l) + " is already in M");
			if (!asp_entails(l)) fail(lit_name(p_, l) + " is not asp-entailed");
			m_.push(l);
		} else if (r == "CP-Propagate") {
			if (m_.has_bottom()) fail("CP-Propagate on a state already containing bottom");
			if (!m_.consistent()) fail("CP-Propagate on an inconsistent state");
			if (k_feasible(m_)) fail("csp-abstraction has a solution");
			m_.push_bottom();
		} else if (r == "Backtrack") {
			if (m_.consistent()) fail("Backtrack on a consistent state");
			if (!m_.has_decision()) fail("Backtrack without a decision literal");
			m_.backtrack();
		} else if (r == "Fail") {
			if (m_.consistent()) fail("Fail on a consistent state");
			if (m_.has_decision()) fail("Fail with a decision literal in M");
			fail_ = true;
		} else if (r == "Learn" || r == "Learn_t") {
			if (known(s.denial)) fail("denial is not fresh");
			if (s.blocking) {
				if (r != "Learn" || !open_blocking_) fail("blocking Learn without a preceding Answer");
				Denial want;
				for (const auto& e : m_.entries()) want.push_back(e.lit);
				if (normalize_denial(s.denial) != normalize_denial(want)) fail("blocking denial differs from M");
				open_blocking_ = false;
			} else if (!entails(s.denial)) {
				fail("denial is not entailed");
			}
			(r == "Learn" ? gamma_ : lambda_).push_back(s.denial);
			learned_since_restart_ = true;
		} else if (r == "Restart" || r == "Restart_t") {
			if (m_.empty()) fail(r + " on an empty record");
			learned_since_restart_ = false;
			m_.clear();
			if (r == "Restart_t") lambda_.clear();
		} else if (r == "Answer") {
			semi_terminal();
			open_blocking_ = true;
		} else {
			fail("unknown rule " + r);
		}
		if (r == "Answer" && i + 1 == t_.steps.size()) open_blocking_ = false;
		check_digest(s.post, "post");
	}

	const Trace& t_;
	const CAProgram& p_;
	OracleLimits lim_;
	bool strategy_ = true;
	RegularProgram abs_;
	std::set<Clause> base_;
	bool empty_clause_ = false;
	Record m_;
	std::vector<Denial> gamma_;
	std::vector<Denial> lambda_;
	bool fail_ = false;
	bool learned_since_restart_ = false;
	bool open_blocking_ = false;
};

} // namespace

ValidationReport validate_trace(const Trace& t, const CAProgram& p, const OracleLimits& lim, bool check_strategy) {
	return Replay(t, p, lim, check_strategy).run();
}

} // namespace ezcasp
