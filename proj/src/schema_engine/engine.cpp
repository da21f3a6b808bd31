// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cstdlib>
#include <set>

#include "ezcasp/schema_engine.hpp"

namespace ezcasp {

std::string to_string(Schema s) {
	switch (s) {
	case Schema::Black: return "black";
	case Schema::Grey: return "grey";
	default: return "clear";
	}
}

std::string to_string(Semantics s) { return s == Semantics::Weak ? "weak" : "full"; }

std::optional<Schema> parse_schema(const std::string& s) {
	if (s == "black") return Schema::Black;
	if (s == "grey" || s == "gray") return Schema::Grey;
	if (s == "clear") return Schema::Clear;
	return std::nullopt;
}

std::optional<Semantics> parse_semantics(const std::string& s) {
	if (s == "weak") return Semantics::Weak;
	if (s == "full") return Semantics::Full;
	return std::nullopt;
}

std::uint64_t default_step_budget() {
	if (const char* env = std::getenv("EZCASP_STEP_BUDGET")) {
		char* end = nullptr;
		const unsigned long long v = std::strtoull(env, &end, 10);
		if (end != env && *end == '\0' && v > 0) return v;
	}
	return 20'000'000;
}

Denial normalize_denial(Denial d) {
	std::sort(d.begin(), d.end());
	d.erase(std::unique(d.begin(), d.end()), d.end());
	return d;
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void mix(std::uint64_t& h, std::uint64_t v) {
	for (int i = 0; i < 8; ++i) {
		h ^= (v >> (8 * i)) & 0xffu;
		h *= kFnvPrime;
	}
}

Denial projection(const Record& m, const CAProgram& p, Semantics s) {
	Denial d;
	for (Atom c : p.constraints) {
		if (m.is_true(Lit::pos(c))) d.push_back(Lit::pos(c));
		else if (s == Semantics::Full && m.is_true(Lit::neg(c))) d.push_back(Lit::neg(c));
	}
	return normalize_denial(d);
}

Clause clause_of(const Denial& d) {
	Clause c;
	for (Lit l : d) c.push_back(~l);
	return c;
}

} // namespace

StateDigest digest(const Record& m, const std::vector<Denial>& gamma, const std::vector<Denial>& lambda, bool fail) {
	StateDigest d;
	d.fail = fail;
	if (fail) return d;
	d.m = m.size() + (m.has_bottom() ? 1 : 0);
	d.decisions = m.decision_count();
	d.gamma = gamma.size();
	d.lambda = lambda.size();
	std::uint64_t h = kFnvOffset;
	for (const auto& e : m.entries()) mix(h, (std::uint64_t{e.lit.code()} << 1) | (e.decision ? 1u : 0u));
	mix(h, m.has_bottom() ? 0xb0u : 0u);
	for (const auto* set : {&gamma, &lambda}) {
		std::uint64_t sum = 0;
		for (const Denial& den : *set) {
			std::uint64_t dh = kFnvOffset;
			for (Lit l : den) mix(dh, l.code());
			sum += dh;
		}
		mix(h, sum);
	}
	d.hash = h;
	return d;
}

Denial cp_entailed_denial(const Record& m, const CAProgram& p, Semantics s) {
	const CSPInstance k = build_csp(p, m, s);
	if (!solve(k, SolveMode::First).solutions.empty()) throw Error("cp_entailed_denial: csp-abstraction is feasible");
	return projection(m, p, s);
}

namespace {

struct BudgetExceeded {};

class Engine {
public:
	Engine(const CAProgram& p, const SchemaConfig& cfg)
	    : p_(p), cfg_(cfg), abs_(p.asp_abstraction()), base_(clausify(abs_)), m_(abs_.num_atoms()) {
		budget_ = cfg.step_budget ? cfg.step_budget : default_step_budget();
		out_.trace.schema = cfg.schema;
		out_.trace.semantics = cfg.semantics;
		out_.trace.num_atoms = abs_.num_atoms();
		rebuild_db();
	}

	SolveOutput run() {
		try {
			search();
		} catch (const BudgetExceeded&) {
			out_.outcome = Outcome::Budget;
			out_.trace.complete = false;
		}
		if (out_.outcome != Outcome::Budget) out_.outcome = out_.answers.empty() ? Outcome::Unsat : Outcome::Sat;
		for (const Denial& d : gamma_)
			if (!blocking_.count(d)) out_.gamma.push_back(d);
		return std::move(out_);
	}

private:
	// Trace plumbing
	StateDigest now() const { return digest(m_, gamma_, lambda_, fail_); }

	TraceStep& begin(const std::string& rule) {
		if (++out_.stats.steps > budget_) throw BudgetExceeded{};
		pending_ = TraceStep{};
		pending_.rule = rule;
		if (cfg_.record_trace) pending_.pre = now();
		return pending_;
	}

	void end() {
		if (!cfg_.record_trace) return;
		pending_.post = now();
		out_.trace.steps.push_back(std::move(pending_));
	}

	void rebuild_db() {
		db_ = ClauseDb(abs_.num_atoms());
		for (const Clause& c : base_) {
			if (c.empty()) empty_clause_ = true;
			db_.add(c);
		}
		for (const Denial& d : gamma_) db_.add(clause_of(d));
		for (const Denial& d : lambda_) db_.add(clause_of(d));
		full_scan_ = true;
	}

	// Basic rules
	void push(const std::string& rule, Lit l, bool decision = false) {
		TraceStep& s = begin(rule);
		s.lit = l;
		if (rule == "UnitPropagate") s.clause = db_.clauses()[unit_clause_];
		if (rule == "Unfounded") s.unfounded = unfounded_;
		m_.push(l, decision);
		end();
		if (decision) {
			++out_.stats.decisions;
			++since_check_;
		} else {
			++out_.stats.propagations;
		}
	}

	void check_clause(std::uint32_t i) {
		Lit u;
		switch (db_.status(i, m_, &u)) {
		case ClauseDb::Status::Unit:
			unit_clause_ = i;
			push("UnitPropagate", u);
			break;
		case ClauseDb::Status::Falsified:
			unit_clause_ = i;
			push("UnitPropagate", db_.clauses()[i].back());
			break;
		default: break;
		}
	}

	/// Unit Propagate to fixpoint; false on conflict.
	bool units() {
		if (full_scan_) {
			full_scan_ = false;
			for (std::uint32_t i = 0; i < db_.clauses().size() && m_.consistent(); ++i) check_clause(i);
		}
		while (m_.consistent() && qhead_ < m_.size()) {
			const Lit l = m_.entries()[qhead_++].lit;
			for (std::uint32_t i : db_.occurrences(~l)) {
				if (!m_.consistent()) break;
				check_clause(i);
			}
		}
		return m_.consistent();
	}

	/// One round of Unfounded; true if anything was added.
	bool unfounded() {
		const Interpretation u = greatest_unfounded_set(abs_, m_);
		unfounded_.clear();
		for (Atom a = 0; a < u.size(); ++a)
			if (u[a] && m_.value(a) >= 0) unfounded_.push_back(a);
		if (unfounded_.empty()) return false;
		for (Atom a : unfounded_) {
			if (m_.value(a) < 0) continue;
			push("Unfounded", Lit::neg(a));
			if (!m_.consistent()) break;
		}
		return true;
	}

	bool propagate() {
		for (;;) {
			if (!units()) return false;
			if (!unfounded()) return true;
			if (!m_.consistent()) return false;
		}
	}

	void backtrack_or_fail() {
		if (m_.has_decision()) {
			begin("Backtrack");
			m_.backtrack();
			end();
			++out_.stats.backtracks;
			qhead_ = m_.size() - 1;
		} else {
			begin("Fail");
			fail_ = true;
			end();
		}
	}

	void learn(const Denial& d, bool blocking) {
		TraceStep& s = begin("Learn");
		s.denial = d;
		s.blocking = blocking;
		gamma_.push_back(d);
		known_.insert(d);
		if (blocking) blocking_.insert(d);
		end();
		++out_.stats.learned;
		db_.add(clause_of(d));
		full_scan_ = true;
	}

	void restart() {
		out_.stats.lambda_at_restart.push_back(lambda_.size());
		++out_.stats.restarts;
		if (cfg_.schema == Schema::Black) {
			const bool had_lambda = !lambda_.empty();
			begin("Restart_t");
			m_.clear();
			lambda_.clear();
			end();
			if (had_lambda) rebuild_db();
			full_scan_ = true;
		} else {
			begin("Restart");
			m_.clear();
			end();
			full_scan_ = true;
		}
		qhead_ = 0;
		since_check_ = 0;
	}

	bool feasible(const CSPInstance& k) {
		++out_.stats.csp_checks;
		const SolveResult r = solve(k, SolveMode::First);
		if (!r.solutions.empty()) return true;
		if (!r.exhausted) throw BudgetExceeded{};
		return false;
	}

	void cp_conflict() {
		begin("CP-Propagate");
		m_.push_bottom();
		end();
		const Denial r = projection(m_, p_, cfg_.semantics);
		const bool learnable = !r.empty() && !known_.count(r);
		if (learnable) learn(r, false);
		if (learnable && cfg_.schema != Schema::Clear) restart();
	}

	void report(const CSPInstance& k) {
		std::size_t want = 0;
		if (cfg_.limit) want = cfg_.limit - out_.answers.size();
		if (cfg_.alpha_limit) want = want ? std::min(want, cfg_.alpha_limit) : cfg_.alpha_limit;
		const SolveResult r = solve(k, SolveMode::Enumerate, want);
		if (!r.exhausted && (want == 0 || r.solutions.size() < want)) throw BudgetExceeded{};
		Interpretation atoms(abs_.num_atoms());
		for (Atom a = 0; a < atoms.size(); ++a) atoms[a] = m_.value(a) > 0;
		for (const Evaluation& e : r.solutions) out_.answers.push_back({atoms, e});
		if (cfg_.record_trace) {
			TraceStep s;
			s.rule = "Answer";
			s.pre = s.post = now();
			out_.trace.steps.push_back(std::move(s));
		}
	}

	Denial blocking_denial() const {
		Denial d;
		for (Atom a = 0; a < abs_.num_atoms(); ++a) d.push_back(m_.value(a) > 0 ? Lit::pos(a) : Lit::neg(a));
		return d;
	}

	void search() {
		if (empty_clause_) {
			if (abs_.num_atoms() == 0) {
				out_.trace.complete = false;
				return;
			}
			push("ASP-Propagate", Lit::pos(0));
			push("ASP-Propagate", Lit::neg(0));
			backtrack_or_fail();
			return;
		}
		if (!feasible(build_csp(p_, m_, cfg_.semantics))) {
			begin("CP-Propagate");
			m_.push_bottom();
			end();
			backtrack_or_fail();
			return;
		}
		for (;;) {
			if (fail_) return;
			if (!propagate()) {
				backtrack_or_fail();
				continue;
			}
			const bool complete = m_.complete();
			const bool partial_check = cfg_.schema == Schema::Clear && since_check_ >= std::max<std::size_t>(1, cfg_.check_frequency);
			if (complete || partial_check) {
				since_check_ = 0;
				if (complete) ++out_.stats.complete_candidates;
				const CSPInstance k = build_csp(p_, m_, cfg_.semantics);
				if (!feasible(k)) {
					cp_conflict();
					continue;
				}
				if (complete) {
					report(k);
					if (cfg_.limit && out_.answers.size() >= cfg_.limit) return;
					if (abs_.num_atoms() == 0) return;
					learn(blocking_denial(), true);
					if (cfg_.schema != Schema::Clear) restart();
					continue;
				}
			}
			decide();
		}
	}

	void decide() {
		Atom a = 0;
		while (m_.assigned(a)) ++a;
		push("Decide", cfg_.negative_first ? Lit::neg(a) : Lit::pos(a), true);
	}

	const CAProgram& p_;
	SchemaConfig cfg_;
	RegularProgram abs_;
	std::vector<Clause> base_;
	ClauseDb db_;
	Record m_;
	std::vector<Denial> gamma_;
	std::vector<Denial> lambda_;
	std::set<Denial> known_;
	std::set<Denial> blocking_;
	bool fail_ = false;
	bool empty_clause_ = false;
	bool full_scan_ = true;
	std::size_t qhead_ = 0;
	std::size_t since_check_ = 0;
	std::uint32_t unit_clause_ = 0;
	std::vector<Atom> unfounded_;
	std::uint64_t budget_ = 0;
	TraceStep pending_;
	SolveOutput out_;
};

} // namespace

SolveOutput solve_ca(const CAProgram& p, const SchemaConfig& cfg) { return Engine(p, cfg).run(); }

} // namespace ezcasp
