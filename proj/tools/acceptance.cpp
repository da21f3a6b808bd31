// Runs the eight acceptance criteria and prints one PASS/FAIL line each.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "csp_fixtures.hpp"
#include "ezcasp/cli.hpp"
#include "ezcasp/oracle.hpp"
#include "helpers.hpp"
#include "mutants.hpp"
#include "programs.hpp"

using namespace ezcasp;
using namespace fixtures;

namespace {

constexpr Schema kSchemas[] = {Schema::Black, Schema::Grey, Schema::Clear};
constexpr Semantics kSemantics[] = {Semantics::Weak, Semantics::Full};

class Failures {
public:
	void expect(bool ok, const std::string& what) {
		if (!ok) list_.push_back(what);
	}
	bool ok() const { return list_.empty(); }
	std::string summary() const {
		std::string s;
		for (std::size_t i = 0; i < list_.size() && i < 3; ++i) s += (i ? "; " : "") + list_[i];
		if (list_.size() > 3) s += "; +" + std::to_string(list_.size() - 3) + " more";
		return s;
	}

private:
	std::vector<std::string> list_;
};

SolveOutput run(const CAProgram& p, Schema s, Semantics sem, bool trace = false) {
	SchemaConfig c;
	c.schema = s;
	c.semantics = sem;
	c.limit = 0;
	c.alpha_limit = 1;
	c.record_trace = trace;
	return solve_ca(p, c);
}

std::set<std::set<std::string>> atom_sets(const CAProgram& p, const std::vector<ExtendedAnswerSet>& answers) {
	std::set<std::set<std::string>> out;
	for (const auto& a : answers) {
		std::set<std::string> s;
		for (const auto& n : names(p, a.atoms))
			if (n.rfind("csp", 0) != 0) s.insert(n);
		out.insert(s);
	}
	return out;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// criterion 1

void worked_examples(Failures& f) {
	const auto start = std::chrono::steady_clock::now();
	{
		RegularProgram p;
		testutil::rule(p, "switch", {}, {}, {"switch"});
		testutil::rule(p, "lightOn", {"switch"}, {"am"});
		testutil::rule(p, "", {}, {"lightOn"});
		testutil::rule(p, "am", {}, {}, {"am"});
		const auto as = enumerate_answer_sets_bruteforce(p);
		f.expect(as.size() == 1 && as[0] == testutil::interp(p, {"switch", "lightOn"}), "(a) light ASP program");
	}
	{
		const CAProgram p = compile("a :- not not a.");
		for (Schema s : kSchemas)
			f.expect(atom_sets(p, run(p, s, Semantics::Weak).answers) == std::set<std::set<std::string>>{{}, {"a"}},
			         "(b) not not a");
	}
	{
		const CAProgram p1 = light_program();
		for (Schema s : kSchemas) {
			SchemaConfig c;
			c.schema = s;
			c.semantics = Semantics::Full;
			c.limit = 0;
			const SolveOutput o = solve_ca(p1, c);
			f.expect(o.answers.size() == 12 &&
			             atom_sets(p1, o.answers) == std::set<std::set<std::string>>{{"switch", "lightOn", "|x >= 12|"}},
			         "(c) light CA program under " + to_string(s));
		}
		const CAProgram ez = encoding("light.ez");
		SchemaConfig c;
		c.limit = 0;
		f.expect(solve_ca(ez, c).answers.size() == 12, "(c) light ez-program");
	}
	{
		const CAProgram p = encoding("night_am.ez");
		for (Schema s : kSchemas) {
			const auto full = atom_sets(p, run(p, s, Semantics::Full).answers);
			const auto weak = atom_sets(p, run(p, s, Semantics::Weak).answers);
			f.expect(full.size() == 3 && weak.size() == 4 && weak.count({"night", "|x < 6|"}) && !full.count({"night", "|x < 6|"}),
			         "(d) night/am under " + to_string(s));
		}
	}
	{
		const CAProgram p = encoding("weak_vs_full.ez");
		for (Schema s : kSchemas) {
			f.expect(atom_sets(p, run(p, s, Semantics::Weak).answers) == std::set<std::set<std::string>>{{}},
			         "(e) weak SAT under " + to_string(s));
			f.expect(run(p, s, Semantics::Full).outcome == Outcome::Unsat, "(e) full UNSAT under " + to_string(s));
		}
	}
	{
		const CAProgram p = encoding("riddle.ez");
		for (Schema s : kSchemas) {
			SchemaConfig c;
			c.schema = s;
			c.limit = 0;
			const SolveOutput o = solve_ca(p, c);
			f.expect(o.answers.size() == 1 && value_of(o.answers[0].alpha, "age(1)") == 12 &&
			             value_of(o.answers[0].alpha, "age(2)") == 9 && value_of(o.answers[0].alpha, "age(3)") == 6,
			         "(f) riddle under " + to_string(s));
		}
	}
	f.expect(seconds_since(start) < 5.0, "slower than 5 s");
}

// criteria 2 to 4

struct CorpusResult {
	Failures schemas, oracle, traces;
	std::size_t programs = 0, skipped = 0, traces_checked = 0;
	double seconds = 0;
};

CorpusResult corpus(std::size_t n) {
	CorpusResult r;
	const auto start = std::chrono::steady_clock::now();
	for (std::uint64_t seed = 0; seed < n; ++seed) {
		const CAProgram p = random_program(seed);
		++r.programs;
		for (Semantics sem : kSemantics) {
			const std::string tag = "seed " + std::to_string(seed) + " " + to_string(sem);
			std::set<Interpretation> first;
			for (Schema s : kSchemas) {
				const SolveOutput o = run(p, s, sem, true);
				std::set<Interpretation> got;
				for (const auto& e : o.answers) {
					r.schemas.expect(verify_extended(p, e, sem), tag + " " + to_string(s) + ": unverified answer");
					got.insert(e.atoms);
				}
				r.schemas.expect(o.outcome != Outcome::Budget, tag + ": budget");
				if (s == Schema::Black) first = got;
				r.schemas.expect(got.empty() == first.empty(), tag + ": SAT/UNSAT disagreement");
				r.schemas.expect(got == first, tag + ": answer sets differ");
				const ValidationReport v = validate_trace(o.trace, p);
				++r.traces_checked;
				r.traces.expect(v.ok, tag + " " + to_string(s) + " step " + std::to_string(v.index) + ": " + v.reason);
			}
			try {
				const auto expected = enumerate_answer_sets(p, sem);
				r.oracle.expect(std::set<Interpretation>(expected.begin(), expected.end()) == first, tag + ": oracle mismatch");
			} catch (const Error&) {
				++r.skipped;
			}
		}
	}
	r.seconds = seconds_since(start);
	return r;
}

void encoding_traces(Failures& f, std::size_t& checked) {
	for (const char* name : {"light.ez", "night_am.ez", "weak_vs_full.ez", "riddle.ez", "wseq_toy.ez", "is_toy.ez", "rf_toy.ez"}) {
		const CAProgram p = encoding(name);
		for (Schema s : kSchemas)
			for (Semantics sem : kSemantics) {
				const ValidationReport v = validate_trace(run(p, s, sem, true).trace, p);
				++checked;
				f.expect(v.ok, std::string(name) + " " + to_string(s) + " " + to_string(sem) + ": " + v.reason);
			}
	}
}

std::size_t mutants(Failures& f) {
	const CAProgram light = light_program();
	const CAProgram loop = random_program(199);
	const auto suite = mutant_suite(light, loop);
	for (const Mutant& m : suite) {
		const ValidationReport v = validate_trace(m.trace, *m.program);
		f.expect(!v.ok && v.index == m.index, "mutant accepted: " + m.name);
	}
	return suite.size();
}

// criterion 6

void fd_solver(Failures& f) {
	std::mt19937_64 rng(2024);
	std::map<std::string, int> seen;
	for (int round = 0; round < 60; ++round)
		for (const std::string& name : csp_fixtures::kGlobals) {
			const CSPInstance c = csp_fixtures::random_global_instance(rng, name);
			const SolveResult got = solve(c, SolveMode::Enumerate);
			f.expect(got.exhausted && got.solutions == csp_fixtures::brute_force(c), "enumeration differs on " + to_string(c.constraints[0]));
			++seen[name];
		}
	for (const auto& name : csp_fixtures::kGlobals) f.expect(seen[name] >= 50, name + " sampled fewer than 50 times");

	std::mt19937_64 crng(7);
	csp_fixtures::RandomCsp g{crng, {csp_fixtures::sym("x"), csp_fixtures::sym("y"), csp_fixtures::sym("z")}};
	std::uniform_int_distribution<int> v(-5, 5);
	for (int i = 0; i < 100000; ++i) {
		const Term c = g.primitive();
		const Evaluation e = csp_fixtures::eval({{"x", v(crng)}, {"y", v(crng)}, {"z", v(crng)}});
		if (satisfied(c, e) == satisfied(complement(c), e)) {
			f.expect(false, "complement of " + to_string(c));
			break;
		}
	}

	std::vector<std::pair<std::string, std::pair<int, int>>> vars;
	for (const char* x : {"s", "e", "n", "d", "m", "o", "r", "y"}) vars.push_back({x, {0, 9}});
	const CSPInstance smm = csp_fixtures::instance(
	    vars, {"all_different([s,e,n,d,m,o,r,y])", "s > 0", "m > 0",
	           "1000*s + 100*e + 10*n + d + 1000*m + 100*o + 10*r + e = 10000*m + 1000*o + 100*n + 10*e + y"});
	const auto start = std::chrono::steady_clock::now();
	const SolveResult r = solve(smm, SolveMode::Enumerate);
	f.expect(seconds_since(start) < 5.0, "SEND+MORE=MONEY slower than 5 s");
	f.expect(r.count == 1 && r.solutions[0] == csp_fixtures::eval({{"s", 9}, {"e", 5}, {"n", 6}, {"d", 7}, {"m", 1},
	                                                                {"o", 0}, {"r", 8}, {"y", 2}}),
	         "SEND+MORE=MONEY");
}

// criterion 7

std::string expand_one(const std::string& list, const std::string& facts) {
	const EzProgram g = ground(preprocess(parse("cspdomain(fd). " + facts + " required(all_different(" + list + ")).")));
	const EzProgram e = expand_lists(g, collect_variables(g));
	for (const auto& r : e.rules)
		if (r.head.kind == Head::Kind::Atom && r.head.atom.reserved == Reserved::Required)
			return to_string(r.head.atom.term.args[0].args[0]);
	return {};
}

void appendix(Failures& f) {
	const std::string vars = "cspvar(v(1),0,3). cspvar(v(2),0,3). cspvar(v(3),0,3). cspvar(w(a,1),0,3). "
	                         "cspvar(w(a,2),0,3). cspvar(w(b,1),0,3).";
	f.expect(expand_one("[w(a)/2]", vars) == "[w(a,1),w(a,2)]", "[w(a)/2]");
	f.expect(expand_one("[v/1]", vars) == "[v(1),v(2),v(3)]", "[v/1]");
	f.expect(expand_one("[r''/2]", "r''(a,3). r''(b,1). r''(c,2).") == "[3,1,2]", "[r''/2]");

	const CAProgram p = encoding("light.ez");
	SchemaConfig c;
	const SolveOutput o = solve_ca(p, c);
	std::string clp = o.answers.empty() ? "" : emit_clp(p, o.answers[0].atoms);
	std::string squeezed;
	for (char ch : clp)
		if (ch != ' ') squeezed += ch;
	f.expect(squeezed == "solve([x,V_x]):-V_x>=0,V_x<=23,V_x>=12,labeling([V_x]).", "CLP export: " + clp);
}

// criterion 8

struct Facts {
	std::map<std::string, std::vector<std::vector<Term>>> by_name;

	Facts(const CAProgram& p, const Interpretation& x) {
		for (Atom a = 0; a < x.size(); ++a)
			if (x[a] && p.kind[a] == AtomKind::Regular) by_name[p.atom_term[a].name].push_back(p.atom_term[a].args);
	}
	const std::vector<std::vector<Term>>& operator[](const std::string& n) const {
		static const std::vector<std::vector<Term>> none;
		auto it = by_name.find(n);
		return it == by_name.end() ? none : it->second;
	}
	std::int64_t number(const std::string& n) const { return (*this)[n].at(0).at(0).number; }
};

std::string key(const Term& t) { return to_string(t); }

void check_wseq(const CAProgram& p, const ExtendedAnswerSet& e, Failures& f) {
	const Facts F(p, e.atoms);
	std::map<std::string, std::pair<std::int64_t, std::int64_t>> wc;
	for (const auto& a : F["leafWeightCardinality"]) wc[key(a[0])] = {a[1].number, a[2].number};
	std::map<std::string, std::int64_t> cost;
	for (const auto& a : F["leafCost"]) cost[key(a[0])] = a[1].number;
	std::map<std::int64_t, std::string> at;
	std::map<std::string, int> placed;
	for (const auto& a : F["leafPos"]) {
		f.expect(!at.count(a[1].number), "wseq: two leaves at one location");
		at[a[1].number] = key(a[0]);
		++placed[key(a[0])];
	}
	for (const auto& a : F["leaf"]) f.expect(placed[key(a[0])] == 1, "wseq: leaf not placed exactly once");
	std::set<std::int64_t> green;
	for (const auto& a : F["posColor"])
		if (key(a[1]) == "green") green.insert(a[0].number);
	std::int64_t total = 0;
	for (const auto& a : F["prev"]) {
		const std::int64_t q = a[0].number, pos = a[1].number;
		const std::string l1 = at.at(q), l2 = at.at(pos);
		const std::int64_t right = wc[l2].first + wc[l2].second, left = wc[l1].first + cost[l2];
		const bool is_green = right < left;
		const std::int64_t c = is_green ? right : left;
		f.expect(green.count(pos) == static_cast<std::size_t>(is_green), "wseq: colour of position " + std::to_string(pos));
		f.expect(value_of(e.alpha, "posCost(" + std::to_string(pos) + ")") == c, "wseq: cost of position " + std::to_string(pos));
		total += c;
	}
	f.expect(total <= F.number("max_total_weight"), "wseq: total cost " + std::to_string(total) + " above m");
}

void check_is(const CAProgram& p, const ExtendedAnswerSet& e, Failures& f) {
	const Facts F(p, e.atoms);
	struct Job {
		std::int64_t st = 0, len = 0, dl = 0, imp = 0, inst = -1;
	};
	std::map<std::string, Job> jobs;
	for (const auto& a : F["job_len"]) jobs[key(a[0])].len = a[1].number;
	for (const auto& a : F["deadline"]) jobs[key(a[0])].dl = a[1].number;
	for (const auto& a : F["importance"]) jobs[key(a[0])].imp = a[1].number;
	for (const auto& a : F["job_device"]) jobs[key(a[0])].st = value_of(e.alpha, "st(" + key(a[1]) + "," + key(a[0]) + ")");
	for (const auto& a : F["on_instance"]) {
		f.expect(jobs[key(a[0])].inst < 0, "is: job on two instances");
		jobs[key(a[0])].inst = a[1].number;
	}
	const std::int64_t capacity = F["instances"].at(0).at(1).number;
	std::int64_t penalty = 0, end = 0;
	for (const auto& [name, j] : jobs) {
		f.expect(j.inst >= 0, "is: job " + name + " without an instance");
		penalty += std::max<std::int64_t>(0, j.st + j.len - j.dl) * j.imp;
		end = std::max(end, j.st + j.len);
		for (const auto& [other, k] : jobs)
			if (name < other && j.inst == k.inst)
				f.expect(j.st + j.len <= k.st || k.st + k.len <= j.st, "is: " + name + " and " + other + " overlap");
	}
	for (std::int64_t t = 0; t < end; ++t) {
		std::int64_t running = 0;
		for (const auto& [name, j] : jobs) running += j.st <= t && t < j.st + j.len;
		f.expect(running <= capacity, "is: more jobs than instances at time " + std::to_string(t));
	}
	const std::int64_t k = F.number("max_total_penalty");
	f.expect(penalty <= k, "is: total penalty " + std::to_string(penalty) + " above K");
	f.expect(value_of(e.alpha, "tot_penalty") <= k, "is: tot_penalty above K");
}

void check_rf(const CAProgram& p, const ExtendedAnswerSet& e, Failures& f) {
	const Facts F(p, e.atoms);
	std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> pts, goal;
	for (const auto& a : F["init"]) pts[a[0].number] = {a[1].number, a[2].number};
	for (const auto& a : F["goal"]) goal[a[0].number] = {a[1].number, a[2].number};
	const std::size_t t = F["move"].size();
	f.expect(F["pivot"].size() == t, "rf: not exactly one pivot per move");
	for (std::size_t s = 0; s < t; ++s) {
		const std::vector<Term>* pv = nullptr;
		for (const auto& a : F["pivot"])
			if (a[0].number == static_cast<std::int64_t>(s)) pv = &a;
		if (!pv) {
			f.expect(false, "rf: no pivot at move " + std::to_string(s));
			return;
		}
		const std::int64_t piv = (*pv)[1].number;
		const bool clock = key((*pv)[2]) == "clock";
		const auto [px, py] = pts.at(piv);
		for (auto& [i, xy] : pts) {
			if (i < piv) continue;
			const auto [x, y] = xy;
			xy = clock ? std::make_pair(y - py + px, px - x + py) : std::make_pair(py - y + px, x - px + py);
		}
		std::set<std::pair<std::int64_t, std::int64_t>> distinct;
		for (const auto& [i, xy] : pts) {
			distinct.insert(xy);
			const std::string idx = std::to_string(s + 1) + "," + std::to_string(i);
			f.expect(value_of(e.alpha, "tfoldx(" + idx + ")") == xy.first && value_of(e.alpha, "tfoldy(" + idx + ")") == xy.second,
			         "rf: coordinates of point " + std::to_string(i) + " after move " + std::to_string(s));
		}
		f.expect(distinct.size() == pts.size(), "rf: points coincide after move " + std::to_string(s));
	}
	f.expect(pts == goal, "rf: goal not reached in " + std::to_string(t) + " moves");
}

void benchmarks(Failures& f) {
	const auto start = std::chrono::steady_clock::now();
	const std::pair<const char*, std::function<void(const CAProgram&, const ExtendedAnswerSet&, Failures&)>> toys[] = {
	    {"wseq_toy.ez", check_wseq}, {"is_toy.ez", check_is}, {"rf_toy.ez", check_rf}};
	for (const auto& [name, check] : toys) {
		const CAProgram p = encoding(name);
		std::set<bool> sat;
		for (Schema s : kSchemas) {
			const SolveOutput o = run(p, s, Semantics::Weak);
			f.expect(o.outcome == Outcome::Sat, std::string(name) + " unsolved under " + to_string(s));
			sat.insert(o.answers.empty());
			for (const auto& a : o.answers) check(p, a, f);
		}
		f.expect(sat.size() == 1, std::string(name) + ": schemas disagree");
	}
	f.expect(seconds_since(start) < 60.0, "slower than 60 s");
}

int report(int n, const std::string& title, const Failures& f, const std::string& detail) {
	std::cout << (f.ok() ? "PASS" : "FAIL") << "  " << n << ". " << title;
	if (!detail.empty()) std::cout << " (" << detail << ")";
	if (!f.ok()) std::cout << ": " << f.summary();
	std::cout << std::endl;
	return f.ok() ? 0 : 1;
}

std::string fmt(double secs) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.1f s", secs);
	return buf;
}

} // namespace

int main() {
	int failed = 0;
	auto timed = [](const std::function<void(Failures&)>& fn, Failures& f) {
		const auto start = std::chrono::steady_clock::now();
		try {
			fn(f);
		} catch (const std::exception& e) {
			f.expect(false, std::string("exception: ") + e.what());
		}
		return seconds_since(start);
	};

	Failures f1;
	const double t1 = timed(worked_examples, f1);
	failed += report(1, "worked examples", f1, fmt(t1));

	CorpusResult c;
	try {
		c = corpus(500);
	} catch (const std::exception& e) {
		c.schemas.expect(false, std::string("exception: ") + e.what());
	}
	c.schemas.expect(c.seconds < 120.0, "slower than 2 min");
	failed += report(2, "schema equivalence", c.schemas, std::to_string(c.programs) + " programs, " + fmt(c.seconds));
	c.oracle.expect(c.programs > 0 && c.skipped < c.programs, "nothing compared");
	failed += report(3, "oracle equivalence", c.oracle,
	                 std::to_string(2 * c.programs - c.skipped) + " program/semantics pairs compared, " +
	                     std::to_string(c.skipped) + " beyond oracle bounds");

	std::size_t checked = c.traces_checked, suite = 0;
	const double t4 = timed([&](Failures& f) {
		encoding_traces(f, checked);
		suite = mutants(f);
		f.expect(suite >= 10, "fewer than 10 mutants");
	}, c.traces);
	failed += report(4, "trace validity", c.traces,
	                 std::to_string(checked) + " traces, " + std::to_string(suite) + " mutants, " + fmt(t4));

	Failures f5;
	const double t5 = timed([](Failures& f) {
		const auto t2 = testutil::check_unfounded_characterization(2);
		const auto t1 = testutil::check_denial_filtering(1);
		f.expect(t2.violations == 0, "unfounded-set characterization violated " + std::to_string(t2.violations) + " times");
		f.expect(t1.violations == 0, "denial filtering violated " + std::to_string(t1.violations) + " times");
	}, f5);
	failed += report(5, "unfounded sets and reduct", f5, fmt(t5));

	Failures f6;
	const double t6 = timed(fd_solver, f6);
	failed += report(6, "FD solver", f6, fmt(t6));

	Failures f7;
	const double t7 = timed(appendix, f7);
	failed += report(7, "intensional lists and CLP export", f7, fmt(t7));

	Failures f8;
	const double t8 = timed(benchmarks, f8);
	failed += report(8, "desk-scale benchmarks", f8, fmt(t8));

	return failed ? 1 : 0;
}
