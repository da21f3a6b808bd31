#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "doctest.h"

#include "ezcasp/grounder.hpp"

using namespace ezcasp;

namespace {

EzProgram ground_text(const std::string& text) { return ground(preprocess(parse(text))); }

std::vector<std::string> rule_strings(const EzProgram& p) {
	std::vector<std::string> out;
	for (const auto& r : p.rules) out.push_back(pretty_print(r));
	return out;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
	std::sort(v.begin(), v.end());
	return v;
}

const char* kRiddle = R"(
num_brothers(2) :- not num_brothers(3).
num_brothers(3) :- not num_brothers(2).
index(1). index(2). index(3).
is_brother(B) :- index(B), index(N), num_brothers(N), B <= N.
eldest_brother(1).
youngest_brother(B) :- index(B), num_brothers(B).
cspdomain(fd).
cspvar(age(B),1,80) :- index(B), is_brother(B).
required(age(B1) - age(B2) = 3) :- index(B1), index(B2), is_brother(B1), is_brother(B2), B2 = B1 + 1.
required(age(BE) = age(BY) * 2) :- index(BE), index(BY), eldest_brother(BE), youngest_brother(BY).
required(age(BY) >= 6) :- index(BY), youngest_brother(BY).
)";

std::string expand_one(const std::string& list, const std::string& facts) {
	EzProgram g = ground_text("cspdomain(fd). " + facts + " required(all_different(" + list + ")).");
	auto decls = collect_variables(g);
	EzProgram e = expand_lists(g, decls);
	for (const auto& r : e.rules)
		if (r.head.kind == Head::Kind::Atom && r.head.atom.reserved == Reserved::Required)
			return to_string(r.head.atom.term.args[0].args[0]);
	return {};
}

} // namespace

TEST_CASE("ground: riddle rule yields three ground rules") {
	EzProgram g = ground_text(kRiddle);
	std::vector<std::string> ge6;
	for (const auto& s : rule_strings(g))
		if (s.find("required(geq(age(") == 0) ge6.push_back(s);
	CHECK(ge6 == std::vector<std::string>{
	                 "required(geq(age(1),6)) :- index(1), youngest_brother(1).",
	                 "required(geq(age(2),6)) :- index(2), youngest_brother(2).",
	                 "required(geq(age(3),6)) :- index(3), youngest_brother(3).",
	             });
	auto dom = domain_predicates(preprocess(parse(kRiddle)));
	CHECK(std::find(dom.begin(), dom.end(), "index/1") != dom.end());
	CHECK(std::find(dom.begin(), dom.end(), "is_brother/1") == dom.end());
}

TEST_CASE("ground: ground input is a fixpoint") {
	const char* text = "a :- not b. b :- not a. {c}. :- a, c. d :- c, not not a.";
	EzProgram p = preprocess(parse(text));
	CHECK(ground(p) == p);
	CHECK(ground(ground(p)) == ground(p));
}

TEST_CASE("ground: builtins are evaluated and removed") {
	EzProgram g = ground_text("n(1..4). big(X) :- n(X), X * 2 > 5. s(X, Y) :- n(X), Y = X + 10, Y < 12.");
	auto s = rule_strings(g);
	CHECK(std::count(s.begin(), s.end(), "big(3).") == 1);
	CHECK(std::count(s.begin(), s.end(), "big(4).") == 1);
	CHECK(std::count(s.begin(), s.end(), "s(1,11).") == 1);
	CHECK(s.size() == 7);
}

TEST_CASE("ground: errors") {
	CHECK_THROWS_WITH_AS(ground_text("p(X) :- not q(X)."), doctest::Contains("unsafe variable 'X'"), Error);
	CHECK_THROWS_WITH_AS(ground_text("q(a). p(Y) :- q(X)."), doctest::Contains("1:7"), Error);
	CHECK_THROWS_WITH_AS(ground_text("q(a). p(Y) :- q(X), Y = X + 1."), doctest::Contains("non-integer"), Error);
	CHECK_THROWS_WITH_AS(ground_text("cspdomain(fd). cspvar(x,0,3). required(x > 1). a :- required(x > 1)."),
	                     doctest::Contains("only occur in rule heads"), Error);
}

TEST_CASE("ground: green-colour rule against a brute-force instantiator") {
	const std::string facts =
	    "leaf(a). leaf(b). location(0). location(1). "
	    "leafWeightCardinality(a,1,1). leafWeightCardinality(b,2,0). leafCost(a,2). leafCost(b,1). ";
	const std::string choice = "1 { leafPos(L,N) : location(N) } 1 :- leaf(L). ";
	const std::string green =
	    "posColor(1,green) :- leafPos(L1,0), leafPos(L2,1), leafWeightCardinality(L1,WL,CL), "
	    "leafWeightCardinality(L2,WR,CR), leafCost(L2,W3), W1 = WR + CR, W2 = WL + W3, W1 < W2.";
	EzProgram g = ground_text(facts + choice + green);
	std::vector<std::string> got;
	for (const auto& s : rule_strings(g))
		if (s.rfind("posColor", 0) == 0) got.push_back(s);

	std::map<std::string, std::vector<std::int64_t>> lwc{{"a", {1, 1}}, {"b", {2, 0}}};
	std::map<std::string, std::int64_t> cost{{"a", 2}, {"b", 1}};
	const std::vector<std::string> leaves{"a", "b"};
	const std::vector<std::int64_t> ints{0, 1, 2};
	std::vector<std::string> expected;
	for (const auto& l1 : leaves)
		for (const auto& l2 : leaves)
			for (auto wl : ints)
				for (auto cl : ints)
					for (auto wr : ints)
						for (auto cr : ints)
							for (auto w3 : ints) {
								if (lwc[l1] != std::vector<std::int64_t>{wl, cl}) continue;
								if (lwc[l2] != std::vector<std::int64_t>{wr, cr}) continue;
								if (cost[l2] != w3) continue;
								if (!(wr + cr < wl + w3)) continue;
								auto n = [](std::int64_t v) { return std::to_string(v); };
								expected.push_back("posColor(1,green) :- leafPos(" + l1 + ",0), leafPos(" + l2 +
								                   ",1), leafWeightCardinality(" + l1 + "," + n(wl) + "," + n(cl) +
								                   "), leafWeightCardinality(" + l2 + "," + n(wr) + "," + n(cr) +
								                   "), leafCost(" + l2 + "," + n(w3) + ").");
							}
	CHECK(sorted(got) == sorted(expected));
	CHECK(got.size() == 3);
}

TEST_CASE("ground: random programs against a brute-force instantiator") {
	std::mt19937 rng(7);
	const std::vector<std::string> consts{"a", "b", "c", "1", "2", "3"};
	const std::vector<std::string> vars{"X", "Y", "Z"};
	for (int round = 0; round < 150; ++round) {
		auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
		std::set<std::string> p1, q2;
		std::string text;
		for (int i = 0; i < 4; ++i) {
			const std::string c = pick(consts);
			p1.insert(c);
			text += "p(" + c + "). ";
			const std::string d = pick(consts), e = pick(consts);
			q2.insert(d + "," + e);
			text += "q(" + d + "," + e + "). ";
		}
		const std::string x = pick(vars), y = pick(vars), z = pick(vars);
		const std::string cmp = (rng() % 2) ? "!=" : "=";
		const std::string rule = "h(" + x + "," + z + ") :- p(" + x + "), q(" + y + "," + z + "), not g(" + y + "), " +
		                         x + " " + cmp + " " + y + ".";
		EzProgram g = ground_text(text + rule);
		std::set<std::string> got;
		for (const auto& r : g.rules)
			if (!r.body.empty()) got.insert(pretty_print(r));

		std::set<std::string> expected;
		std::vector<std::string> names{x, y, z};
		std::sort(names.begin(), names.end());
		names.erase(std::unique(names.begin(), names.end()), names.end());
		std::map<std::string, std::string> s;
		std::function<void(std::size_t)> rec = [&](std::size_t i) {
			if (i == names.size()) {
				if (!p1.count(s[x]) || !q2.count(s[y] + "," + s[z])) return;
				if ((cmp == "=") != (s[x] == s[y])) return;
				expected.insert("h(" + s[x] + "," + s[z] + ") :- p(" + s[x] + "), q(" + s[y] + "," + s[z] +
				                "), not g(" + s[y] + ").");
				return;
			}
			for (const auto& c : consts) {
				s[names[i]] = c;
				rec(i + 1);
			}
		};
		rec(0);
		CHECK(got == expected);
	}
}

TEST_CASE("expand_lists: appendix examples") {
	const std::string vars =
	    "cspvar(v(1),0,3). cspvar(v(2),0,3). cspvar(v(3),0,3). cspvar(w(a,1),0,3). cspvar(w(a,2),0,3). "
	    "cspvar(w(b,1),0,3).";
	CHECK(expand_one("[w(a)/2]", vars) == "[w(a,1),w(a,2)]");
	CHECK(expand_one("[v/1]", vars) == "[v(1),v(2),v(3)]");
	CHECK(expand_one("[r''/2]", "r''(a,3). r''(b,1). r''(c,2).") == "[3,1,2]");
	CHECK(expand_one("[r'(a,2)/3]", "r'(a,1,3). r'(a,2,1). r'(b,5,7).") == "[1]");
	CHECK(expand_one("[r'(a)/3]", "r'(a,1,3). r'(a,2,1). r'(b,5,7).") == "[3,1]");

	std::vector<std::string> warnings;
	EzProgram g = ground_text("cspdomain(fd). r(a,1). required(sum([r(b)/2], >=, 0)).");
	EzProgram e = expand_lists(g, collect_variables(g), &warnings);
	CHECK(warnings.size() == 1);
	CHECK_THROWS_WITH_AS(expand_one("[nope/1]", ""), doctest::Contains("unknown name"), Error);
}

TEST_CASE("expand_lists: cumulative abbreviation") {
	const std::string text = "cspdomain(fd). cspvar(st(a),0,5). cspvar(st(b),0,5). cspvar(st(c),0,5). "
	                         "d(a,1). d(b,1). d(c,1). r''(a,3). r''(b,2). r''(c,1). "
	                         "required(cumulative([st/1], [d/2], [r''/2], 4)).";
	CAProgram p = compile(text);
	REQUIRE(p.constraints.size() == 1);
	CHECK(to_string(p.gamma.at(p.constraints[0])) == "cumulative([st(a),st(b),st(c)],[1,1,1],[3,2,1],4)");
}

TEST_CASE("to_ca_program: light domain") {
	const char* text = "cspdomain(fd). cspvar(x,0,23). {switch}. lightOn :- switch, not am. :- not lightOn. {am}. "
	                   "required(x >= 12) :- not am. required(x < 12) :- am.";
	CAProgram p = compile(text);
	REQUIRE(p.constraints.size() == 2);
	CHECK(p.display(p.constraints[0]) == "|x >= 12|");
	CHECK(p.display(p.constraints[1]) == "|x < 12|");
	CHECK(p.range_constraints.size() == 2);
	CHECK(to_string(p.range_constraints[0]) == "geq(x,0)");
	CHECK(to_string(p.range_constraints[1]) == "leq(x,23)");
	REQUIRE(p.variables.size() == 1);
	CHECK(p.variables[0].lower == 0);
	CHECK(p.variables[0].upper == 23);

	RegularProgram expected;
	auto A = [&expected](const char* n) { return expected.intern(n); };
	const Atom dom = A("cspdomain(fd)"), var = A("cspvar(x,0,23)"), sw = A("switch"), light = A("lightOn"),
	           am = A("am"), r1 = A("required(geq(x,12))"), r2 = A("required(lt(x,12))"), c1 = A("|geq(x,12)|"),
	           c2 = A("|lt(x,12)|");
	expected.add_rule({dom, {}, {}, {}});
	expected.add_rule({var, {}, {}, {}});
	expected.add_rule({sw, {}, {}, {sw}});
	expected.add_rule({light, {sw}, {am}, {}});
	expected.add_rule({std::nullopt, {}, {light}, {}});
	expected.add_rule({am, {}, {}, {am}});
	expected.add_rule({r1, {}, {am}, {}});
	expected.add_rule({r2, {am}, {}, {}});
	expected.add_rule({std::nullopt, {r1}, {c1}, {}});
	expected.add_rule({std::nullopt, {c1}, {r1}, {}});
	expected.add_rule({std::nullopt, {r2}, {c2}, {}});
	expected.add_rule({std::nullopt, {c2}, {r2}, {}});

	auto as_strings = [](const RegularProgram& rp) {
		std::vector<std::string> out;
		for (const auto& r : rp.rules) {
			std::string s = r.head ? rp.atom_names[*r.head] : "";
			s += " :-";
			for (Atom a : r.pos) s += " " + rp.atom_names[a];
			for (Atom a : r.neg) s += " not " + rp.atom_names[a];
			for (Atom a : r.dneg) s += " not not " + rp.atom_names[a];
			out.push_back(s);
		}
		std::sort(out.begin(), out.end());
		return out;
	};
	CHECK(as_strings(p.pi) == as_strings(expected));
	CHECK(p.pi.num_atoms() == expected.num_atoms());
	for (Atom c : p.constraints)
		for (const auto& r : p.pi.rules) CHECK(r.head != std::optional<Atom>(c));
}

TEST_CASE("to_ca_program: pure ASP and errors") {
	CAProgram p = compile("a :- not b. b :- not a.");
	CHECK(p.constraints.empty());
	CHECK(p.pi.rules.size() == 2);

	CHECK_THROWS_WITH_AS(compile("cspdomain(q). cspvar(x,0,1)."), doctest::Contains("unsupported domain"), Error);
	CHECK_THROWS_WITH_AS(compile("cspdomain(r)."), doctest::Contains("unsupported domain"), Error);
	CHECK_THROWS_WITH_AS(compile("cspvar(x,0,3). required(x > 1)."), doctest::Contains("missing cspdomain"), Error);
	CHECK_THROWS_WITH_AS(compile("cspdomain(fd). cspdomain(q). cspvar(x,0,1)."), doctest::Contains("duplicate"),
	                     Error);
	CHECK_THROWS_WITH_AS(compile("cspdomain(fd). cspvar(x,0,3). required(y > 1)."),
	                     doctest::Contains("undeclared variable y"), Error);
}

TEST_CASE("to_ca_program: rule-derived cspvar and bars") {
	CAProgram p = compile(kRiddle);
	CHECK(p.variables.size() == 3);
	CHECK(p.range_constraints.empty());
	int synthetic = 0;
	for (Atom a = 0; a < p.pi.num_atoms(); ++a) synthetic += p.kind[a] == AtomKind::Synthetic;
	CHECK(synthetic == 6);
	CHECK_NOTHROW(p.check_invariants());

	CAProgram q = compile("cspdomain(fd). cspvar(x,0,23). :- |x < 12|. :- |x > 10|.");
	CHECK(q.constraints.size() == 2);
	CHECK(q.pi.rules.size() == 4);
}

TEST_CASE("to_ca_program: aggregates and choice bounds") {
	CAProgram p = compile("n(1..3). 1 { pick(X) : n(X) } 2. ok :- #sum[pick(X)=X : n(X)] 3. :- not ok.");
	RegularProgram abs = p.asp_abstraction();
	std::set<std::set<std::int64_t>> picks;
	for (unsigned mask = 0; mask < 8; ++mask) {
		Interpretation x(abs.num_atoms(), false);
		for (std::int64_t v = 1; v <= 3; ++v)
			if (mask >> (v - 1) & 1u) x[*abs.find("pick(" + std::to_string(v) + ")")] = true;
		for (int i = 0; i < 20; ++i) x = least_model(reduct(abs, x));
		if (!is_answer_set(abs, x)) continue;
		std::set<std::int64_t> s;
		for (std::int64_t v = 1; v <= 3; ++v)
			if (x[*abs.find("pick(" + std::to_string(v) + ")")]) s.insert(v);
		picks.insert(s);
	}
	const std::set<std::set<std::int64_t>> expected{{1}, {2}, {3}, {1, 2}};
	CHECK(picks == expected);
}
