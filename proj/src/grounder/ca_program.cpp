// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <set>

#include "ezcasp/grounder.hpp"

namespace ezcasp {

namespace {

const char* const kGlobalNames[] = {"all_different", "all_distinct", "assignment", "circuit", "count",
                                    "cumulative",    "disjoint2",    "element",    "minimum", "maximum",
                                    "scalar_product", "serialized",  "sum"};

bool is_comparison_name(const std::string& s) {
	return s == "lt" || s == "leq" || s == "gt" || s == "geq" || s == "eq" || s == "neq";
}

std::string required_name(const Term& beta) { return "required(" + to_string(beta) + ")"; }
std::string constraint_name(const Term& beta) { return "|" + to_string(beta) + "|"; }

bool prefix_matches(const Term& t, const std::string& name, std::size_t arity, const std::vector<Term>& prefix) {
	if (arity == 0) return t.kind == TermKind::Symbol && t.name == name && prefix.empty();
	if (t.kind != TermKind::Function || t.infix || t.name != name || t.args.size() != arity) return false;
	for (std::size_t i = 0; i < prefix.size(); ++i)
		if (t.args[i] != prefix[i]) return false;
	return true;
}

bool same_name(const Term& t, const std::string& name, std::size_t arity) {
	if (arity == 0) return t.kind == TermKind::Symbol && t.name == name;
	return t.kind == TermKind::Function && !t.infix && t.name == name && t.args.size() == arity;
}

struct ListExpander {
	const std::vector<VariableDecl>& decls;
	std::vector<Term> facts;
	std::vector<std::string>* warnings;

	Term expand(const Term& t) const {
		if (t.kind == TermKind::IntensionalList) return expand_one(t);
		if (t.args.empty()) return t;
		Term out = t;
		for (auto& a : out.args) a = expand(a);
		return out;
	}

	Term expand_one(const Term& t) const {
		const std::size_t k = static_cast<std::size_t>(t.arity);
		if (t.args.size() > k) throw Error("intensional list prefix longer than its arity: " + to_string(t));
		std::vector<Term> out;
		bool known = false;
		for (const auto& d : decls) {
			if (!same_name(d.var, t.name, k)) continue;
			known = true;
			if (prefix_matches(d.var, t.name, k, t.args)) out.push_back(d.var);
		}
		if (!known) {
			if (k == 0) throw Error("intensional list over an unknown name: " + to_string(t));
			std::vector<Term> matching;
			for (const auto& f : facts) {
				if (!same_name(f, t.name, k)) continue;
				known = true;
				if (prefix_matches(f, t.name, k, t.args)) matching.push_back(f);
			}
			if (!known) throw Error("intensional list over an unknown name: " + to_string(t));
			std::sort(matching.begin(), matching.end(), TermLess{});
			for (const auto& f : matching) out.push_back(f.args[k - 1]);
		} else {
			std::sort(out.begin(), out.end(), TermLess{});
		}
		if (out.empty() && warnings) warnings->push_back("intensional list " + to_string(t) + " is empty");
		return Term::list(std::move(out));
	}
};

void expand_in_literals(std::vector<BodyLiteral>& lits, const ListExpander& ex) {
	for (auto& l : lits) {
		if (l.kind == BodyLiteral::Kind::Atom && l.atom.reserved == Reserved::Constraint)
			l.atom.term = ex.expand(l.atom.term);
		if (l.kind == BodyLiteral::Kind::Aggregate)
			for (auto& e : l.aggregate.front().elements) {
				std::vector<BodyLiteral> one{e.literal};
				expand_in_literals(one, ex);
				e.literal = one.front();
				expand_in_literals(e.condition, ex);
			}
	}
}

std::int64_t integer_arg(const Term& t, const char* what) {
	if (!t.is_integer()) throw Error(std::string("cspvar ") + what + " must be an integer: " + to_string(t));
	return t.number;
}

class Builder {
public:
	CAProgram p;

	Atom atom(const std::string& name, AtomKind kind, const Term& term) {
		const std::size_t before = p.pi.num_atoms();
		const Atom a = p.pi.intern(name);
		if (p.pi.num_atoms() != before) {
			p.kind.push_back(kind);
			p.atom_term.push_back(term);
			if (kind == AtomKind::Constraint) {
				p.constraints.push_back(a);
				p.gamma.emplace(a, term);
			}
		} else if (kind == AtomKind::Required && p.kind[a] == AtomKind::Synthetic) {
			p.kind[a] = AtomKind::Required;
		}
		return a;
	}

	Atom aux(const std::string& tag) {
		const std::string name = "ez_aux_" + std::to_string(next_aux_++) + "_" + tag;
		return atom(name, AtomKind::Auxiliary, Term::symbol(name));
	}

	Atom ez_atom(const EzAtom& a) {
		switch (a.reserved) {
		case Reserved::Required: {
			const Term& beta = a.term.args[0];
			required_.insert(beta);
			if (std::find(required_order_.begin(), required_order_.end(), beta) == required_order_.end())
				required_order_.push_back(beta);
			return atom(to_string(a.term), AtomKind::Required, a.term);
		}
		case Reserved::Constraint: return atom(constraint_name(a.term), AtomKind::Constraint, a.term);
		default: return atom(to_string(a.term), AtomKind::Regular, a.term);
		}
	}

	Atom synthetic_required(const Term& beta) {
		if (std::find(required_order_.begin(), required_order_.end(), beta) == required_order_.end())
			required_order_.push_back(beta);
		const Term t = Term::function("required", {beta});
		return atom(required_name(beta), AtomKind::Synthetic, t);
	}

	void add_literal(Rule& r, const BodyLiteral& l) {
		const Atom a = ez_atom(l.atom);
		switch (l.negation) {
		case Negation::None: r.pos.push_back(a); break;
		case Negation::Not: r.neg.push_back(a); break;
		case Negation::NotNot: r.dneg.push_back(a); break;
		}
	}

	/// Atom true iff the element holds: the literal itself or an aux defined by literal and conditions.
	Atom element_atom(const BodyLiteral& lit, const std::vector<BodyLiteral>& cond) {
		if (cond.empty() && lit.negation == Negation::None) return ez_atom(lit.atom);
		Rule r;
		r.head = aux("e");
		add_literal(r, lit);
		for (const auto& c : cond) add_literal(r, c);
		const Atom h = *r.head;
		p.pi.add_rule(std::move(r));
		return h;
	}

	/// Counter over weighted elements: returns s(v) atoms for "partial sum >= v", v = 1..limit.
	std::vector<Atom> counter(const std::vector<std::pair<Atom, std::int64_t>>& elems, std::int64_t limit) {
		std::vector<Atom> prev; // prev[v-1] = s(j-1, v)
		std::int64_t prefix = 0;
		const std::string tag = "s" + std::to_string(next_counter_++);
		for (std::size_t j = 0; j < elems.size(); ++j) {
			const auto [e, w] = elems[j];
			const std::int64_t total = std::min(limit, prefix + w);
			std::vector<Atom> cur;
			for (std::int64_t v = 1; v <= total; ++v) {
				const Atom s = aux(tag + "_" + std::to_string(j + 1) + "_" + std::to_string(v));
				cur.push_back(s);
				if (v <= static_cast<std::int64_t>(prev.size())) p.pi.add_rule(Rule{s, {prev[v - 1]}, {}, {}});
				if (w > 0) {
					if (v <= w) {
						p.pi.add_rule(Rule{s, {e}, {}, {}});
					} else if (v - w <= static_cast<std::int64_t>(prev.size())) {
						p.pi.add_rule(Rule{s, {e, prev[v - w - 1]}, {}, {}});
					}
				}
			}
			prefix = std::min(limit, prefix + w);
			prev = std::move(cur);
		}
		return prev;
	}

	Atom always_false() {
		if (!false_) false_ = aux("false");
		return *false_;
	}

	/// Adds body conditions for lower <= sum <= upper to r.
	void bound_literals(Rule& r, const std::vector<std::pair<Atom, std::int64_t>>& elems,
	                    std::optional<std::int64_t> lower, std::optional<std::int64_t> upper) {
		std::int64_t total = 0;
		for (const auto& [e, w] : elems) total += w;
		std::int64_t limit = 0;
		if (lower && *lower > 0 && *lower <= total) limit = std::max(limit, *lower);
		if (upper && *upper >= 0 && *upper + 1 <= total) limit = std::max(limit, *upper + 1);
		std::vector<Atom> s = limit > 0 ? counter(elems, limit) : std::vector<Atom>{};
		if (lower && *lower > 0) {
			if (*lower > total) r.pos.push_back(always_false());
			else r.pos.push_back(s[*lower - 1]);
		}
		if (upper) {
			if (*upper < 0) r.pos.push_back(always_false());
			else if (*upper + 1 <= total) r.neg.push_back(s[*upper]);
		}
	}

	void add_aggregate(Rule& r, const Aggregate& a) {
		std::vector<std::pair<Atom, std::int64_t>> elems;
		for (const auto& e : a.elements) {
			const std::int64_t w = a.is_sum ? e.weight.number : 1;
			if (w < 0) throw Error("negative aggregate weights are not supported: " + to_string(e.weight));
			elems.emplace_back(element_atom(e.literal, e.condition), w);
		}
		auto bound = [](const std::optional<Term>& t) -> std::optional<std::int64_t> {
			if (!t) return std::nullopt;
			return t->number;
		};
		bound_literals(r, elems, bound(a.lower), bound(a.upper));
	}

	Rule body(const std::vector<BodyLiteral>& lits) {
		Rule r;
		for (const auto& l : lits) {
			if (l.kind == BodyLiteral::Kind::Aggregate) add_aggregate(r, l.aggregate.front());
			else if (l.kind == BodyLiteral::Kind::Atom) add_literal(r, l);
		}
		return r;
	}

	void add(const EzRule& er) {
		Rule b = body(er.body);
		switch (er.head.kind) {
		case Head::Kind::None: p.pi.add_rule(std::move(b)); break;
		case Head::Kind::Atom:
			b.head = ez_atom(er.head.atom);
			p.pi.add_rule(std::move(b));
			break;
		case Head::Kind::Choice: {
			std::vector<std::pair<Atom, std::int64_t>> elems;
			for (const auto& e : er.head.elements) {
				Rule r = b;
				const Atom h = ez_atom(e.atom);
				r.head = h;
				r.dneg.push_back(h);
				for (const auto& c : e.condition) add_literal(r, c);
				p.pi.add_rule(std::move(r));
				if (e.condition.empty()) {
					elems.emplace_back(h, 1);
				} else {
					Rule def;
					def.head = aux("c");
					def.pos.push_back(h);
					for (const auto& c : e.condition) add_literal(def, c);
					elems.emplace_back(*def.head, 1);
					p.pi.add_rule(std::move(def));
				}
			}
			auto bound = [](const std::optional<Term>& t) -> std::optional<std::int64_t> {
				if (!t) return std::nullopt;
				return t->number;
			};
			const auto lo = bound(er.head.lower);
			const auto hi = bound(er.head.upper);
			if (lo && hi && *lo > *hi) throw Error("choice lower bound exceeds upper bound: " + pretty_print(er));
			if (lo && *lo > 0) {
				Rule d = b;
				Rule cond;
				bound_literals(cond, elems, std::nullopt, *lo - 1);
				d.pos.insert(d.pos.end(), cond.pos.begin(), cond.pos.end());
				d.neg.insert(d.neg.end(), cond.neg.begin(), cond.neg.end());
				p.pi.add_rule(std::move(d));
			}
			if (hi) {
				Rule d = b;
				Rule cond;
				bound_literals(cond, elems, *hi + 1, std::nullopt);
				d.pos.insert(d.pos.end(), cond.pos.begin(), cond.pos.end());
				d.neg.insert(d.neg.end(), cond.neg.begin(), cond.neg.end());
				p.pi.add_rule(std::move(d));
			}
			break;
		}
		}
	}

	void linking_denials() {
		for (const auto& beta : required_order_) {
			const Atom r = *p.pi.find(required_name(beta));
			const Atom c = atom(constraint_name(beta), AtomKind::Constraint, beta);
			p.pi.add_rule(Rule{std::nullopt, {r}, {c}, {}});
			p.pi.add_rule(Rule{std::nullopt, {c}, {r}, {}});
		}
	}

private:
	std::set<Term, TermLess> required_;
	std::vector<Term> required_order_;
	std::optional<Atom> false_;
	std::size_t next_aux_ = 0;
	std::size_t next_counter_ = 0;
};

void check_declared(const Term& t, const CAProgram& p, const Term& whole) {
	auto fail = [&](const Term& bad) {
		throw Error("constraint " + to_display_string(whole) + " references undeclared variable " + to_string(bad));
	};
	switch (t.kind) {
	case TermKind::Integer: return;
	case TermKind::List:
		for (const auto& a : t.args) check_declared(a, p, whole);
		return;
	case TermKind::Symbol:
		if (p.find_variable(t) || is_comparison_name(t.name)) return;
		fail(t);
		return;
	case TermKind::Function:
		if (p.find_variable(t)) return;
		if (!t.infix && (is_global_constraint_name(t.name) || !operator_token_for(t.name, t.args.size()).empty())) {
			for (const auto& a : t.args) check_declared(a, p, whole);
			return;
		}
		fail(t);
		return;
	case TermKind::IntensionalList: throw Error("unexpanded intensional list in " + to_display_string(whole));
	default: throw Error("unexpected term in constraint " + to_display_string(whole) + ": " + to_string(t));
	}
}

} // namespace

bool is_global_constraint_name(const std::string& name) {
	return std::find(std::begin(kGlobalNames), std::end(kGlobalNames), name) != std::end(kGlobalNames);
}

RegularProgram CAProgram::asp_abstraction() const {
	RegularProgram out = pi;
	for (Atom c : constraints) out.add_rule(Rule{c, {}, {}, {c}});
	return out;
}

std::string CAProgram::display(Atom a) const {
	switch (kind[a]) {
	case AtomKind::Required:
	case AtomKind::Synthetic: return "required(" + to_display_string(atom_term[a].args[0]) + ")";
	case AtomKind::Constraint: return "|" + to_display_string(atom_term[a]) + "|";
	default: return pi.atom_names[a];
	}
}

const VariableDecl* CAProgram::find_variable(const Term& v) const {
	auto it = std::lower_bound(variables.begin(), variables.end(), v,
	                           [](const VariableDecl& d, const Term& t) { return compare_terms(d.var, t) < 0; });
	if (it != variables.end() && it->var == v) return &*it;
	return nullptr;
}

void CAProgram::check_invariants() const {
	if (kind.size() != pi.num_atoms() || atom_term.size() != pi.num_atoms())
		throw Error("atom tables out of sync");
	for (const auto& r : pi.rules)
		if (r.head && is_constraint(*r.head)) throw Error("constraint atom in a rule head: " + display(*r.head));
	std::size_t n = 0;
	for (Atom a = 0; a < pi.num_atoms(); ++a) {
		if (!is_constraint(a)) continue;
		++n;
		if (!gamma.count(a)) throw Error("gamma undefined on " + display(a));
	}
	if (n != constraints.size() || gamma.size() != constraints.size()) throw Error("gamma not defined exactly on C");
	for (const auto& v : variables)
		if (v.lower > v.upper) throw Error("empty range for variable " + to_string(v.var));
}

Atom CAProgramBuilder::regular(const std::string& name) {
	const std::size_t before = p_.pi.num_atoms();
	const Atom a = p_.pi.intern(name);
	if (p_.pi.num_atoms() != before) {
		p_.kind.push_back(AtomKind::Regular);
		p_.atom_term.push_back(Term::symbol(name));
	}
	return a;
}

Atom CAProgramBuilder::constraint(const Term& t) {
	const std::size_t before = p_.pi.num_atoms();
	const Atom a = p_.pi.intern(constraint_name(t));
	if (p_.pi.num_atoms() != before) {
		p_.kind.push_back(AtomKind::Constraint);
		p_.atom_term.push_back(t);
		p_.constraints.push_back(a);
		p_.gamma.emplace(a, t);
	}
	return a;
}

void CAProgramBuilder::rule(std::optional<Atom> head, std::vector<Atom> pos, std::vector<Atom> neg,
                            std::vector<Atom> dneg) {
	p_.pi.add_rule(Rule{head, std::move(pos), std::move(neg), std::move(dneg)});
}

void CAProgramBuilder::variable(const Term& v, std::int64_t lo, std::int64_t hi) {
	p_.variables.push_back(VariableDecl{v, lo, hi, false});
}

CAProgram CAProgramBuilder::build() {
	std::sort(p_.variables.begin(), p_.variables.end(),
	          [](const VariableDecl& a, const VariableDecl& b) { return compare_terms(a.var, b.var) < 0; });
	for (Atom c : p_.constraints) check_declared(p_.gamma.at(c), p_, p_.gamma.at(c));
	p_.check_invariants();
	return p_;
}

std::vector<VariableDecl> collect_variables(const EzProgram& g, const GroundOptions& opts) {
	std::map<Term, VariableDecl, TermLess> decls;
	for (const auto& r : g.rules) {
		if (r.head.kind != Head::Kind::Atom || r.head.atom.reserved != Reserved::CspVar) continue;
		const Term& t = r.head.atom.term;
		const Term& v = t.args[0];
		auto [it, fresh] = decls.emplace(v, VariableDecl{v, opts.default_lower, opts.default_upper, true});
		if (t.args.size() != 3 || !r.is_fact()) continue;
		const std::int64_t lo = integer_arg(t.args[1], "lower bound");
		const std::int64_t hi = integer_arg(t.args[2], "upper bound");
		if (it->second.range_free) {
			it->second.lower = lo;
			it->second.upper = hi;
			it->second.range_free = false;
		} else {
			it->second.lower = std::max(it->second.lower, lo);
			it->second.upper = std::min(it->second.upper, hi);
		}
		(void)fresh;
	}
	std::vector<VariableDecl> out;
	for (auto& [k, d] : decls) out.push_back(d);
	return out;
}

EzProgram expand_lists(const EzProgram& g, const std::vector<VariableDecl>& decls, std::vector<std::string>* warnings) {
	ListExpander ex{decls, {}, warnings};
	for (const auto& r : g.rules)
		if (r.is_fact() && r.head.atom.reserved == Reserved::None) ex.facts.push_back(r.head.atom.term);
	EzProgram out = g;
	for (auto& r : out.rules) {
		if (r.head.kind == Head::Kind::Atom && r.head.atom.reserved == Reserved::Required)
			r.head.atom.term = ex.expand(r.head.atom.term);
		expand_in_literals(r.body, ex);
		for (auto& e : r.head.elements) expand_in_literals(e.condition, ex);
	}
	return out;
}

CAProgram to_ca_program(const EzProgram& g, const GroundOptions& opts) {
	Builder b;
	b.p.domain.default_lower = opts.default_lower;
	b.p.domain.default_upper = opts.default_upper;

	std::vector<const EzRule*> domains;
	bool uses_constraints = false;
	auto scan = [&uses_constraints](const std::vector<BodyLiteral>& lits) {
		for (const auto& l : lits)
			if (l.kind == BodyLiteral::Kind::Atom && l.atom.reserved == Reserved::Constraint) uses_constraints = true;
	};
	for (const auto& r : g.rules) {
		if (r.head.kind == Head::Kind::Atom) {
			const Reserved res = r.head.atom.reserved;
			if (res == Reserved::CspDomain) domains.push_back(&r);
			if (res == Reserved::CspVar || res == Reserved::Required) uses_constraints = true;
		}
		scan(r.body);
	}
	if (domains.size() > 1) throw Error("duplicate cspdomain fact");
	if (domains.empty() && uses_constraints) throw Error("missing cspdomain fact");
	if (!domains.empty()) {
		const std::string kind = domains.front()->head.atom.term.args[0].name;
		if (kind != "fd") throw Error("unsupported domain: " + kind);
	}

	b.p.variables = collect_variables(g, opts);
	for (const auto& r : g.rules) {
		b.add(r);
		if (r.head.kind != Head::Kind::Atom || r.head.atom.reserved != Reserved::CspVar) continue;
		const Term& t = r.head.atom.term;
		if (t.args.size() != 3) continue;
		const Term ge = Term::function("geq", {t.args[0], t.args[1]});
		const Term le = Term::function("leq", {t.args[0], t.args[2]});
		if (r.is_fact()) {
			for (const Term& c : {ge, le})
				if (std::find(b.p.range_constraints.begin(), b.p.range_constraints.end(), c) ==
				    b.p.range_constraints.end())
					b.p.range_constraints.push_back(c);
			continue;
		}
		const Atom cv = *b.p.pi.find(to_string(t));
		for (const Term& c : {ge, le}) b.p.pi.add_rule(Rule{b.synthetic_required(c), {cv}, {}, {}});
	}
	b.linking_denials();
	for (Atom c : b.p.constraints) check_declared(b.p.gamma.at(c), b.p, b.p.gamma.at(c));
	for (const auto& c : b.p.range_constraints) check_declared(c, b.p, c);
	b.p.check_invariants();
	return std::move(b.p);
}

CAProgram compile(std::string_view text, const GroundOptions& opts, std::vector<std::string>* warnings) {
	const EzProgram g = ground(preprocess(parse(text)), opts);
	return to_ca_program(expand_lists(g, collect_variables(g, opts), warnings), opts);
}

} // namespace ezcasp
