// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ezcasp/grounder.hpp"
#include "term_eval.hpp"

namespace ezcasp {

namespace {

using Subst = std::map<std::string, Term>;

struct TermHash {
	std::size_t operator()(const Term& t) const { return hash_term(t); }
};

std::string pred_key(const Term& atom) { return atom.name + "/" + std::to_string(atom.args.size()); }

struct AtomStore {
	std::unordered_map<std::string, std::vector<Term>> by_pred;
	std::unordered_set<Term, TermHash> all;

	bool insert(const Term& t) {
		if (!all.insert(t).second) return false;
		by_pred[pred_key(t)].push_back(t);
		return true;
	}
	bool contains(const Term& t) const { return all.count(t) != 0; }
	const std::vector<Term>& of(const std::string& key) const {
		static const std::vector<Term> none;
		auto it = by_pred.find(key);
		return it == by_pred.end() ? none : it->second;
	}
};

Term substitute(const Term& t, const Subst& s) {
	if (t.kind == TermKind::Variable) {
		auto it = s.find(t.name);
		return it == s.end() ? t : it->second;
	}
	if (t.args.empty()) return t;
	Term out = t;
	for (auto& a : out.args) a = substitute(a, s);
	return out;
}

bool all_bound(const std::vector<std::string>& vars, const Subst& s) {
	return std::all_of(vars.begin(), vars.end(), [&s](const std::string& v) { return s.count(v) != 0; });
}

std::vector<std::string> vars_of(const Term& t) {
	std::vector<std::string> v;
	t.collect_variables(v);
	return v;
}

/// Variables an atom binds when matched: those outside arithmetic subterms.
void binding_vars(const Term& t, std::vector<std::string>& out) {
	if (t.kind == TermKind::Variable) {
		if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
		return;
	}
	if (t.kind == TermKind::Function && t.infix) return;
	if (t.kind == TermKind::Range) return;
	for (const auto& a : t.args) binding_vars(a, out);
}

bool match(const Term& pat, const Term& g, Subst& s) {
	switch (pat.kind) {
	case TermKind::Variable: {
		auto it = s.find(pat.name);
		if (it != s.end()) return it->second == g;
		s.emplace(pat.name, g);
		return true;
	}
	case TermKind::Function:
		if (pat.infix) {
			Term v = evaluate_term(substitute(pat, s));
			return v.ground() && v == g;
		}
		[[fallthrough]];
	case TermKind::List:
		if (g.kind != pat.kind || g.name != pat.name || g.args.size() != pat.args.size()) return false;
		for (std::size_t i = 0; i < pat.args.size(); ++i)
			if (!match(pat.args[i], g.args[i], s)) return false;
		return true;
	default: return evaluate_term(substitute(pat, s)) == g;
	}
}

enum class Mode { Extension, Possible, Emit };

struct Item {
	enum Kind { DomainAtom, OtherAtom, Builtin, Other } kind = Other;
	const BodyLiteral* lit = nullptr;
	std::vector<std::string> vars;      // all variables
	std::vector<std::string> bind_vars; // variables a positive atom can bind
};

struct Context {
	const std::set<std::string>& domain;
	AtomStore& ext;
	AtomStore& possible;
	std::size_t budget;
	std::size_t steps = 0;

	void tick() {
		if (++steps > budget) throw Error("grounding limit exceeded");
	}
};

bool is_positive_atom(const BodyLiteral& l) {
	return l.kind == BodyLiteral::Kind::Atom && l.negation == Negation::None && l.atom.reserved != Reserved::Constraint;
}

std::vector<Item> make_items(const std::vector<BodyLiteral>& body, const std::set<std::string>& domain,
                             const std::set<std::string>& exclude_vars = {}) {
	std::vector<Item> items;
	for (const auto& l : body) {
		Item it;
		it.lit = &l;
		switch (l.kind) {
		case BodyLiteral::Kind::Atom:
			it.vars = vars_of(l.atom.term);
			if (is_positive_atom(l)) {
				it.kind = domain.count(pred_key(l.atom.term)) ? Item::DomainAtom : Item::OtherAtom;
				binding_vars(l.atom.term, it.bind_vars);
			}
			break;
		case BodyLiteral::Kind::Builtin:
			it.kind = Item::Builtin;
			it.vars = vars_of(l.builtin);
			break;
		case BodyLiteral::Kind::Aggregate: {
			const Aggregate& a = l.aggregate.front();
			if (a.lower) a.lower->collect_variables(it.vars);
			if (a.upper) a.upper->collect_variables(it.vars);
			std::vector<std::string> inner;
			for (const auto& e : a.elements) {
				e.literal.atom.term.collect_variables(inner);
				e.weight.collect_variables(inner);
				for (const auto& c : e.condition) {
					if (c.kind == BodyLiteral::Kind::Atom) c.atom.term.collect_variables(inner);
					if (c.kind == BodyLiteral::Kind::Builtin) c.builtin.collect_variables(inner);
				}
			}
			for (const auto& v : inner)
				if (exclude_vars.count(v) && std::find(it.vars.begin(), it.vars.end(), v) == it.vars.end())
					it.vars.push_back(v);
			break;
		}
		}
		items.push_back(std::move(it));
	}
	return items;
}

/// Evaluates a ground comparison builtin.
bool holds(const Term& b) {
	const Term l = evaluate_term(b.args[0]);
	const Term r = evaluate_term(b.args[1]);
	const int c = compare_terms(l, r);
	const std::string& op = b.name;
	if (op == "=") return c == 0;
	if (op == "!=") return c != 0;
	if (op == "<") return c < 0;
	if (op == "<=") return c <= 0;
	if (op == ">") return c > 0;
	if (op == ">=") return c >= 0;
	throw Error("unknown comparison '" + op + "'");
}

using Callback = std::function<void(const Subst&)>;

void join(Context& ctx, Mode mode, std::vector<const Item*> pending, Subst& s, const Callback& cb) {
	ctx.tick();
	// ready builtins first
	for (std::size_t i = 0; i < pending.size(); ++i) {
		const Item* it = pending[i];
		if (it->kind != Item::Builtin) continue;
		const Term& b = it->lit->builtin;
		if (all_bound(it->vars, s)) {
			if (!holds(substitute(b, s))) return;
			pending.erase(pending.begin() + static_cast<long>(i));
			join(ctx, mode, std::move(pending), s, cb);
			return;
		}
		if (b.name == "=") {
			for (int side = 0; side < 2; ++side) {
				const Term& var = b.args[side];
				const Term& other = b.args[1 - side];
				if (var.kind == TermKind::Variable && !s.count(var.name) && all_bound(vars_of(other), s)) {
					Term value = evaluate_term(substitute(other, s));
					pending.erase(pending.begin() + static_cast<long>(i));
					s.emplace(var.name, value);
					join(ctx, mode, std::move(pending), s, cb);
					s.erase(var.name);
					return;
				}
			}
		}
	}
	auto expand = [&](std::size_t i, const AtomStore& store) {
		const Item* it = pending[i];
		pending.erase(pending.begin() + static_cast<long>(i));
		const Term& pat = it->lit->atom.term;
		const Term inst = substitute(pat, s);
		if (inst.ground()) {
			if (store.contains(evaluate_term(inst))) join(ctx, mode, pending, s, cb);
			return;
		}
		for (const Term& g : store.of(pred_key(pat))) {
			Subst local = s;
			if (!match(pat, g, local)) continue;
			join(ctx, mode, pending, local, cb);
		}
	};
	for (std::size_t i = 0; i < pending.size(); ++i) {
		if (pending[i]->kind == Item::DomainAtom) {
			expand(i, ctx.ext);
			return;
		}
	}
	for (std::size_t i = 0; i < pending.size(); ++i) {
		const Item* it = pending[i];
		if (it->kind != Item::OtherAtom) continue;
		if (mode == Mode::Extension) continue;
		if (mode == Mode::Possible || !all_bound(it->bind_vars, s)) {
			expand(i, ctx.possible);
			return;
		}
	}
	cb(s);
}

struct SafetyError {
	std::string var;
};

/// Variables bound by the positive atoms and assignments of a body, to fixpoint.
std::set<std::string> bound_by(const std::vector<Item>& items, std::set<std::string> bound) {
	bool changed = true;
	while (changed) {
		changed = false;
		for (const auto& it : items) {
			if (it.kind == Item::DomainAtom || it.kind == Item::OtherAtom) {
				for (const auto& v : it.bind_vars) changed |= bound.insert(v).second;
			} else if (it.kind == Item::Builtin && it.lit->builtin.name == "=") {
				const Term& b = it.lit->builtin;
				for (int side = 0; side < 2; ++side) {
					const Term& var = b.args[side];
					if (var.kind != TermKind::Variable || bound.count(var.name)) continue;
					auto other = vars_of(b.args[1 - side]);
					if (std::all_of(other.begin(), other.end(), [&](const std::string& v) { return bound.count(v); }))
						changed |= bound.insert(var.name).second;
				}
			}
		}
	}
	return bound;
}

void require_bound(const std::vector<std::string>& vars, const std::set<std::string>& bound, const EzRule& r) {
	for (const auto& v : vars) {
		if (!bound.count(v)) {
			throw Error(std::to_string(r.pos.line) + ":" + std::to_string(r.pos.column) + ": unsafe variable '" + v +
			            "' in rule: " + pretty_print(r));
		}
	}
}

/// Variables occurring in the rule outside aggregate elements and choice elements.
std::set<std::string> rule_level_vars(const EzRule& r) {
	std::vector<std::string> v;
	if (r.head.kind == Head::Kind::Atom) r.head.atom.term.collect_variables(v);
	if (r.head.lower) r.head.lower->collect_variables(v);
	if (r.head.upper) r.head.upper->collect_variables(v);
	for (const auto& l : r.body) {
		if (l.kind == BodyLiteral::Kind::Atom) l.atom.term.collect_variables(v);
		if (l.kind == BodyLiteral::Kind::Builtin) l.builtin.collect_variables(v);
		if (l.kind == BodyLiteral::Kind::Aggregate) {
			const auto& a = l.aggregate.front();
			if (a.lower) a.lower->collect_variables(v);
			if (a.upper) a.upper->collect_variables(v);
		}
	}
	return {v.begin(), v.end()};
}

void check_safety(const EzRule& r, const std::set<std::string>& domain) {
	const std::set<std::string> outer = rule_level_vars(r);
	std::vector<Item> items = make_items(r.body, domain);
	const std::set<std::string> bound = bound_by(items, {});
	for (const auto& it : items) {
		if (it.lit->kind == BodyLiteral::Kind::Aggregate) {
			const auto& a = it.lit->aggregate.front();
			if (a.lower) require_bound(vars_of(*a.lower), bound, r);
			if (a.upper) require_bound(vars_of(*a.upper), bound, r);
			for (const auto& e : a.elements) {
				std::vector<Item> inner = make_items(e.condition, domain);
				std::vector<BodyLiteral> self{e.literal};
				std::vector<Item> lit_items = make_items(self, domain);
				std::vector<Item> all = inner;
				all.insert(all.end(), lit_items.begin(), lit_items.end());
				const auto local = bound_by(all, bound);
				require_bound(vars_of(e.literal.atom.term), local, r);
				require_bound(vars_of(e.weight), local, r);
				for (const auto& c : inner) require_bound(c.vars, local, r);
			}
			continue;
		}
		require_bound(it.vars, bound, r);
	}
	if (r.head.kind == Head::Kind::Atom) require_bound(vars_of(r.head.atom.term), bound, r);
	if (r.head.lower) require_bound(vars_of(*r.head.lower), bound, r);
	if (r.head.upper) require_bound(vars_of(*r.head.upper), bound, r);
	for (const auto& e : r.head.elements) {
		std::vector<Item> inner = make_items(e.condition, domain);
		const auto local = bound_by(inner, bound);
		require_bound(vars_of(e.atom.term), local, r);
		for (const auto& c : inner) require_bound(c.vars, local, r);
	}
	(void)outer;
}

void check_placement(const EzRule& r) {
	auto fail = [&r](const std::string& what) {
		throw Error(std::to_string(r.pos.line) + ":" + std::to_string(r.pos.column) + ": " + what);
	};
	std::function<void(const BodyLiteral&)> check_lit = [&](const BodyLiteral& l) {
		if (l.kind == BodyLiteral::Kind::Atom && l.atom.reserved == Reserved::Required)
			fail("required atoms may only occur in rule heads");
		if (l.kind == BodyLiteral::Kind::Aggregate)
			for (const auto& e : l.aggregate.front().elements) {
				check_lit(e.literal);
				for (const auto& c : e.condition) check_lit(c);
			}
	};
	for (const auto& l : r.body) check_lit(l);
	for (const auto& e : r.head.elements)
		for (const auto& c : e.condition) check_lit(c);
	if (r.head.kind == Head::Kind::Atom && r.head.atom.reserved == Reserved::CspDomain && !r.body.empty())
		fail("cspdomain must be a fact");
}

std::set<std::string> compute_domain(const EzProgram& p) {
	std::set<std::string> all, bad;
	std::function<void(const BodyLiteral&)> note_lit = [&](const BodyLiteral& l) {
		if (l.kind == BodyLiteral::Kind::Atom && l.atom.reserved != Reserved::Constraint)
			all.insert(pred_key(l.atom.term));
		if (l.kind == BodyLiteral::Kind::Aggregate)
			for (const auto& e : l.aggregate.front().elements) {
				note_lit(e.literal);
				for (const auto& c : e.condition) note_lit(c);
			}
	};
	for (const auto& r : p.rules) {
		for (const auto& l : r.body) note_lit(l);
		for (const auto& e : r.head.elements) {
			all.insert(pred_key(e.atom.term));
			bad.insert(pred_key(e.atom.term));
			for (const auto& c : e.condition) note_lit(c);
		}
		if (r.head.kind != Head::Kind::Atom) continue;
		const std::string key = pred_key(r.head.atom.term);
		all.insert(key);
		if (r.head.atom.reserved == Reserved::Required) bad.insert(key);
		for (const auto& l : r.body) {
			const bool ok = l.kind == BodyLiteral::Kind::Builtin ||
			                (is_positive_atom(l) && l.atom.reserved != Reserved::Required);
			if (!ok) bad.insert(key);
		}
	}
	std::set<std::string> domain;
	for (const auto& k : all)
		if (!bad.count(k)) domain.insert(k);
	bool changed = true;
	while (changed) {
		changed = false;
		for (const auto& r : p.rules) {
			if (r.head.kind != Head::Kind::Atom) continue;
			const std::string key = pred_key(r.head.atom.term);
			if (!domain.count(key)) continue;
			for (const auto& l : r.body) {
				if (l.kind == BodyLiteral::Kind::Atom && !domain.count(pred_key(l.atom.term))) {
					domain.erase(key);
					changed = true;
					break;
				}
			}
		}
	}
	return domain;
}

/// Head instances; ranges in arguments expand into several atoms.
std::vector<Term> instantiate_head(const Term& head, const Subst& s) {
	Term t = evaluate_term(substitute(head, s));
	std::vector<Term> out{t};
	for (std::size_t i = 0; i < t.args.size(); ++i) {
		if (t.args[i].kind != TermKind::Range) continue;
		const Term lo = evaluate_term(t.args[i].args[0]);
		const Term hi = evaluate_term(t.args[i].args[1]);
		if (!lo.is_integer() || !hi.is_integer()) throw Error("range bounds must be integers: " + to_string(t.args[i]));
		std::vector<Term> next;
		for (const Term& partial : out)
			for (std::int64_t v = lo.number; v <= hi.number; ++v) {
				Term c = partial;
				c.args[i] = Term::integer(v);
				next.push_back(std::move(c));
			}
		out = std::move(next);
	}
	return out;
}

class Grounder {
public:
	Grounder(const EzProgram& p, const GroundOptions& opts)
	    : p_(p), domain_(compute_domain(p)), ctx_{domain_, ext_, possible_, opts.max_ground_rules * 8} {
		max_rules_ = opts.max_ground_rules;
	}

	EzProgram run() {
		for (const auto& r : p_.rules) {
			check_placement(r);
			check_safety(r, domain_);
		}
		compute_extension();
		compute_possible();
		return emit();
	}

private:
	const EzProgram& p_;
	std::set<std::string> domain_;
	AtomStore ext_;
	AtomStore possible_;
	Context ctx_;
	std::size_t max_rules_ = 0;

	bool is_domain_rule(const EzRule& r) const {
		return r.head.kind == Head::Kind::Atom && domain_.count(pred_key(r.head.atom.term));
	}

	static std::vector<const Item*> pointers(const std::vector<Item>& items) {
		std::vector<const Item*> out;
		for (const auto& it : items) out.push_back(&it);
		return out;
	}

	void compute_extension() {
		bool changed = true;
		while (changed) {
			changed = false;
			for (const auto& r : p_.rules) {
				if (!is_domain_rule(r)) continue;
				auto items = make_items(r.body, domain_);
				Subst s;
				join(ctx_, Mode::Extension, pointers(items), s, [&](const Subst& b) {
					for (auto& h : instantiate_head(r.head.atom.term, b)) changed |= ext_.insert(h);
				});
			}
		}
		for (const auto& t : ext_.all) possible_.insert(t);
	}

	void for_each_choice_element(const ChoiceElement& e, const Subst& outer, Mode mode,
	                             const std::function<void(const Term&, std::vector<BodyLiteral>)>& cb) {
		auto items = make_items(e.condition, domain_);
		Subst s = outer;
		join(ctx_, mode, pointers(items), s, [&](const Subst& b) {
			std::vector<BodyLiteral> rest;
			for (const auto& c : e.condition) {
				if (c.kind == BodyLiteral::Kind::Builtin) continue;
				if (is_positive_atom(c) && domain_.count(pred_key(c.atom.term))) continue;
				BodyLiteral g = c;
				g.atom.term = evaluate_term(substitute(c.atom.term, b));
				rest.push_back(std::move(g));
			}
			for (auto& h : instantiate_head(e.atom.term, b)) cb(h, rest);
		});
	}

	void compute_possible() {
		bool changed = true;
		while (changed) {
			changed = false;
			for (const auto& r : p_.rules) {
				if (is_domain_rule(r) || r.head.kind == Head::Kind::None) continue;
				auto items = make_items(r.body, domain_);
				std::vector<const Item*> ptrs;
				for (const auto& it : items)
					if (it.lit->kind != BodyLiteral::Kind::Aggregate) ptrs.push_back(&it);
				Subst s;
				join(ctx_, Mode::Possible, ptrs, s, [&](const Subst& b) {
					if (r.head.kind == Head::Kind::Atom) {
						for (auto& h : instantiate_head(r.head.atom.term, b)) changed |= possible_.insert(h);
						return;
					}
					for (const auto& e : r.head.elements)
						for_each_choice_element(e, b, Mode::Possible,
						                        [&](const Term& h, const std::vector<BodyLiteral>&) {
							                        changed |= possible_.insert(h);
						                        });
				});
			}
		}
	}

	BodyLiteral ground_aggregate(const BodyLiteral& l, const Subst& outer) {
		const Aggregate& a = l.aggregate.front();
		Aggregate g;
		g.is_sum = a.is_sum;
		auto bound = [&](const std::optional<Term>& t) -> std::optional<Term> {
			if (!t) return std::nullopt;
			Term v = evaluate_term(substitute(*t, outer));
			if (!v.is_integer()) throw Error("aggregate bound is not an integer: " + to_string(v));
			return v;
		};
		g.lower = bound(a.lower);
		g.upper = bound(a.upper);
		for (const auto& e : a.elements) {
			std::vector<BodyLiteral> conj = e.condition;
			const bool bind_with_literal = is_positive_atom(e.literal);
			if (bind_with_literal) conj.push_back(e.literal);
			auto items = make_items(conj, domain_);
			Subst s = outer;
			join(ctx_, Mode::Emit, pointers(items), s, [&](const Subst& b) {
				AggregateElement ge;
				ge.literal = e.literal;
				ge.literal.atom.term = evaluate_term(substitute(e.literal.atom.term, b));
				ge.weight = evaluate_term(substitute(e.weight, b));
				if (!ge.weight.is_integer()) throw Error("aggregate weight is not an integer: " + to_string(ge.weight));
				for (const auto& c : e.condition) {
					if (c.kind == BodyLiteral::Kind::Builtin) continue;
					if (is_positive_atom(c) && domain_.count(pred_key(c.atom.term))) continue;
					BodyLiteral gc = c;
					gc.atom.term = evaluate_term(substitute(c.atom.term, b));
					ge.condition.push_back(std::move(gc));
				}
				if (std::find(g.elements.begin(), g.elements.end(), ge) == g.elements.end())
					g.elements.push_back(std::move(ge));
			});
		}
		BodyLiteral out;
		out.kind = BodyLiteral::Kind::Aggregate;
		out.aggregate.push_back(std::move(g));
		return out;
	}

	void push(EzProgram& out, EzRule r) {
		if (out.rules.size() >= max_rules_) throw Error("grounding limit exceeded");
		out.rules.push_back(std::move(r));
	}

	EzProgram emit() {
		EzProgram out;
		std::vector<Term> facts(ext_.all.begin(), ext_.all.end());
		std::sort(facts.begin(), facts.end(), TermLess{});
		for (auto& f : facts) {
			EzRule r;
			r.head.kind = Head::Kind::Atom;
			r.head.atom = make_atom(std::move(f));
			push(out, std::move(r));
		}
		for (const auto& r : p_.rules) {
			if (is_domain_rule(r)) continue;
			auto items = make_items(r.body, domain_);
			std::vector<const Item*> ptrs;
			for (const auto& it : items)
				if (it.lit->kind != BodyLiteral::Kind::Aggregate) ptrs.push_back(&it);
			Subst s;
			join(ctx_, Mode::Emit, ptrs, s, [&](const Subst& b) {
				EzRule g;
				g.pos = r.pos;
				for (const auto& l : r.body) {
					if (l.kind == BodyLiteral::Kind::Builtin) continue;
					if (l.kind == BodyLiteral::Kind::Aggregate) {
						g.body.push_back(ground_aggregate(l, b));
						continue;
					}
					BodyLiteral gl = l;
					gl.atom.term = evaluate_term(substitute(l.atom.term, b));
					g.body.push_back(std::move(gl));
				}
				switch (r.head.kind) {
				case Head::Kind::None: push(out, std::move(g)); break;
				case Head::Kind::Atom:
					for (auto& h : instantiate_head(r.head.atom.term, b)) {
						EzRule copy = g;
						copy.head.kind = Head::Kind::Atom;
						copy.head.atom = make_atom(std::move(h));
						copy.head.atom.reserved = r.head.atom.reserved;
						push(out, std::move(copy));
					}
					break;
				case Head::Kind::Choice: {
					g.head.kind = Head::Kind::Choice;
					auto bound = [&](const std::optional<Term>& t) -> std::optional<Term> {
						if (!t) return std::nullopt;
						Term v = evaluate_term(substitute(*t, b));
						if (!v.is_integer()) throw Error("choice bound is not an integer: " + to_string(v));
						return v;
					};
					g.head.lower = bound(r.head.lower);
					g.head.upper = bound(r.head.upper);
					for (const auto& e : r.head.elements)
						for_each_choice_element(e, b, Mode::Emit, [&](const Term& h, std::vector<BodyLiteral> rest) {
							ChoiceElement ge;
							ge.atom = make_atom(h);
							ge.condition = std::move(rest);
							if (std::find(g.head.elements.begin(), g.head.elements.end(), ge) == g.head.elements.end())
								g.head.elements.push_back(std::move(ge));
						});
					push(out, std::move(g));
					break;
				}
				}
			});
		}
		return out;
	}
};

} // namespace

std::vector<std::string> domain_predicates(const EzProgram& p) {
	auto d = compute_domain(p);
	return {d.begin(), d.end()};
}

EzProgram ground(const EzProgram& p, const GroundOptions& opts) { return Grounder(p, opts).run(); }

} // namespace ezcasp
