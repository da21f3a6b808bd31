// SPDX-License-Identifier: Apache-2.0
#include "ezcasp/ez_lang.hpp"

namespace ezcasp {

namespace {

Term rewrite(const Term& t) {
	switch (t.kind) {
	case TermKind::Operator: {
		const std::string canon = canonical_operator_name(t.name, 2);
		if (canon.empty()) throw Error("unknown operator '" + t.name + "'");
		return Term::symbol(canon);
	}
	case TermKind::Function: {
		std::vector<Term> args;
		args.reserve(t.args.size());
		for (const auto& a : t.args) args.push_back(rewrite(a));
		if (!t.infix) return Term::function(t.name, std::move(args));
		if (t.name == "<-") return Term::function("impl", {std::move(args[1]), std::move(args[0])});
		const std::string canon = canonical_operator_name(t.name, t.args.size());
		if (canon.empty()) throw Error("unknown operator '" + t.name + "'");
		return Term::function(canon, std::move(args));
	}
	case TermKind::List:
	case TermKind::Range:
	case TermKind::IntensionalList: {
		Term out = t;
		for (auto& a : out.args) a = rewrite(a);
		return out;
	}
	default: return t;
	}
}

void rewrite_atom(EzAtom& a) {
	if (a.reserved == Reserved::Required) a.term.args[0] = rewrite(a.term.args[0]);
	if (a.reserved == Reserved::Constraint) a.term = rewrite(a.term);
}

void rewrite_literal(BodyLiteral& l) {
	if (l.kind == BodyLiteral::Kind::Atom) rewrite_atom(l.atom);
	if (l.kind == BodyLiteral::Kind::Aggregate) {
		for (auto& e : l.aggregate.front().elements) {
			rewrite_literal(e.literal);
			for (auto& c : e.condition) rewrite_literal(c);
		}
	}
}

} // namespace

EzProgram preprocess(const EzProgram& p) {
	EzProgram out = p;
	for (auto& r : out.rules) {
		if (r.head.kind == Head::Kind::Atom) rewrite_atom(r.head.atom);
		for (auto& e : r.head.elements) {
			rewrite_atom(e.atom);
			for (auto& c : e.condition) rewrite_literal(c);
		}
		for (auto& l : r.body) rewrite_literal(l);
	}
	return out;
}

} // namespace ezcasp
