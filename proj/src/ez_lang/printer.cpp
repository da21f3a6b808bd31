// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "ezcasp/ez_lang.hpp"

namespace ezcasp {

namespace {

const char* negation_prefix(Negation n) {
	switch (n) {
	case Negation::Not: return "not ";
	case Negation::NotNot: return "not not ";
	default: return "";
	}
}

std::string join(const std::vector<BodyLiteral>& lits) {
	std::string out;
	for (std::size_t i = 0; i < lits.size(); ++i) {
		if (i) out += ", ";
		out += pretty_print(lits[i]);
	}
	return out;
}

std::string bounds(const std::optional<Term>& t) { return t ? to_string(*t) + " " : ""; }

} // namespace

std::string pretty_print(const BodyLiteral& l) {
	switch (l.kind) {
	case BodyLiteral::Kind::Atom:
		if (l.atom.reserved == Reserved::Constraint)
			return std::string(negation_prefix(l.negation)) + "|" + to_string(l.atom.term) + "|";
		return negation_prefix(l.negation) + to_string(l.atom.term);
	case BodyLiteral::Kind::Builtin: return to_string(l.builtin);
	case BodyLiteral::Kind::Aggregate: break;
	}
	const Aggregate& a = l.aggregate.front();
	std::string out = bounds(a.lower);
	out += a.is_sum ? "#sum[ " : "{ ";
	for (std::size_t i = 0; i < a.elements.size(); ++i) {
		const auto& e = a.elements[i];
		if (i) out += "; ";
		out += pretty_print(e.literal);
		if (a.is_sum) out += "=" + to_string(e.weight);
		if (!e.condition.empty()) out += " : " + join(e.condition);
	}
	out += a.is_sum ? " ]" : " }";
	if (a.upper) out += " " + to_string(*a.upper);
	return out;
}

std::string pretty_print(const EzRule& r) {
	std::string out;
	switch (r.head.kind) {
	case Head::Kind::None: break;
	case Head::Kind::Atom: out = to_string(r.head.atom.term); break;
	case Head::Kind::Choice:
		out = bounds(r.head.lower) + "{ ";
		for (std::size_t i = 0; i < r.head.elements.size(); ++i) {
			const auto& e = r.head.elements[i];
			if (i) out += "; ";
			out += to_string(e.atom.term);
			if (!e.condition.empty()) out += " : " + join(e.condition);
		}
		out += " }";
		if (r.head.upper) out += " " + to_string(*r.head.upper);
		break;
	}
	if (!r.body.empty()) out += (out.empty() ? ":- " : " :- ") + join(r.body);
	return out + ".";
}

std::string pretty_print(const EzProgram& p) {
	std::string out;
	for (const auto& r : p.rules) out += pretty_print(r) + "\n";
	return out;
}

} // namespace ezcasp
