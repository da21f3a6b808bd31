// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>
#include <sstream>

#include "ezcasp/cli.hpp"

namespace ezcasp {

namespace {

std::string clp_name(const Term& v) {
	std::string out = "V_";
	for (char c : to_string(v)) {
		if (std::isalnum(static_cast<unsigned char>(c))) out += c;
		else if (out.back() != '_') out += '_';
	}
	while (out.size() > 2 && out.back() == '_') out.pop_back();
	return out;
}

Term rename(const Term& t, const CAProgram& p) {
	if (const VariableDecl* d = p.find_variable(t)) return Term::variable(clp_name(d->var));
	Term r = t;
	for (Term& a : r.args) a = rename(a, p);
	return r;
}

void collect(const Term& t, const CAProgram& p, std::vector<Term>& out) {
	if (const VariableDecl* d = p.find_variable(t)) {
		if (std::find(out.begin(), out.end(), d->var) == out.end()) out.push_back(d->var);
		return;
	}
	for (const Term& a : t.args) collect(a, p, out);
}

} // namespace

std::string format_answer(const CAProgram& p, const ExtendedAnswerSet& e) {
	std::vector<std::string> items;
	for (Atom a = 0; a < e.atoms.size(); ++a)
		if (e.atoms[a] && p.visible(a)) items.push_back(p.display(a));
	std::sort(items.begin(), items.end());
	std::vector<std::string> bindings;
	for (const auto& [v, x] : e.alpha) bindings.push_back(to_string(v) + "=" + std::to_string(x));
	std::sort(bindings.begin(), bindings.end());
	items.insert(items.end(), bindings.begin(), bindings.end());
	if (items.empty()) return "{}";
	std::string out = "{ ";
	for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
	return out + " }";
}

std::string emit_clp(const CAProgram& p, const Interpretation& m, Semantics s) {
	std::vector<Term> posted = p.range_constraints;
	for (Atom c : p.constraints) {
		if (m[c]) posted.push_back(p.gamma.at(c));
		else if (s == Semantics::Full) posted.push_back(complement(p.gamma.at(c)));
	}
	std::vector<Term> vars;
	for (const Term& c : posted) collect(c, p, vars);

	std::ostringstream out;
	out << "solve([";
	for (std::size_t i = 0; i < vars.size(); ++i) out << (i ? "," : "") << to_string(vars[i]) << "," << clp_name(vars[i]);
	out << "]) :- ";
	for (const Term& c : posted) out << to_display_string(rename(c, p)) << ", ";
	out << "labeling([";
	for (std::size_t i = 0; i < vars.size(); ++i) out << (i ? "," : "") << clp_name(vars[i]);
	out << "]).";
	return out.str();
}

} // namespace ezcasp
