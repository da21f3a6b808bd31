// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "ezcasp/asp_core.hpp"

namespace ezcasp {

Atom RegularProgram::intern(const std::string& name) {
	if (index_.empty() && !atom_names.empty()) {
		for (Atom a = 0; a < atom_names.size(); ++a) index_.emplace(atom_names[a], a);
	}
	auto [it, inserted] = index_.emplace(name, static_cast<Atom>(atom_names.size()));
	if (inserted) atom_names.push_back(name);
	return it->second;
}

std::optional<Atom> RegularProgram::find(const std::string& name) const {
	if (index_.size() == atom_names.size()) {
		auto it = index_.find(name);
		if (it == index_.end()) return std::nullopt;
		return it->second;
	}
	auto it = std::find(atom_names.begin(), atom_names.end(), name);
	if (it == atom_names.end()) return std::nullopt;
	return static_cast<Atom>(it - atom_names.begin());
}

void RegularProgram::add_rule(Rule r) {
	auto dedupe = [](std::vector<Atom>& v) {
		std::vector<Atom> out;
		for (Atom a : v)
			if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
		v = std::move(out);
	};
	dedupe(r.pos);
	dedupe(r.neg);
	dedupe(r.dneg);
	rules.push_back(std::move(r));
}

Rule denial_rule(const Denial& d) {
	Rule r;
	for (Lit l : d) (l.positive() ? r.pos : r.neg).push_back(l.atom());
	return r;
}

void RegularProgram::add_denial(const Denial& d) { add_rule(denial_rule(d)); }

std::vector<Clause> clausify(const RegularProgram& p) {
	std::vector<Clause> out;
	out.reserve(p.rules.size());
	for (const auto& r : p.rules) {
		Clause c;
		auto add = [&c](Lit l) {
			if (std::find(c.begin(), c.end(), l) == c.end()) c.push_back(l);
		};
		if (r.head) add(Lit::pos(*r.head));
		for (Atom a : r.pos) add(Lit::neg(a));
		for (Atom a : r.neg) add(Lit::pos(a));
		for (Atom a : r.dneg) add(Lit::neg(a));
		out.push_back(std::move(c));
	}
	return out;
}

namespace {

bool body_holds(const Rule& r, const Interpretation& x) {
	for (Atom a : r.pos)
		if (!x[a]) return false;
	for (Atom a : r.neg)
		if (x[a]) return false;
	for (Atom a : r.dneg)
		if (!x[a]) return false;
	return true;
}

} // namespace

RegularProgram reduct(const RegularProgram& p, const Interpretation& x) {
	RegularProgram out;
	out.atom_names = p.atom_names;
	for (const auto& r : p.rules) {
		if (!body_holds(r, x)) continue;
		Rule k;
		k.head = r.head;
		k.pos = r.pos;
		out.rules.push_back(std::move(k));
	}
	return out;
}

Interpretation least_model(const RegularProgram& p) {
	const std::size_t n = p.num_atoms();
	Interpretation model(n, false);
	std::vector<std::size_t> missing(p.rules.size());
	std::vector<std::vector<std::size_t>> watch(n);
	std::vector<Atom> queue;
	for (std::size_t i = 0; i < p.rules.size(); ++i) {
		const Rule& r = p.rules[i];
		if (!r.head) continue;
		missing[i] = r.pos.size();
		for (Atom a : r.pos) watch[a].push_back(i);
		if (missing[i] == 0 && !model[*r.head]) {
			model[*r.head] = true;
			queue.push_back(*r.head);
		}
	}
	while (!queue.empty()) {
		Atom a = queue.back();
		queue.pop_back();
		for (std::size_t i : watch[a]) {
			if (--missing[i] == 0) {
				Atom h = *p.rules[i].head;
				if (!model[h]) {
					model[h] = true;
					queue.push_back(h);
				}
			}
		}
	}
	return model;
}

bool is_answer_set(const RegularProgram& p, const Interpretation& x) {
	RegularProgram red = reduct(p, x);
	for (const auto& r : red.rules)
		if (!r.head) return false;
	return least_model(red) == x;
}

bool satisfies_clauses(const std::vector<Clause>& clauses, const Interpretation& x) {
	for (const auto& c : clauses) {
		bool sat = false;
		for (Lit l : c) {
			if (x[l.atom()] == l.positive()) {
				sat = true;
				break;
			}
		}
		if (!sat) return false;
	}
	return true;
}

std::vector<Interpretation> enumerate_answer_sets_bruteforce(const RegularProgram& p, std::size_t max_atoms) {
	const std::size_t n = p.num_atoms();
	if (n > max_atoms || n >= 63)
		throw Error("brute-force enumeration bound exceeded: " + std::to_string(n) + " atoms");
	std::vector<Interpretation> out;
	Interpretation x(n);
	for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
		for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1u;
		if (is_answer_set(p, x)) out.push_back(x);
	}
	return out;
}

} // namespace ezcasp
