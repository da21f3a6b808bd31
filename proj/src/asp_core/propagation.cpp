// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "ezcasp/asp_core.hpp"

namespace ezcasp {

bool Record::contains(Lit l) const {
	if (is_true(l)) return true;
	return clash_ && !entries_.empty() && entries_.back().lit == l;
}

void Record::push(Lit l, bool decision) {
	std::int8_t& v = value_[l.atom()];
	const std::int8_t want = l.negative() ? -1 : 1;
	if (v == 0) v = want;
	else if (v != want) clash_ = true;
	entries_.push_back(RecordEntry{l, decision});
}

bool Record::complete() const {
	return std::none_of(value_.begin(), value_.end(), [](std::int8_t v) { return v == 0; });
}

bool Record::has_decision() const {
	return std::any_of(entries_.begin(), entries_.end(), [](const RecordEntry& e) { return e.decision; });
}

std::size_t Record::decision_count() const {
	return static_cast<std::size_t>(
	    std::count_if(entries_.begin(), entries_.end(), [](const RecordEntry& e) { return e.decision; }));
}

void Record::backtrack() {
	std::size_t i = entries_.size();
	while (i > 0 && !entries_[i - 1].decision) --i;
	if (i == 0) throw Error("backtrack without a decision literal");
	const Lit flipped = ~entries_[i - 1].lit;
	while (entries_.size() >= i) {
		const RecordEntry e = entries_.back();
		entries_.pop_back();
		if (clash_) clash_ = false; // the clashing entry never owned the value
		else value_[e.lit.atom()] = 0;
	}
	bottom_ = false;
	push(flipped, false);
}

void Record::clear() {
	entries_.clear();
	std::fill(value_.begin(), value_.end(), 0);
	bottom_ = false;
	clash_ = false;
}

void ClauseDb::add(Clause c) {
	const auto idx = static_cast<std::uint32_t>(clauses_.size());
	for (Lit l : c) {
		if (l.code() >= occurs_.size()) occurs_.resize((l.atom() + 1) * 2);
		occurs_[l.code()].push_back(idx);
	}
	clauses_.push_back(std::move(c));
}

ClauseDb::Status ClauseDb::status(std::uint32_t clause, const Record& m, Lit* unit) const {
	std::size_t open = 0;
	for (Lit l : clauses_[clause]) {
		if (m.is_true(l)) return Status::Satisfied;
		if (!m.is_false(l)) {
			++open;
			if (unit) *unit = l;
		}
	}
	if (open == 0) return Status::Falsified;
	return open == 1 ? Status::Unit : Status::Unresolved;
}

UnitResult find_unit(const ClauseDb& db, const Record& m) {
	UnitResult res;
	for (std::uint32_t i = 0; i < db.clauses().size(); ++i) {
		Lit l;
		switch (db.status(i, m, &l)) {
		case ClauseDb::Status::Unit:
			if (res.kind == UnitResult::Kind::None) res = UnitResult{UnitResult::Kind::Unit, l, i};
			break;
		case ClauseDb::Status::Falsified:
			if (db.clauses()[i].empty()) return UnitResult{UnitResult::Kind::EmptyClause, Lit(), i};
			return UnitResult{UnitResult::Kind::Conflict, db.clauses()[i].back(), i};
		default: break;
		}
	}
	return res;
}

Record unit_propagate(Record m, const std::vector<Clause>& clauses) {
	ClauseDb db(m.num_atoms());
	for (const auto& c : clauses) db.add(c);
	while (m.consistent()) {
		UnitResult r = find_unit(db, m);
		if (r.kind == UnitResult::Kind::None) break;
		if (r.kind == UnitResult::Kind::EmptyClause) m.push_bottom();
		else m.push(r.lit);
	}
	return m;
}

namespace {

bool contradicted(const Rule& r, const Record& m) {
	for (Atom a : r.pos)
		if (m.value(a) < 0) return true;
	for (Atom a : r.neg)
		if (m.value(a) > 0) return true;
	for (Atom a : r.dneg)
		if (m.value(a) < 0) return true;
	return false;
}

} // namespace

Interpretation greatest_unfounded_set(const RegularProgram& p, const Record& m) {
	const std::size_t n = p.num_atoms();
	Interpretation supported(n, false);
	std::vector<std::size_t> missing(p.rules.size(), 0);
	std::vector<std::vector<std::size_t>> watch(n);
	std::vector<Atom> queue;
	for (std::size_t i = 0; i < p.rules.size(); ++i) {
		const Rule& r = p.rules[i];
		if (!r.head || contradicted(r, m)) continue;
		missing[i] = r.pos.size();
		for (Atom a : r.pos) watch[a].push_back(i);
		if (missing[i] == 0 && !supported[*r.head]) {
			supported[*r.head] = true;
			queue.push_back(*r.head);
		}
	}
	while (!queue.empty()) {
		Atom a = queue.back();
		queue.pop_back();
		for (std::size_t i : watch[a]) {
			if (--missing[i] == 0) {
				Atom h = *p.rules[i].head;
				if (!supported[h]) {
					supported[h] = true;
					queue.push_back(h);
				}
			}
		}
	}
	Interpretation u(n);
	for (std::size_t a = 0; a < n; ++a) u[a] = !supported[a];
	return u;
}

bool is_unfounded(const RegularProgram& p, const Record& m, const Interpretation& u) {
	for (const auto& r : p.rules) {
		if (!r.head || !u[*r.head]) continue;
		if (contradicted(r, m)) continue;
		if (std::any_of(r.pos.begin(), r.pos.end(), [&u](Atom a) { return u[a]; })) continue;
		return false;
	}
	return true;
}

} // namespace ezcasp
