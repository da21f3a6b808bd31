// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ezcasp/term.hpp"

namespace ezcasp {

using Atom = std::uint32_t;

/// Literal over an atom table; packed as atom << 1 | negative.
class Lit {
public:
	Lit() = default;
	static Lit pos(Atom a) { return Lit(a << 1); }
	static Lit neg(Atom a) { return Lit((a << 1) | 1u); }
	static Lit from_code(std::uint32_t c) { return Lit(c); }

	Atom atom() const { return code_ >> 1; }
	bool negative() const { return code_ & 1u; }
	bool positive() const { return !negative(); }
	std::uint32_t code() const { return code_; }
	Lit operator~() const { return Lit(code_ ^ 1u); }

	friend bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
	friend bool operator!=(Lit a, Lit b) { return a.code_ != b.code_; }
	friend bool operator<(Lit a, Lit b) { return a.code_ < b.code_; }

private:
	explicit Lit(std::uint32_t c) : code_(c) {}
	std::uint32_t code_ = 0;
};

/// a0 <- pos, not neg, not not dneg. A missing head is a denial.
struct Rule {
	std::optional<Atom> head;
	std::vector<Atom> pos;
	std::vector<Atom> neg;
	std::vector<Atom> dneg;

	friend bool operator==(const Rule&, const Rule&) = default;
};

/// A denial as a list of body literals: positive literal a for `a`, negative for `not a`.
using Denial = std::vector<Lit>;

struct RegularProgram {
	std::vector<std::string> atom_names;
	std::vector<Rule> rules;

	Atom intern(const std::string& name);
	std::optional<Atom> find(const std::string& name) const;
	std::size_t num_atoms() const { return atom_names.size(); }
	void add_rule(Rule r);
	void add_denial(const Denial& d);

private:
	std::unordered_map<std::string, Atom> index_;
};

/// Denial rule whose body is d.
Rule denial_rule(const Denial& d);

using Clause = std::vector<Lit>;

/// Clause of each rule: a0 v ~pos v neg v ~dneg, duplicates removed.
std::vector<Clause> clausify(const RegularProgram& p);

/// Interpretations are bit vectors indexed by atom.
using Interpretation = std::vector<bool>;

RegularProgram reduct(const RegularProgram& p, const Interpretation& x);
/// Least model of the positive rules of p (denials ignored).
Interpretation least_model(const RegularProgram& p);
bool is_answer_set(const RegularProgram& p, const Interpretation& x);
bool satisfies_clauses(const std::vector<Clause>& clauses, const Interpretation& x);

/// Answer sets by exhaustion over all subsets, ordered by the binary value of the
/// subset (atom 0 least significant).
std::vector<Interpretation> enumerate_answer_sets_bruteforce(const RegularProgram& p, std::size_t max_atoms = 20);

struct RecordEntry {
	Lit lit;
	bool decision = false;
};

/// Sequence of distinct literals, decisions marked, optionally ending in a conflict marker.
class Record {
public:
	explicit Record(std::size_t num_atoms = 0) : value_(num_atoms, 0) {}

	void resize(std::size_t num_atoms) { value_.resize(num_atoms, 0); }
	std::size_t num_atoms() const { return value_.size(); }

	/// +1 true, -1 false, 0 unassigned. For an inconsistent record the first value wins.
	int value(Atom a) const { return value_[a]; }
	bool is_true(Lit l) const { return value_[l.atom()] == (l.negative() ? -1 : 1); }
	bool is_false(Lit l) const { return value_[l.atom()] == (l.negative() ? 1 : -1); }
	bool assigned(Atom a) const { return value_[a] != 0; }
	bool contains(Lit l) const;

	void push(Lit l, bool decision = false);
	void push_bottom() { bottom_ = true; }
	bool has_bottom() const { return bottom_; }
	bool consistent() const { return !bottom_ && !clash_; }
	bool complete() const;
	bool has_decision() const;
	std::size_t decision_count() const;
	/// Backtrack: drop everything after the last decision and flip it.
	void backtrack();
	void clear();

	const std::vector<RecordEntry>& entries() const { return entries_; }
	std::size_t size() const { return entries_.size(); }
	bool empty() const { return entries_.empty() && !bottom_; }

private:
	std::vector<RecordEntry> entries_;
	std::vector<std::int8_t> value_;
	bool bottom_ = false;
	bool clash_ = false;
};

/// Occurrence-indexed clause store for repeated unit propagation.
class ClauseDb {
public:
	explicit ClauseDb(std::size_t num_atoms = 0) : occurs_(2 * num_atoms) {}
	void add(Clause c);
	const std::vector<Clause>& clauses() const { return clauses_; }
	/// Clause indices mentioning literal l.
	const std::vector<std::uint32_t>& occurrences(Lit l) const { return occurs_[l.code()]; }
	std::size_t num_atoms() const { return occurs_.size() / 2; }

	enum class Status { Satisfied, Unresolved, Unit, Falsified };
	Status status(std::uint32_t clause, const Record& m, Lit* unit) const;

private:
	std::vector<Clause> clauses_;
	std::vector<std::vector<std::uint32_t>> occurs_;
};

/// Result of one Unit Propagate step search.
struct UnitResult {
	enum class Kind { None, Unit, Conflict, EmptyClause } kind = Kind::None;
	Lit lit;
	std::uint32_t clause = 0;
};

/// Finds one applicable Unit Propagate step on a consistent record. Conflict means a
/// fully falsified clause: `lit` is the clause literal whose addition makes M inconsistent.
UnitResult find_unit(const ClauseDb& db, const Record& m);

/// Unit propagation to fixpoint; stops at the first conflict.
Record unit_propagate(Record m, const std::vector<Clause>& clauses);

/// Greatest set unfounded on m: complement of the atoms reachable through rules whose
/// bodies are not contradicted by m.
Interpretation greatest_unfounded_set(const RegularProgram& p, const Record& m);

/// Checks the unfounded-set condition for u directly.
bool is_unfounded(const RegularProgram& p, const Record& m, const Interpretation& u);

} // namespace ezcasp
