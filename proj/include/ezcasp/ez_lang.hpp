// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ezcasp/term.hpp"

namespace ezcasp {

struct SourcePos {
	int line = 0;
	int column = 0;
	friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

class ParseError : public Error {
public:
	ParseError(const std::string& msg, SourcePos pos);
	SourcePos pos;
};

/// Constraint marks a bar atom |beta| written directly in a rule body.
enum class Reserved { None, CspDomain, CspVar, Required, Constraint };

struct EzAtom {
	Term term; // Symbol or prefix Function; the expression itself for Constraint
	Reserved reserved = Reserved::None;

	const std::string& relation() const { return term.name; }
	std::size_t arity() const { return term.args.size(); }
	friend bool operator==(const EzAtom&, const EzAtom&) = default;
};

EzAtom make_atom(Term term);

enum class Negation { None = 0, Not = 1, NotNot = 2 };

struct Aggregate;

/// One body element: a (possibly negated) atom, a built-in comparison, or an aggregate.
struct BodyLiteral {
	enum class Kind { Atom, Builtin, Aggregate };
	Kind kind = Kind::Atom;
	Negation negation = Negation::None;
	EzAtom atom;     // Kind::Atom
	Term builtin;    // Kind::Builtin: infix comparison Function
	std::vector<Aggregate> aggregate; // Kind::Aggregate, exactly one element

	friend bool operator==(const BodyLiteral&, const BodyLiteral&);
};

struct AggregateElement {
	BodyLiteral literal; // atom literal, possibly negated
	Term weight;         // integer 1 for cardinality elements
	std::vector<BodyLiteral> condition;
	friend bool operator==(const AggregateElement&, const AggregateElement&) = default;
};

/// `L #sum[...] U` or `L { ... } U` in a rule body.
struct Aggregate {
	bool is_sum = true; // false for the cardinality form
	std::optional<Term> lower;
	std::optional<Term> upper;
	std::vector<AggregateElement> elements;
	friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct ChoiceElement {
	EzAtom atom;
	std::vector<BodyLiteral> condition;
	friend bool operator==(const ChoiceElement&, const ChoiceElement&) = default;
};

struct Head {
	enum class Kind { None, Atom, Choice };
	Kind kind = Kind::None;
	EzAtom atom;
	std::optional<Term> lower;
	std::optional<Term> upper;
	std::vector<ChoiceElement> elements;
	friend bool operator==(const Head&, const Head&) = default;
};

struct EzRule {
	Head head;
	std::vector<BodyLiteral> body;
	SourcePos pos;

	bool is_denial() const { return head.kind == Head::Kind::None; }
	bool is_fact() const { return head.kind == Head::Kind::Atom && body.empty(); }
	/// Structural equality, ignoring source positions.
	friend bool operator==(const EzRule& a, const EzRule& b) { return a.head == b.head && a.body == b.body; }
};

struct Signature {
	std::vector<std::string> constants;
	std::vector<std::string> variables;
	std::vector<std::string> functions; // name/arity
	std::vector<std::string> relations; // name/arity
};

struct EzProgram {
	std::vector<EzRule> rules;

	Signature signature() const;
	std::size_t count_facts(Reserved r) const;
	friend bool operator==(const EzProgram& a, const EzProgram& b) { return a.rules == b.rules; }
};

/// Parses EZ text. `%` starts a line comment; every rule ends with `.`.
EzProgram parse(std::string_view text);

/// Rewrites operators inside required(...) arguments into canonical prefix functors.
/// Idempotent.
EzProgram preprocess(const EzProgram& p);

std::string pretty_print(const EzProgram& p);
std::string pretty_print(const EzRule& r);
std::string pretty_print(const BodyLiteral& l);

} // namespace ezcasp
