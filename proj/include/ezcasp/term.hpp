// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ezcasp {

/// Base class for every diagnostic raised by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

enum class TermKind {
	Integer,
	Symbol,          // lowercase constant
	Variable,        // non-constraint variable, uppercase-initial
	Function,        // functor(args...), also infix operator applications
	List,            // [t1, ..., tn]
	IntensionalList, // [g(t1..tm)/k]
	Range,           // lo..hi
	Operator,        // bare comparison token used as an argument, e.g. sum(V, <=, E)
};

/// A term of the EZ signature.
///
/// Function terms built from operator syntax carry `infix = true` and keep the
/// operator token as their name (">=", "+", "\\/", ...). After preprocessing,
/// those inside required(...) become ordinary prefix functors (geq, plus, or, ...).
struct Term {
	TermKind kind = TermKind::Integer;
	std::int64_t number = 0;
	std::string name;
	std::vector<Term> args;
	int arity = 0; // intensional lists only
	bool infix = false;

	static Term integer(std::int64_t v);
	static Term symbol(std::string n);
	static Term variable(std::string n);
	static Term function(std::string n, std::vector<Term> args, bool infix = false);
	static Term list(std::vector<Term> elems);
	static Term intensional(std::string functor, std::vector<Term> prefix, int arity);
	static Term range(Term lo, Term hi);
	static Term op(std::string token);

	bool is_integer() const { return kind == TermKind::Integer; }
	bool is_symbol() const { return kind == TermKind::Symbol; }
	bool is_variable() const { return kind == TermKind::Variable; }
	bool is_function() const { return kind == TermKind::Function; }
	bool is_list() const { return kind == TermKind::List; }
	bool is_atom_shaped() const { return kind == TermKind::Symbol || (kind == TermKind::Function && !infix); }

	bool ground() const;
	void collect_variables(std::vector<std::string>& out) const;

	friend bool operator==(const Term& a, const Term& b);
	friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
};

/// Lexicographic order on terms: integers numerically, then symbols by name,
/// then compounds by (functor, arity, args left to right), then the remaining kinds.
int compare_terms(const Term& a, const Term& b);

struct TermLess {
	bool operator()(const Term& a, const Term& b) const { return compare_terms(a, b) < 0; }
};

/// Surface syntax. Infix functions print with operators, everything else in
/// prefix form; the output re-parses to an equal term.
std::string to_string(const Term& t);

std::size_t hash_term(const Term& t);

/// Infix token -> canonical functor (">=" -> "geq"). Empty when unknown.
std::string canonical_operator_name(const std::string& token, std::size_t arity);
/// Canonical functor -> infix token, for display ("geq" -> ">="). Empty when not an operator name.
std::string operator_token_for(const std::string& canonical, std::size_t arity);

bool is_comparison_token(const std::string& token);
bool is_arithmetic_token(const std::string& token);

/// Renders a canonical constraint term with infix operators, e.g. geq(x,12) -> "x >= 12".
std::string to_display_string(const Term& t);

} // namespace ezcasp
