// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ezcasp/asp_core.hpp"
#include "ezcasp/ez_lang.hpp"

namespace ezcasp {

struct GroundOptions {
	std::int64_t default_lower = 0;
	std::int64_t default_upper = std::int64_t{1} << 20;
	std::size_t max_ground_rules = 2'000'000;
};

/// Declared constraint variable. range_free marks 1-argument cspvar declarations.
struct VariableDecl {
	Term var;
	std::int64_t lower = 0;
	std::int64_t upper = 0;
	bool range_free = false;
};

struct DomainDescriptor {
	std::string kind = "fd";
	std::int64_t default_lower = 0;
	std::int64_t default_upper = std::int64_t{1} << 20;
};

enum class AtomKind {
	Regular,
	Required,   // required(beta)
	Constraint, // beta, a member of C
	Auxiliary,  // introduced by the aggregate translation
	Synthetic,  // required(v >= l) produced for a rule-derived cspvar
};

/// <Pi, C, gamma, D> together with the bookkeeping needed to print answers.
struct CAProgram {
	RegularProgram pi;
	std::vector<Atom> constraints;       // C, in order of first occurrence
	std::map<Atom, Term> gamma;          // defined exactly on C
	std::vector<AtomKind> kind;          // per atom
	std::vector<Term> atom_term;         // ground atom (regular, required) or expression (constraint)
	std::vector<VariableDecl> variables; // V, sorted by term order
	std::vector<Term> range_constraints; // always-posted ranges from cspvar facts
	DomainDescriptor domain;

	bool is_constraint(Atom a) const { return kind[a] == AtomKind::Constraint; }
	/// Atoms shown in answer-set output: regular atoms and user-written required atoms.
	bool visible(Atom a) const { return kind[a] == AtomKind::Regular || kind[a] == AtomKind::Required; }
	/// Pi[C]: Pi plus a choice rule {c} for every constraint atom.
	RegularProgram asp_abstraction() const;
	/// Display name: required atoms and constraint atoms use infix operators.
	std::string display(Atom a) const;
	const VariableDecl* find_variable(const Term& v) const;
	/// Structural checks of the CA program definition; throws on violation.
	void check_invariants() const;
};

/// Builds a CA program directly from parts (used by tests and hand-made instances).
class CAProgramBuilder {
public:
	Atom regular(const std::string& name);
	/// Constraint atom for the canonical constraint term t (variables must be declared).
	Atom constraint(const Term& t);
	void rule(std::optional<Atom> head, std::vector<Atom> pos = {}, std::vector<Atom> neg = {},
	          std::vector<Atom> dneg = {});
	void variable(const Term& v, std::int64_t lo, std::int64_t hi);
	CAProgram build();

private:
	CAProgram p_;
};

/// Bottom-up instantiation; builtins are evaluated and removed.
EzProgram ground(const EzProgram& p, const GroundOptions& opts = {});

/// Variables declared by cspvar heads of a ground program, sorted by term order.
std::vector<VariableDecl> collect_variables(const EzProgram& ground_program, const GroundOptions& opts = {});

/// Replaces intensional lists inside required atoms by extensional lists.
EzProgram expand_lists(const EzProgram& ground_program, const std::vector<VariableDecl>& decls,
                       std::vector<std::string>* warnings = nullptr);

CAProgram to_ca_program(const EzProgram& expanded, const GroundOptions& opts = {});

/// parse, preprocess, ground, expand_lists, to_ca_program.
CAProgram compile(std::string_view text, const GroundOptions& opts = {}, std::vector<std::string>* warnings = nullptr);

/// name/arity of every domain predicate of p, sorted.
std::vector<std::string> domain_predicates(const EzProgram& p);

/// Global-constraint names accepted inside required(...).
bool is_global_constraint_name(const std::string& name);

} // namespace ezcasp
