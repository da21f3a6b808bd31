// SPDX-License-Identifier: Apache-2.0
#include "ezcasp/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ezcasp {

Term Term::integer(std::int64_t v) {
	Term t;
	t.kind = TermKind::Integer;
	t.number = v;
	return t;
}

Term Term::symbol(std::string n) {
	Term t;
	t.kind = TermKind::Symbol;
	t.name = std::move(n);
	return t;
}

Term Term::variable(std::string n) {
	Term t;
	t.kind = TermKind::Variable;
	t.name = std::move(n);
	return t;
}

Term Term::function(std::string n, std::vector<Term> args, bool infix) {
	Term t;
	t.kind = TermKind::Function;
	t.name = std::move(n);
	t.args = std::move(args);
	t.infix = infix;
	return t;
}

Term Term::list(std::vector<Term> elems) {
	Term t;
	t.kind = TermKind::List;
	t.args = std::move(elems);
	return t;
}

Term Term::intensional(std::string functor, std::vector<Term> prefix, int arity) {
	Term t;
	t.kind = TermKind::IntensionalList;
	t.name = std::move(functor);
	t.args = std::move(prefix);
	t.arity = arity;
	return t;
}

Term Term::range(Term lo, Term hi) {
	Term t;
	t.kind = TermKind::Range;
	t.args = {std::move(lo), std::move(hi)};
	return t;
}

Term Term::op(std::string token) {
	Term t;
	t.kind = TermKind::Operator;
	t.name = std::move(token);
	return t;
}

bool Term::ground() const {
	if (kind == TermKind::Variable) return false;
	return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.ground(); });
}

void Term::collect_variables(std::vector<std::string>& out) const {
	if (kind == TermKind::Variable) {
		if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
		return;
	}
	for (const auto& a : args) a.collect_variables(out);
}

bool operator==(const Term& a, const Term& b) {
	return a.kind == b.kind && a.number == b.number && a.name == b.name && a.arity == b.arity &&
	       a.infix == b.infix && a.args == b.args;
}

namespace {

int kind_rank(TermKind k) {
	switch (k) {
	case TermKind::Integer: return 0;
	case TermKind::Symbol: return 1;
	case TermKind::Function: return 2;
	case TermKind::List: return 3;
	case TermKind::IntensionalList: return 4;
	case TermKind::Range: return 5;
	case TermKind::Operator: return 6;
	case TermKind::Variable: return 7;
	}
	return 8;
}

int compare_args(const std::vector<Term>& a, const std::vector<Term>& b) {
	const std::size_t n = std::min(a.size(), b.size());
	for (std::size_t i = 0; i < n; ++i) {
		if (int c = compare_terms(a[i], b[i]); c != 0) return c;
	}
	if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
	return 0;
}

} // namespace

int compare_terms(const Term& a, const Term& b) {
	const int ra = kind_rank(a.kind), rb = kind_rank(b.kind);
	if (ra != rb) return ra < rb ? -1 : 1;
	switch (a.kind) {
	case TermKind::Integer:
		return a.number < b.number ? -1 : (a.number > b.number ? 1 : 0);
	case TermKind::Symbol:
	case TermKind::Variable:
	case TermKind::Operator:
		return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
	case TermKind::Function:
		if (a.name != b.name) return a.name < b.name ? -1 : 1;
		if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
		return compare_args(a.args, b.args);
	case TermKind::IntensionalList:
		if (a.name != b.name) return a.name < b.name ? -1 : 1;
		if (a.arity != b.arity) return a.arity < b.arity ? -1 : 1;
		return compare_args(a.args, b.args);
	case TermKind::List:
	case TermKind::Range:
		return compare_args(a.args, b.args);
	}
	return 0;
}

namespace {

struct OpEntry {
	const char* token;
	const char* canonical;
	std::size_t arity;
};

constexpr OpEntry kOperators[] = {
    {">", "gt", 2},     {"<", "lt", 2},       {">=", "geq", 2},   {"<=", "leq", 2},
    {"=", "eq", 2},     {"!=", "neq", 2},     {"+", "plus", 2},   {"-", "minus", 2},
    {"*", "times", 2},  {"/", "div", 2},      {"\\/", "or", 2},   {"/\\", "and", 2},
    {"\\", "xor", 2},   {"->", "impl", 2},    {"<->", "equiv", 2}, {"-", "uminus", 1},
    {"!", "neg", 1},
};

void print_infix_child(std::ostringstream& os, const Term& child, bool display);

void print(std::ostringstream& os, const Term& t, bool display) {
	switch (t.kind) {
	case TermKind::Integer: os << t.number; return;
	case TermKind::Symbol:
	case TermKind::Variable:
	case TermKind::Operator: os << t.name; return;
	case TermKind::Range:
		print_infix_child(os, t.args[0], display);
		os << "..";
		print_infix_child(os, t.args[1], display);
		return;
	case TermKind::List:
		os << '[';
		for (std::size_t i = 0; i < t.args.size(); ++i) {
			if (i) os << ',';
			print(os, t.args[i], display);
		}
		os << ']';
		return;
	case TermKind::IntensionalList:
		os << '[' << t.name;
		if (!t.args.empty()) {
			os << '(';
			for (std::size_t i = 0; i < t.args.size(); ++i) {
				if (i) os << ',';
				print(os, t.args[i], display);
			}
			os << ')';
		}
		os << '/' << t.arity << ']';
		return;
	case TermKind::Function: {
		std::string token;
		if (t.infix) token = t.name;
		else if (display) token = operator_token_for(t.name, t.args.size());
		if (!token.empty()) {
			if (t.args.size() == 1) {
				os << token;
				print_infix_child(os, t.args[0], display);
			} else {
				print_infix_child(os, t.args[0], display);
				os << ' ' << token << ' ';
				print_infix_child(os, t.args[1], display);
			}
			return;
		}
		os << t.name << '(';
		for (std::size_t i = 0; i < t.args.size(); ++i) {
			if (i) os << ',';
			print(os, t.args[i], display);
		}
		os << ')';
		return;
	}
	}
}

void print_infix_child(std::ostringstream& os, const Term& child, bool display) {
	const bool is_op = child.kind == TermKind::Function &&
	                   (child.infix || (display && !operator_token_for(child.name, child.args.size()).empty()));
	const bool negative_literal = child.kind == TermKind::Integer && child.number < 0;
	if (is_op || child.kind == TermKind::Range || negative_literal) {
		os << '(';
		print(os, child, display);
		os << ')';
	} else {
		print(os, child, display);
	}
}

} // namespace

std::string to_string(const Term& t) {
	std::ostringstream os;
	print(os, t, false);
	return os.str();
}

std::string to_display_string(const Term& t) {
	std::ostringstream os;
	print(os, t, true);
	return os.str();
}

std::size_t hash_term(const Term& t) {
	std::size_t h = std::hash<int>{}(static_cast<int>(t.kind));
	auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
	mix(std::hash<std::int64_t>{}(t.number));
	mix(std::hash<std::string>{}(t.name));
	mix(static_cast<std::size_t>(t.arity));
	mix(t.infix ? 1 : 0);
	for (const auto& a : t.args) mix(hash_term(a));
	return h;
}

std::string canonical_operator_name(const std::string& token, std::size_t arity) {
	for (const auto& e : kOperators) {
		if (token == e.token && arity == e.arity) return e.canonical;
	}
	return {};
}

std::string operator_token_for(const std::string& canonical, std::size_t arity) {
	for (const auto& e : kOperators) {
		if (canonical == e.canonical && arity == e.arity) return e.token;
	}
	return {};
}

bool is_comparison_token(const std::string& token) {
	return token == "=" || token == "!=" || token == "<" || token == "<=" || token == ">" || token == ">=";
}

bool is_arithmetic_token(const std::string& token) {
	return token == "+" || token == "-" || token == "*" || token == "/";
}

} // namespace ezcasp
