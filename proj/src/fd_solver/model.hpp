// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "ezcasp/fd_solver.hpp"

namespace ezcasp::fd {

constexpr std::int64_t kInf = std::int64_t{1} << 60;

struct Interval {
	std::int64_t lo = 0;
	std::int64_t hi = -1;
	bool empty() const { return lo > hi; }
	bool fixed() const { return lo == hi; }
};

struct Expr {
	enum Kind { Const, Var, Add, Sub, Mul, Div, Neg } kind = Const;
	std::int64_t value = 0;
	int var = -1;
	int a = -1;
	int b = -1;
};

struct GlobalArg {
	enum Kind { Value, List, Op } kind = Value;
	int expr = -1;
	std::vector<int> list;
	std::string op;
};

struct Global {
	std::string name; // check semantics; serialized is stored as cumulative
	std::vector<GlobalArg> args;
};

struct Formula {
	enum Kind { Cmp, And, Or, Xor, Impl, Equiv, Not, Global } kind = Cmp;
	std::string op;
	int lhs = -1;
	int rhs = -1;
	std::vector<int> kids;
	int global = -1;
};

struct Model {
	explicit Model(const CSPInstance& csp);

	const CSPInstance& csp;
	std::vector<Expr> exprs;
	std::vector<Formula> formulas;
	std::vector<Global> globals;
	std::vector<int> roots;

private:
	int add_expr(Expr e);
	int add_formula(Formula f);
	int compile_expr(const Term& t);
	int compile_formula(const Term& t);
	int linear(const std::vector<int>& coeffs, const std::vector<int>& xs);
};

enum class Truth { True, False, Unknown };

class Propagator {
public:
	Propagator(const Model& m, std::vector<Domain>& d) : m_(m), d_(d) {}
	bool fixpoint();

	Interval eval(int e) const;
	bool narrow(int e, Interval target);
	Truth status(int f) const;
	bool enforce(int f, bool polarity);

private:
	struct Lit {
		int f;
		bool pol;
	};
	bool clause(std::initializer_list<Lit> lits);
	bool clause(const std::vector<Lit>& lits);
	bool revise(const std::string& op, int lhs, int rhs);
	bool remove_value(int e, std::int64_t v);
	bool may_equal(int e, std::int64_t v) const;
	bool all_fixed(const Global& g) const;
	Truth global_status(const Global& g) const;
	bool run_global(const Global& g);
	bool all_different(const std::vector<int>& xs);
	bool hall_intervals(const std::vector<int>& xs);
	bool count(const Global& g);
	bool element(const Global& g);
	bool extremum(const Global& g, bool minimum);
	bool assignment(const Global& g);
	bool circuit(const Global& g);
	bool cumulative(const Global& g);
	void mark(bool c) { changed_ = changed_ || c; }

	const Model& m_;
	std::vector<Domain>& d_;
	bool changed_ = false;
};

} // namespace ezcasp::fd
