// SPDX-License-Identifier: Apache-2.0
#include "model.hpp"

#include "internal.hpp"

namespace ezcasp::fd {

Model::Model(const CSPInstance& c) : csp(c) {
	for (const Term& t : csp.constraints) roots.push_back(compile_formula(t));
}

int Model::add_expr(Expr e) {
	exprs.push_back(e);
	return static_cast<int>(exprs.size()) - 1;
}

int Model::add_formula(Formula f) {
	formulas.push_back(std::move(f));
	return static_cast<int>(formulas.size()) - 1;
}

int Model::compile_expr(const Term& t) {
	if (t.is_integer()) return add_expr({Expr::Const, t.number});
	if (auto i = csp.index_of(t)) return add_expr({Expr::Var, 0, static_cast<int>(*i)});
	if (t.kind == TermKind::Function && is_arith(t.name, t.args.size())) {
		const int a = compile_expr(t.args[0]);
		if (t.args.size() == 1) return add_expr({Expr::Neg, 0, -1, a});
		const int b = compile_expr(t.args[1]);
		Expr::Kind k = t.name == "plus" ? Expr::Add : t.name == "minus" ? Expr::Sub : t.name == "times" ? Expr::Mul : Expr::Div;
		return add_expr({k, 0, -1, a, b});
	}
	throw Error("unsupported term in constraint: " + to_string(t));
}

int Model::linear(const std::vector<int>& coeffs, const std::vector<int>& xs) {
	int acc = -1;
	for (std::size_t i = 0; i < xs.size(); ++i) {
		const int term = coeffs.empty() ? xs[i] : add_expr({Expr::Mul, 0, -1, coeffs[i], xs[i]});
		acc = acc < 0 ? term : add_expr({Expr::Add, 0, -1, acc, term});
	}
	return acc < 0 ? add_expr({Expr::Const, 0}) : acc;
}

int Model::compile_formula(const Term& t) {
	if (t.kind != TermKind::Function) throw Error("not a constraint: " + to_string(t));
	const std::string& n = t.name;
	if (is_comparison_name(n) && t.args.size() == 2) {
		Formula f;
		f.kind = Formula::Cmp;
		f.op = n;
		f.lhs = compile_expr(t.args[0]);
		f.rhs = compile_expr(t.args[1]);
		return add_formula(std::move(f));
	}
	if (is_connective(n, t.args.size())) {
		Formula f;
		f.kind = n == "neg" ? Formula::Not
		         : n == "and" ? Formula::And
		         : n == "or"  ? Formula::Or
		         : n == "xor" ? Formula::Xor
		         : n == "impl" ? Formula::Impl
		                       : Formula::Equiv;
		for (const auto& a : t.args) f.kids.push_back(compile_formula(a));
		return add_formula(std::move(f));
	}
	const auto& shape = global_shape(n);
	if (shape.size() != t.args.size())
		throw Error(n + " expects " + std::to_string(shape.size()) + " arguments: " + to_string(t));
	Global g;
	g.name = n;
	for (std::size_t i = 0; i < shape.size(); ++i) {
		const Term& a = t.args[i];
		GlobalArg ga;
		switch (shape[i]) {
		case ArgShape::List:
			if (a.kind != TermKind::List) throw Error(n + ": argument " + std::to_string(i + 1) + " must be a list");
			ga.kind = GlobalArg::List;
			for (const auto& x : a.args) ga.list.push_back(compile_expr(x));
			break;
		case ArgShape::Op:
			if (a.kind != TermKind::Symbol || !is_comparison_name(a.name))
				throw Error(n + ": argument " + std::to_string(i + 1) + " must be a comparison operator");
			ga.kind = GlobalArg::Op;
			ga.op = a.name;
			break;
		case ArgShape::Value: ga.expr = compile_expr(a); break;
		}
		g.args.push_back(std::move(ga));
	}
	auto same_length = [&](std::size_t x, std::size_t y) {
		if (g.args[x].list.size() != g.args[y].list.size()) throw Error(n + ": list lengths differ in " + to_string(t));
	};
	if (n == "assignment" || n == "scalar_product" || n == "serialized") same_length(0, 1);
	if (n == "cumulative") same_length(0, 1), same_length(0, 2);
	if (n == "disjoint2") same_length(0, 1), same_length(0, 2), same_length(0, 3);

	if (n == "sum" || n == "scalar_product") {
		Formula f;
		f.kind = Formula::Cmp;
		if (n == "sum") {
			f.lhs = linear({}, g.args[0].list);
			f.op = g.args[1].op;
			f.rhs = g.args[2].expr;
		} else {
			f.lhs = linear(g.args[0].list, g.args[1].list);
			f.op = g.args[2].op;
			f.rhs = g.args[3].expr;
		}
		return add_formula(std::move(f));
	}
	if (n == "disjoint2") {
		Formula all;
		all.kind = Formula::And;
		const auto &x = g.args[0].list, &w = g.args[1].list, &y = g.args[2].list, &h = g.args[3].list;
		auto leq = [&](int a, int b, int c) {
			Formula f;
			f.kind = Formula::Cmp;
			f.op = "leq";
			f.lhs = add_expr({Expr::Add, 0, -1, a, b});
			f.rhs = c;
			return add_formula(std::move(f));
		};
		for (std::size_t i = 0; i < x.size(); ++i)
			for (std::size_t j = i + 1; j < x.size(); ++j) {
				Formula apart;
				apart.kind = Formula::Or;
				apart.kids = {leq(x[i], w[i], x[j]), leq(x[j], w[j], x[i]), leq(y[i], h[i], y[j]), leq(y[j], h[j], y[i])};
				all.kids.push_back(add_formula(std::move(apart)));
			}
		return add_formula(std::move(all));
	}
	if (n == "serialized") {
		GlobalArg ones;
		ones.kind = GlobalArg::List;
		const int one = add_expr({Expr::Const, 1});
		ones.list.assign(g.args[0].list.size(), one);
		GlobalArg cap;
		cap.expr = one;
		g.name = "cumulative";
		g.args.push_back(ones);
		g.args.push_back(cap);
	}
	globals.push_back(std::move(g));
	Formula f;
	f.kind = Formula::Global;
	f.global = static_cast<int>(globals.size()) - 1;
	return add_formula(std::move(f));
}

} // namespace ezcasp::fd
