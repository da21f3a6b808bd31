// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "internal.hpp"
#include "model.hpp"

namespace ezcasp::fd {

namespace {

std::int64_t clamp(__int128 v) {
	if (v > kInf) return kInf;
	if (v < -kInf) return -kInf;
	return static_cast<std::int64_t>(v);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
	std::int64_t q = a / b;
	if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
	return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
	std::int64_t q = a / b;
	if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
	return q;
}

Interval mul(Interval a, Interval b) {
	const __int128 c[] = {static_cast<__int128>(a.lo) * b.lo, static_cast<__int128>(a.lo) * b.hi,
	                      static_cast<__int128>(a.hi) * b.lo, static_cast<__int128>(a.hi) * b.hi};
	return {clamp(*std::min_element(c, c + 4)), clamp(*std::max_element(c, c + 4))};
}

Interval div(Interval a, Interval b) {
	if (b.lo == 0 && b.hi == 0) return {};
	if (b.lo < 0 && b.hi > 0) {
		const std::int64_t m = std::max(std::abs(a.lo), std::abs(a.hi));
		return {-m, m};
	}
	if (b.lo == 0) b.lo = 1;
	if (b.hi == 0) b.hi = -1;
	const std::int64_t c[] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
	return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

/// Values v with c * v in t.
Interval div_target(Interval t, std::int64_t c) {
	auto lo_of = [](std::int64_t x, std::int64_t k) { return x <= -kInf || x >= kInf ? (x > 0) == (k > 0) ? kInf : -kInf : ceil_div(x, k); };
	auto hi_of = [](std::int64_t x, std::int64_t k) { return x <= -kInf || x >= kInf ? (x > 0) == (k > 0) ? kInf : -kInf : floor_div(x, k); };
	if (c > 0) return {lo_of(t.lo, c), hi_of(t.hi, c)};
	return {lo_of(t.hi, c), hi_of(t.lo, c)};
}

} // namespace

Interval Propagator::eval(int id) const {
	const Expr& e = m_.exprs[id];
	switch (e.kind) {
	case Expr::Const: return {e.value, e.value};
	case Expr::Var: {
		const Domain& d = d_[e.var];
		if (d.empty()) return {};
		return {d.min(), d.max()};
	}
	case Expr::Neg: {
		Interval a = eval(e.a);
		if (a.empty()) return a;
		return {-a.hi, -a.lo};
	}
	default: break;
	}
	const Interval a = eval(e.a);
	const Interval b = eval(e.b);
	if (a.empty() || b.empty()) return {};
	switch (e.kind) {
	case Expr::Add: return {clamp(static_cast<__int128>(a.lo) + b.lo), clamp(static_cast<__int128>(a.hi) + b.hi)};
	case Expr::Sub: return {clamp(static_cast<__int128>(a.lo) - b.hi), clamp(static_cast<__int128>(a.hi) - b.lo)};
	case Expr::Mul: return mul(a, b);
	default: return div(a, b);
	}
}

bool Propagator::narrow(int id, Interval t) {
	Interval cur = eval(id);
	const Interval i{std::max(cur.lo, t.lo), std::min(cur.hi, t.hi)};
	if (i.empty()) return false;
	const Expr& e = m_.exprs[id];
	switch (e.kind) {
	case Expr::Const: return true;
	case Expr::Var: {
		Domain& d = d_[e.var];
		mark(d.set_min(i.lo));
		mark(d.set_max(i.hi));
		return !d.empty();
	}
	case Expr::Neg: return narrow(e.a, {-i.hi, -i.lo});
	case Expr::Add: {
		const Interval b = eval(e.b);
		if (!narrow(e.a, {clamp(static_cast<__int128>(i.lo) - b.hi), clamp(static_cast<__int128>(i.hi) - b.lo)}))
			return false;
		const Interval a = eval(e.a);
		return narrow(e.b, {clamp(static_cast<__int128>(i.lo) - a.hi), clamp(static_cast<__int128>(i.hi) - a.lo)});
	}
	case Expr::Sub: {
		const Interval b = eval(e.b);
		if (!narrow(e.a, {clamp(static_cast<__int128>(i.lo) + b.lo), clamp(static_cast<__int128>(i.hi) + b.hi)}))
			return false;
		const Interval a = eval(e.a);
		return narrow(e.b, {clamp(static_cast<__int128>(a.lo) - i.hi), clamp(static_cast<__int128>(a.hi) - i.lo)});
	}
	case Expr::Mul: {
		const Interval a = eval(e.a);
		const Interval b = eval(e.b);
		if (b.fixed()) {
			if (b.lo == 0) return i.lo <= 0 && i.hi >= 0;
			return narrow(e.a, div_target(i, b.lo));
		}
		if (a.fixed()) {
			if (a.lo == 0) return i.lo <= 0 && i.hi >= 0;
			return narrow(e.b, div_target(i, a.lo));
		}
		return true;
	}
	case Expr::Div: return true;
	}
	return true;
}

bool Propagator::may_equal(int id, std::int64_t v) const {
	const Expr& e = m_.exprs[id];
	if (e.kind == Expr::Var) return d_[e.var].contains(v);
	const Interval i = eval(id);
	return i.lo <= v && v <= i.hi;
}

bool Propagator::remove_value(int id, std::int64_t v) {
	const Expr& e = m_.exprs[id];
	if (e.kind == Expr::Var) {
		mark(d_[e.var].remove(v));
		return !d_[e.var].empty();
	}
	const Interval i = eval(id);
	if (i.fixed() && i.lo == v) return false;
	if (i.lo == v) return narrow(id, {v + 1, kInf});
	if (i.hi == v) return narrow(id, {-kInf, v - 1});
	return true;
}

bool Propagator::revise(const std::string& op, int lhs, int rhs) {
	if (op == "gt") return revise("lt", rhs, lhs);
	if (op == "geq") return revise("leq", rhs, lhs);
	Interval l = eval(lhs);
	Interval r = eval(rhs);
	if (l.empty() || r.empty()) return false;
	if (op == "lt" || op == "leq") {
		const std::int64_t gap = op == "lt" ? 1 : 0;
		if (!narrow(lhs, {-kInf, r.hi - gap})) return false;
		l = eval(lhs);
		return narrow(rhs, {l.lo + gap, kInf});
	}
	if (op == "eq") {
		const Interval i{std::max(l.lo, r.lo), std::min(l.hi, r.hi)};
		if (!narrow(lhs, i) || !narrow(rhs, i)) return false;
		l = eval(lhs);
		r = eval(rhs);
		if (r.fixed() && !may_equal(lhs, r.lo)) return false;
		if (l.fixed() && !may_equal(rhs, l.lo)) return false;
		return true;
	}
	// neq
	if (l.fixed() && r.fixed()) return l.lo != r.lo;
	if (r.fixed()) return remove_value(lhs, r.lo);
	if (l.fixed()) return remove_value(rhs, l.lo);
	return true;
}

Truth Propagator::status(int id) const {
	const Formula& f = m_.formulas[id];
	switch (f.kind) {
	case Formula::Cmp: {
		std::string op = f.op;
		int lhs = f.lhs, rhs = f.rhs;
		if (op == "gt" || op == "geq") {
			op = op == "gt" ? "lt" : "leq";
			std::swap(lhs, rhs);
		}
		const Interval l = eval(lhs);
		const Interval r = eval(rhs);
		if (l.empty() || r.empty()) return Truth::False;
		if (op == "lt") return l.hi < r.lo ? Truth::True : l.lo >= r.hi ? Truth::False : Truth::Unknown;
		if (op == "leq") return l.hi <= r.lo ? Truth::True : l.lo > r.hi ? Truth::False : Truth::Unknown;
		Truth eq = Truth::Unknown;
		if (l.fixed() && r.fixed()) eq = l.lo == r.lo ? Truth::True : Truth::False;
		else if (l.hi < r.lo || r.hi < l.lo) eq = Truth::False;
		else if (r.fixed() && !may_equal(lhs, r.lo)) eq = Truth::False;
		else if (l.fixed() && !may_equal(rhs, l.lo)) eq = Truth::False;
		if (op == "eq" || eq == Truth::Unknown) return eq;
		return eq == Truth::True ? Truth::False : Truth::True;
	}
	case Formula::Not: {
		const Truth t = status(f.kids[0]);
		return t == Truth::Unknown ? t : t == Truth::True ? Truth::False : Truth::True;
	}
	case Formula::And:
	case Formula::Or: {
		const Truth dominant = f.kind == Formula::And ? Truth::False : Truth::True;
		bool unknown = false;
		for (int k : f.kids) {
			const Truth t = status(k);
			if (t == dominant) return dominant;
			unknown = unknown || t == Truth::Unknown;
		}
		if (unknown) return Truth::Unknown;
		return dominant == Truth::False ? Truth::True : Truth::False;
	}
	case Formula::Xor:
	case Formula::Impl:
	case Formula::Equiv: {
		const Truth a = status(f.kids[0]);
		const Truth b = status(f.kids[1]);
		if (f.kind == Formula::Impl) {
			if (a == Truth::False || b == Truth::True) return Truth::True;
			if (a == Truth::True && b == Truth::False) return Truth::False;
			return Truth::Unknown;
		}
		if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
		const bool same = a == b;
		return (f.kind == Formula::Equiv) == same ? Truth::True : Truth::False;
	}
	case Formula::Global: return global_status(m_.globals[f.global]);
	}
	return Truth::Unknown;
}

bool Propagator::clause(std::initializer_list<Lit> lits) { return clause(std::vector<Lit>(lits)); }

bool Propagator::clause(const std::vector<Lit>& lits) {
	const Lit* open = nullptr;
	int n_open = 0;
	for (const Lit& l : lits) {
		const Truth t = status(l.f);
		if ((t == Truth::True && l.pol) || (t == Truth::False && !l.pol)) return true;
		if (t == Truth::Unknown) {
			open = &l;
			++n_open;
		}
	}
	if (n_open == 0) return false;
	if (n_open == 1) return enforce(open->f, open->pol);
	return true;
}

bool Propagator::enforce(int id, bool pol) {
	const Formula& f = m_.formulas[id];
	switch (f.kind) {
	case Formula::Cmp: return revise(pol ? f.op : complement_op(f.op), f.lhs, f.rhs);
	case Formula::Not: return enforce(f.kids[0], !pol);
	case Formula::And:
	case Formula::Or: {
		const bool conj = (f.kind == Formula::And) == pol;
		if (conj) {
			for (int k : f.kids)
				if (!enforce(k, pol)) return false;
			return true;
		}
		std::vector<Lit> lits;
		for (int k : f.kids) lits.push_back({k, pol});
		return clause(lits);
	}
	case Formula::Xor:
	case Formula::Equiv: {
		const int a = f.kids[0], b = f.kids[1];
		const bool differ = (f.kind == Formula::Xor) == pol;
		if (differ) return clause({{a, true}, {b, true}}) && clause({{a, false}, {b, false}});
		return clause({{a, true}, {b, false}}) && clause({{a, false}, {b, true}});
	}
	case Formula::Impl:
		if (pol) return clause({{f.kids[0], false}, {f.kids[1], true}});
		return enforce(f.kids[0], true) && enforce(f.kids[1], false);
	case Formula::Global:
		if (pol) return run_global(m_.globals[f.global]);
		return global_status(m_.globals[f.global]) != Truth::True;
	}
	return true;
}

bool Propagator::fixpoint() {
	for (const Domain& d : d_)
		if (d.empty()) return false;
	do {
		changed_ = false;
		for (int r : m_.roots)
			if (!enforce(r, true)) return false;
	} while (changed_);
	for (int r : m_.roots)
		if (status(r) == Truth::False) return false;
	return true;
}

} // namespace ezcasp::fd
