// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "internal.hpp"
#include "model.hpp"

namespace ezcasp::fd {

bool Propagator::all_fixed(const Global& g) const {
	for (const auto& a : g.args) {
		if (a.kind == GlobalArg::Value && !eval(a.expr).fixed()) return false;
		if (a.kind == GlobalArg::List)
			for (int x : a.list)
				if (!eval(x).fixed()) return false;
	}
	return true;
}

Truth Propagator::global_status(const Global& g) const {
	if (!all_fixed(g)) return Truth::Unknown;
	std::vector<GArg> args;
	for (const auto& a : g.args) {
		GArg v;
		if (a.kind == GlobalArg::Value) {
			v.value = eval(a.expr).lo;
		} else if (a.kind == GlobalArg::List) {
			v.kind = GArg::List;
			for (int x : a.list) v.list.push_back(eval(x).lo);
		} else {
			v.kind = GArg::Op;
			v.op = a.op;
		}
		args.push_back(std::move(v));
	}
	return check_global(g.name, args) ? Truth::True : Truth::False;
}

bool Propagator::run_global(const Global& g) {
	const std::string& n = g.name;
	bool ok = true;
	if (n == "all_different") ok = all_different(g.args[0].list);
	else if (n == "all_distinct") ok = all_different(g.args[0].list) && hall_intervals(g.args[0].list);
	else if (n == "count") ok = count(g);
	else if (n == "element") ok = element(g);
	else if (n == "minimum") ok = extremum(g, true);
	else if (n == "maximum") ok = extremum(g, false);
	else if (n == "assignment") ok = assignment(g);
	else if (n == "circuit") ok = circuit(g);
	else if (n == "cumulative") ok = cumulative(g);
	return ok && global_status(g) != Truth::False;
}

bool Propagator::all_different(const std::vector<int>& xs) {
	for (std::size_t i = 0; i < xs.size(); ++i) {
		const Interval a = eval(xs[i]);
		if (!a.fixed()) continue;
		for (std::size_t j = 0; j < xs.size(); ++j)
			if (j != i && !remove_value(xs[j], a.lo)) return false;
	}
	return true;
}

bool Propagator::hall_intervals(const std::vector<int>& xs) {
	std::vector<Interval> iv;
	for (int x : xs) iv.push_back(eval(x));
	for (const Interval& lo_src : iv)
		for (const Interval& hi_src : iv) {
			const std::int64_t a = lo_src.lo, b = hi_src.hi;
			if (a > b) continue;
			std::int64_t inside = 0;
			for (const Interval& v : iv) inside += v.lo >= a && v.hi <= b;
			const std::int64_t cap = b - a + 1;
			if (inside > cap) return false;
			if (inside < cap) continue;
			bool moved = false;
			for (std::size_t i = 0; i < xs.size(); ++i) {
				const Interval v = iv[i];
				if (v.lo >= a && v.hi <= b) continue;
				if (v.lo >= a && v.lo <= b) {
					if (!narrow(xs[i], {b + 1, kInf})) return false;
					moved = true;
				} else if (v.hi >= a && v.hi <= b) {
					if (!narrow(xs[i], {-kInf, a - 1})) return false;
					moved = true;
				}
			}
			if (moved) return true;
		}
	return true;
}

bool Propagator::count(const Global& g) {
	const int mv = g.args[0].expr;
	const auto& xs = g.args[1].list;
	const std::string& op = g.args[2].op;
	const int ev = g.args[3].expr;
	const Interval m = eval(mv);
	std::int64_t must = 0, may = 0;
	std::vector<int> open;
	for (int x : xs) {
		const Interval v = eval(x);
		if (v.fixed() && m.fixed()) {
			if (v.lo == m.lo) ++must, ++may;
			continue;
		}
		const bool overlap = !(v.hi < m.lo || m.hi < v.lo);
		const bool possible = overlap && (!m.fixed() || may_equal(x, m.lo)) && (!v.fixed() || may_equal(mv, v.lo));
		if (possible) {
			++may;
			open.push_back(x);
		}
	}
	const Interval e = eval(ev);
	Interval k{-kInf, kInf};
	if (op == "leq") k.hi = e.hi;
	else if (op == "lt") k.hi = e.hi - 1;
	else if (op == "geq") k.lo = e.lo;
	else if (op == "gt") k.lo = e.lo + 1;
	else if (op == "eq") k = e;
	if (op == "neq" && e.fixed() && must == may && must == e.lo) return false;
	if (may < k.lo || must > k.hi) return false;
	if (m.fixed()) {
		if (must == k.hi)
			for (int x : open)
				if (!remove_value(x, m.lo)) return false;
		if (may == k.lo)
			for (int x : open)
				if (!narrow(x, {m.lo, m.lo})) return false;
	}
	if (op == "eq") return narrow(ev, {must, may});
	if (op == "leq") return narrow(ev, {must, kInf});
	if (op == "lt") return narrow(ev, {must + 1, kInf});
	if (op == "geq") return narrow(ev, {-kInf, may});
	if (op == "gt") return narrow(ev, {-kInf, may - 1});
	return true;
}

bool Propagator::element(const Global& g) {
	const int iv = g.args[0].expr;
	const auto& xs = g.args[1].list;
	const int ev = g.args[2].expr;
	const auto n = static_cast<std::int64_t>(xs.size());
	if (!narrow(iv, {1, n})) return false;
	const Expr& ie = m_.exprs[iv];
	const Interval e = eval(ev);
	Interval hull{kInf, -kInf};
	const Interval ir = eval(iv);
	for (std::int64_t i = ir.lo; i <= ir.hi; ++i) {
		if (!may_equal(iv, i)) continue;
		const Interval v = eval(xs[i - 1]);
		if (v.hi < e.lo || e.hi < v.lo) {
			if (ie.kind == Expr::Var && !remove_value(iv, i)) return false;
			if (ie.kind == Expr::Var) continue;
		}
		hull.lo = std::min(hull.lo, v.lo);
		hull.hi = std::max(hull.hi, v.hi);
	}
	if (hull.empty()) return false;
	if (!narrow(ev, hull)) return false;
	const Interval fi = eval(iv);
	if (fi.fixed()) return revise("eq", xs[fi.lo - 1], ev);
	return true;
}

bool Propagator::extremum(const Global& g, bool minimum) {
	const int mv = g.args[0].expr;
	const auto& xs = g.args[1].list;
	if (xs.empty()) return false;
	std::int64_t lo = kInf, hi = kInf;
	if (!minimum) lo = hi = -kInf;
	for (int x : xs) {
		const Interval v = eval(x);
		if (minimum) {
			lo = std::min(lo, v.lo);
			hi = std::min(hi, v.hi);
		} else {
			lo = std::max(lo, v.lo);
			hi = std::max(hi, v.hi);
		}
	}
	if (!narrow(mv, {lo, hi})) return false;
	const Interval m = eval(mv);
	int support = -1, supports = 0;
	for (int x : xs) {
		if (!narrow(x, minimum ? Interval{m.lo, kInf} : Interval{-kInf, m.hi})) return false;
		const Interval v = eval(x);
		if (minimum ? v.lo <= m.hi : v.hi >= m.lo) {
			support = x;
			++supports;
		}
	}
	if (supports == 0) return false;
	if (supports == 1) return narrow(support, minimum ? Interval{-kInf, m.hi} : Interval{m.lo, kInf});
	return true;
}

bool Propagator::assignment(const Global& g) {
	const auto& xs = g.args[0].list;
	const auto& ys = g.args[1].list;
	const auto n = static_cast<std::int64_t>(xs.size());
	for (int pass = 0; pass < 2; ++pass) {
		const auto& a = pass == 0 ? xs : ys;
		const auto& b = pass == 0 ? ys : xs;
		for (std::int64_t i = 0; i < n; ++i) {
			if (!narrow(a[i], {1, n})) return false;
			for (std::int64_t j = 1; j <= n; ++j)
				if (!may_equal(a[i], j) && !remove_value(b[j - 1], i + 1)) return false;
			const Interval v = eval(a[i]);
			if (v.fixed() && !narrow(b[v.lo - 1], {i + 1, i + 1})) return false;
		}
		if (!all_different(a)) return false;
	}
	return true;
}

bool Propagator::circuit(const Global& g) {
	const auto& xs = g.args[0].list;
	const auto n = static_cast<std::int64_t>(xs.size());
	for (std::int64_t i = 0; i < n; ++i) {
		if (!narrow(xs[i], {1, n})) return false;
		if (n > 1 && !remove_value(xs[i], i + 1)) return false;
	}
	if (!all_different(xs)) return false;
	for (std::int64_t start = 0; start < n; ++start) {
		std::int64_t cur = start, len = 1;
		while (len <= n) {
			const Interval v = eval(xs[cur]);
			if (!v.fixed()) break;
			if (v.lo - 1 == start) {
				if (len < n) return false;
				break;
			}
			cur = v.lo - 1;
			++len;
		}
		if (len < n && !eval(xs[cur]).fixed() && !remove_value(xs[cur], start + 1)) return false;
	}
	return true;
}

bool Propagator::cumulative(const Global& g) {
	const auto& s = g.args[0].list;
	const auto& dl = g.args[1].list;
	const auto& rl = g.args[2].list;
	const int lv = g.args[3].expr;
	const std::size_t n = s.size();
	const std::int64_t cap = eval(lv).hi;
	for (std::size_t i = 0; i < n; ++i)
		if (eval(rl[i]).lo < 0 && eval(dl[i]).hi > 0) return true;
	struct Task {
		Interval start;
		std::int64_t d, r;
		std::int64_t cp_lo, cp_hi; // compulsory part [cp_lo, cp_hi)
	};
	std::vector<Task> tasks;
	std::vector<std::int64_t> points;
	for (std::size_t i = 0; i < n; ++i) {
		Task t{eval(s[i]), std::max<std::int64_t>(0, eval(dl[i]).lo), std::max<std::int64_t>(0, eval(rl[i]).lo), 0, 0};
		if (t.d > 0 && t.r > cap) return false;
		t.cp_lo = t.start.hi;
		t.cp_hi = t.start.lo + t.d;
		if (t.d > 0 && t.r > 0 && t.cp_lo < t.cp_hi) {
			points.push_back(t.cp_lo);
			points.push_back(t.cp_hi);
		}
		tasks.push_back(t);
	}
	std::sort(points.begin(), points.end());
	points.erase(std::unique(points.begin(), points.end()), points.end());
	struct Segment {
		std::int64_t a, b, h;
	};
	std::vector<Segment> profile;
	std::int64_t peak = 0;
	for (std::size_t k = 0; k + 1 < points.size(); ++k) {
		Segment seg{points[k], points[k + 1], 0};
		for (const Task& t : tasks)
			if (t.d > 0 && t.r > 0 && t.cp_lo <= seg.a && seg.b <= t.cp_hi) seg.h += t.r;
		if (seg.h > 0) profile.push_back(seg);
		peak = std::max(peak, seg.h);
	}
	if (peak > cap) return false;
	if (!narrow(lv, {peak, kInf})) return false;
	for (std::size_t i = 0; i < n; ++i) {
		const Task& t = tasks[i];
		if (t.d == 0 || t.r == 0) continue;
		std::vector<Interval> forbidden;
		for (const Segment& seg : profile) {
			const bool own = t.cp_lo <= seg.a && seg.b <= t.cp_hi;
			if (seg.h - (own ? t.r : 0) + t.r > cap) forbidden.push_back({seg.a - t.d + 1, seg.b - 1});
		}
		if (forbidden.empty()) continue;
		std::int64_t lo = t.start.lo, hi = t.start.hi;
		for (bool moved = true; moved && lo <= hi;) {
			moved = false;
			for (const Interval& f : forbidden)
				if (f.lo <= lo && lo <= f.hi) lo = f.hi + 1, moved = true;
		}
		for (bool moved = true; moved && lo <= hi;) {
			moved = false;
			for (const Interval& f : forbidden)
				if (f.lo <= hi && hi <= f.hi) hi = f.lo - 1, moved = true;
		}
		if (!narrow(s[i], {lo, hi})) return false;
	}
	return true;
}

} // namespace ezcasp::fd
