// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <map>
#include <optional>

#include "ezcasp/fd_solver.hpp"
#include "internal.hpp"

namespace ezcasp::fd {

bool is_comparison_name(const std::string& s) {
	return s == "lt" || s == "leq" || s == "gt" || s == "geq" || s == "eq" || s == "neq";
}

bool is_connective(const std::string& name, std::size_t arity) {
	if (arity == 1) return name == "neg";
	return arity == 2 && (name == "or" || name == "and" || name == "xor" || name == "impl" || name == "equiv");
}

bool is_arith(const std::string& name, std::size_t arity) {
	if (arity == 1) return name == "uminus";
	return arity == 2 && (name == "plus" || name == "minus" || name == "times" || name == "div");
}

bool compare(const std::string& op, std::int64_t a, std::int64_t b) {
	if (op == "lt") return a < b;
	if (op == "leq") return a <= b;
	if (op == "gt") return a > b;
	if (op == "geq") return a >= b;
	if (op == "eq") return a == b;
	if (op == "neq") return a != b;
	throw Error("unknown comparison " + op);
}

std::string complement_op(const std::string& op) {
	static const std::map<std::string, std::string> m{{"lt", "geq"}, {"geq", "lt"}, {"leq", "gt"},
	                                                   {"gt", "leq"}, {"eq", "neq"}, {"neq", "eq"}};
	return m.at(op);
}

std::string mirror_op(const std::string& op) {
	static const std::map<std::string, std::string> m{{"lt", "gt"}, {"gt", "lt"}, {"leq", "geq"},
	                                                   {"geq", "leq"}, {"eq", "eq"}, {"neq", "neq"}};
	return m.at(op);
}

const std::vector<ArgShape>& global_shape(const std::string& name) {
	using S = ArgShape;
	static const std::map<std::string, std::vector<ArgShape>> shapes{
	    {"all_different", {S::List}},
	    {"all_distinct", {S::List}},
	    {"assignment", {S::List, S::List}},
	    {"circuit", {S::List}},
	    {"count", {S::Value, S::List, S::Op, S::Value}},
	    {"cumulative", {S::List, S::List, S::List, S::Value}},
	    {"disjoint2", {S::List, S::List, S::List, S::List}},
	    {"element", {S::Value, S::List, S::Value}},
	    {"minimum", {S::Value, S::List}},
	    {"maximum", {S::Value, S::List}},
	    {"scalar_product", {S::List, S::List, S::Op, S::Value}},
	    {"serialized", {S::List, S::List}},
	    {"sum", {S::List, S::Op, S::Value}},
	};
	auto it = shapes.find(name);
	if (it == shapes.end()) throw Error("unknown global constraint " + name);
	return it->second;
}

void check_global_shape(const std::string& name, const std::vector<GArg>& args) {
	const auto& shape = global_shape(name);
	if (shape.size() != args.size())
		throw Error(name + " expects " + std::to_string(shape.size()) + " arguments");
	for (std::size_t i = 0; i < shape.size(); ++i) {
		const bool ok = (shape[i] == ArgShape::Value && args[i].kind == GArg::Value) ||
		                (shape[i] == ArgShape::List && args[i].kind == GArg::List) ||
		                (shape[i] == ArgShape::Op && args[i].kind == GArg::Op);
		if (!ok) throw Error(name + ": argument " + std::to_string(i + 1) + " has the wrong kind");
	}
	auto same = [&](std::size_t a, std::size_t b) {
		if (args[a].list.size() != args[b].list.size()) throw Error(name + ": list lengths differ");
	};
	if (name == "assignment" || name == "scalar_product" || name == "serialized") same(0, 1);
	if (name == "cumulative") same(0, 1), same(0, 2);
	if (name == "disjoint2") same(0, 1), same(0, 2), same(0, 3);
}

namespace {

bool cumulative_ok(const std::vector<std::int64_t>& s, const std::vector<std::int64_t>& d,
                   const std::vector<std::int64_t>& r, std::int64_t limit) {
	for (std::size_t j = 0; j < s.size(); ++j) {
		std::int64_t load = 0;
		for (std::size_t i = 0; i < s.size(); ++i)
			if (d[i] > 0 && s[i] <= s[j] && s[j] < s[i] + d[i]) load += r[i];
		if (load > limit) return false;
	}
	return true;
}

} // namespace

bool check_global(const std::string& name, const std::vector<GArg>& a) {
	check_global_shape(name, a);
	if (name == "all_different" || name == "all_distinct") {
		std::vector<std::int64_t> v = a[0].list;
		std::sort(v.begin(), v.end());
		return std::adjacent_find(v.begin(), v.end()) == v.end();
	}
	if (name == "assignment") {
		const auto& x = a[0].list;
		const auto& y = a[1].list;
		const auto n = static_cast<std::int64_t>(x.size());
		for (std::int64_t i = 0; i < n; ++i) {
			if (x[i] < 1 || x[i] > n || y[i] < 1 || y[i] > n) return false;
			if (y[x[i] - 1] != i + 1) return false;
			if (x[y[i] - 1] != i + 1) return false;
		}
		return true;
	}
	if (name == "circuit") {
		const auto& v = a[0].list;
		const auto n = static_cast<std::int64_t>(v.size());
		if (n == 0) return true;
		std::vector<bool> seen(n, false);
		std::int64_t cur = 1;
		for (std::int64_t step = 0; step < n; ++step) {
			if (seen[cur - 1]) return false;
			seen[cur - 1] = true;
			const std::int64_t nxt = v[cur - 1];
			if (nxt < 1 || nxt > n) return false;
			cur = nxt;
		}
		return cur == 1;
	}
	if (name == "count") {
		const auto c = std::count(a[1].list.begin(), a[1].list.end(), a[0].value);
		return compare(a[2].op, c, a[3].value);
	}
	if (name == "cumulative") return cumulative_ok(a[0].list, a[1].list, a[2].list, a[3].value);
	if (name == "serialized") {
		std::vector<std::int64_t> ones(a[0].list.size(), 1);
		return cumulative_ok(a[0].list, a[1].list, ones, 1);
	}
	if (name == "disjoint2") {
		const auto &x = a[0].list, &w = a[1].list, &y = a[2].list, &h = a[3].list;
		for (std::size_t i = 0; i < x.size(); ++i)
			for (std::size_t j = i + 1; j < x.size(); ++j) {
				const bool apart = x[i] + w[i] <= x[j] || x[j] + w[j] <= x[i] || y[i] + h[i] <= y[j] ||
				                   y[j] + h[j] <= y[i];
				if (!apart) return false;
			}
		return true;
	}
	if (name == "element") {
		const auto& v = a[1].list;
		const std::int64_t i = a[0].value;
		return i >= 1 && i <= static_cast<std::int64_t>(v.size()) && v[i - 1] == a[2].value;
	}
	if (name == "minimum" || name == "maximum") {
		const auto& v = a[1].list;
		if (v.empty()) return false;
		const auto m = name == "minimum" ? *std::min_element(v.begin(), v.end()) : *std::max_element(v.begin(), v.end());
		return m == a[0].value;
	}
	if (name == "scalar_product") {
		std::int64_t p = 0;
		for (std::size_t i = 0; i < a[0].list.size(); ++i) p += a[0].list[i] * a[1].list[i];
		return compare(a[2].op, p, a[3].value);
	}
	if (name == "sum") {
		std::int64_t s = 0;
		for (auto v : a[0].list) s += v;
		return compare(a[1].op, s, a[2].value);
	}
	throw Error("unknown global constraint " + name);
}

} // namespace ezcasp::fd

namespace ezcasp {

namespace {

std::optional<std::int64_t> value_of(const Term& t, const Evaluation& e) {
	if (t.is_integer()) return t.number;
	if (auto it = e.find(t); it != e.end()) return it->second;
	if (t.kind == TermKind::Function && fd::is_arith(t.name, t.args.size())) {
		auto x = value_of(t.args[0], e);
		if (!x) return std::nullopt;
		if (t.args.size() == 1) return -*x;
		auto y = value_of(t.args[1], e);
		if (!y) return std::nullopt;
		if (t.name == "plus") return *x + *y;
		if (t.name == "minus") return *x - *y;
		if (t.name == "times") return *x * *y;
		if (*y == 0) return std::nullopt;
		return *x / *y;
	}
	throw Error("cannot evaluate " + to_string(t));
}

} // namespace

bool satisfied(const Term& c, const Evaluation& e) {
	if (c.kind != TermKind::Function) throw Error("not a constraint: " + to_string(c));
	const std::string& n = c.name;
	if (fd::is_comparison_name(n) && c.args.size() == 2) {
		auto x = value_of(c.args[0], e);
		auto y = value_of(c.args[1], e);
		return x && y && fd::compare(n, *x, *y);
	}
	if (fd::is_connective(n, c.args.size())) {
		if (n == "neg") return !satisfied(c.args[0], e);
		const bool a = satisfied(c.args[0], e);
		const bool b = satisfied(c.args[1], e);
		if (n == "or") return a || b;
		if (n == "and") return a && b;
		if (n == "xor") return a != b;
		if (n == "impl") return !a || b;
		return a == b;
	}
	std::vector<fd::GArg> args;
	for (const auto& t : c.args) {
		fd::GArg g;
		if (t.kind == TermKind::List) {
			g.kind = fd::GArg::List;
			for (const auto& x : t.args) {
				auto v = value_of(x, e);
				if (!v) return false;
				g.list.push_back(*v);
			}
		} else if (t.kind == TermKind::Symbol && fd::is_comparison_name(t.name) && !e.count(t)) {
			g.kind = fd::GArg::Op;
			g.op = t.name;
		} else {
			auto v = value_of(t, e);
			if (!v) return false;
			g.value = *v;
		}
		args.push_back(std::move(g));
	}
	return fd::check_global(n, args);
}

} // namespace ezcasp
