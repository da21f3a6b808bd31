// SPDX-License-Identifier: Apache-2.0
#include "term_eval.hpp"

namespace ezcasp {

Term evaluate_term(const Term& t) {
	if (t.args.empty()) return t;
	Term out = t;
	for (auto& a : out.args) a = evaluate_term(a);
	if (t.kind != TermKind::Function || !t.infix || !is_arithmetic_token(t.name)) return out;
	if (!out.ground()) return out;
	for (const auto& a : out.args)
		if (!a.is_integer()) throw Error("arithmetic on non-integer term: " + to_string(t));
	if (out.args.size() == 1) return Term::integer(-out.args[0].number);
	const std::int64_t x = out.args[0].number;
	const std::int64_t y = out.args[1].number;
	if (t.name == "+") return Term::integer(x + y);
	if (t.name == "-") return Term::integer(x - y);
	if (t.name == "*") return Term::integer(x * y);
	if (y == 0) throw Error("division by zero: " + to_string(t));
	return Term::integer(x / y);
}

} // namespace ezcasp
