// SPDX-License-Identifier: Apache-2.0
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "ezcasp/ez_lang.hpp"

namespace ezcasp {

ParseError::ParseError(const std::string& msg, SourcePos p)
    : Error(std::to_string(p.line) + ":" + std::to_string(p.column) + ": " + msg), pos(p) {}

EzAtom make_atom(Term term) {
	EzAtom a;
	a.term = std::move(term);
	if (a.term.name == "cspdomain") a.reserved = Reserved::CspDomain;
	else if (a.term.name == "cspvar") a.reserved = Reserved::CspVar;
	else if (a.term.name == "required") a.reserved = Reserved::Required;
	return a;
}

bool operator==(const BodyLiteral& a, const BodyLiteral& b) {
	return a.kind == b.kind && a.negation == b.negation && a.atom == b.atom && a.builtin == b.builtin &&
	       a.aggregate == b.aggregate;
}

namespace {

enum class Tok { Ident, Var, Int, Punct, Sum, End };

struct Token {
	Tok kind;
	std::string text;
	std::int64_t value = 0;
	SourcePos pos;
};

// Longest first.
const char* const kPunct[] = {":-", "<->", "<-", "->", "<=", ">=", "!=", "==", "\\/", "/\\", "..",
                              "=",  "<",   ">",  "+",  "-",  "*",  "/",  "\\", "!",  "(",  ")",
                              "[",  "]",   "{",  "}",  ",",  ";",  ":",  ".",  "|"};

struct Utf8Alias {
	const char* utf8;
	const char* ascii;
};

const Utf8Alias kAliases[] = {
    {"≥", ">="},  {"≤", "<="}, {"≠", "!="}, {"∨", "\\/"}, {"∧", "/\\"},
    {"→", "->"},  {"←", "<-"}, {"↔", "<->"}, {"¬", "!"},
};

std::vector<Token> tokenize(std::string_view src) {
	std::vector<Token> out;
	int line = 1, col = 1;
	std::size_t i = 0;
	auto advance = [&](std::size_t n) {
		for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
			if (src[i] == '\n') {
				++line;
				col = 1;
			} else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
				++col;
			}
		}
	};
	while (i < src.size()) {
		const char c = src[i];
		if (c == '%') {
			while (i < src.size() && src[i] != '\n') advance(1);
			continue;
		}
		if (std::isspace(static_cast<unsigned char>(c))) {
			advance(1);
			continue;
		}
		SourcePos pos{line, col};
		if (std::isdigit(static_cast<unsigned char>(c))) {
			std::size_t j = i;
			while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
			Token t{Tok::Int, std::string(src.substr(i, j - i)), 0, pos};
			try {
				t.value = std::stoll(t.text);
			} catch (const std::exception&) {
				throw ParseError("integer literal out of range: " + t.text, pos);
			}
			out.push_back(std::move(t));
			advance(j - i);
			continue;
		}
		if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
			std::size_t j = i;
			while (j < src.size() &&
			       (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
				++j;
			std::string word(src.substr(i, j - i));
			const bool is_var = std::isupper(static_cast<unsigned char>(c)) || c == '_';
			out.push_back(Token{is_var ? Tok::Var : Tok::Ident, word, 0, pos});
			advance(j - i);
			continue;
		}
		if (c == '#') {
			std::size_t j = i + 1;
			while (j < src.size() && std::isalpha(static_cast<unsigned char>(src[j]))) ++j;
			std::string word(src.substr(i, j - i));
			if (word != "#sum") throw ParseError("unsupported directive or aggregate '" + word + "'", pos);
			out.push_back(Token{Tok::Sum, word, 0, pos});
			advance(j - i);
			continue;
		}
		bool matched = false;
		for (const auto& a : kAliases) {
			std::string_view u(a.utf8);
			if (src.substr(i, u.size()) == u) {
				out.push_back(Token{Tok::Punct, a.ascii, 0, pos});
				advance(u.size());
				matched = true;
				break;
			}
		}
		if (matched) continue;
		for (const char* p : kPunct) {
			std::string_view s(p);
			if (src.substr(i, s.size()) == s) {
				out.push_back(Token{Tok::Punct, std::string(s), 0, pos});
				advance(s.size());
				matched = true;
				break;
			}
		}
		if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", pos);
	}
	out.push_back(Token{Tok::End, "", 0, SourcePos{line, col}});
	return out;
}

class Parser {
public:
	explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

	EzProgram program() {
		EzProgram p;
		while (peek().kind != Tok::End) p.rules.push_back(rule());
		return p;
	}

private:
	std::vector<Token> toks_;
	std::size_t at_ = 0;

	const Token& peek(std::size_t k = 0) const {
		return toks_[std::min(at_ + k, toks_.size() - 1)];
	}
	bool is(const char* punct, std::size_t k = 0) const {
		const Token& t = peek(k);
		return t.kind == Tok::Punct && t.text == punct;
	}
	bool is_ident(const char* word, std::size_t k = 0) const {
		const Token& t = peek(k);
		return t.kind == Tok::Ident && t.text == word;
	}
	Token take() { return toks_[std::min(at_++, toks_.size() - 1)]; }
	void expect(const char* punct) {
		if (!is(punct)) fail(std::string("expected '") + punct + "'");
		++at_;
	}
	[[noreturn]] void fail(const std::string& msg) const {
		const Token& t = peek();
		throw ParseError(msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"), t.pos);
	}

	EzRule rule() {
		EzRule r;
		r.pos = peek().pos;
		if (is(":-")) {
			++at_;
			r.body = body();
			expect(".");
			return r;
		}
		r.head = head();
		if (is(":-")) {
			++at_;
			r.body = body();
		}
		expect(".");
		return r;
	}

	bool bound_then(const char* punct) const {
		const Token& t = peek();
		return (t.kind == Tok::Int || t.kind == Tok::Var) && is(punct, 1);
	}

	std::optional<Term> optional_upper_bound() {
		const Token& t = peek();
		if (t.kind == Tok::Int || t.kind == Tok::Var) return primary();
		return std::nullopt;
	}

	Head head() {
		Head h;
		if (is("{") || bound_then("{")) {
			h.kind = Head::Kind::Choice;
			if (!is("{")) h.lower = primary();
			expect("{");
			if (!is("}")) {
				for (;;) {
					ChoiceElement e;
					e.atom = atom_from(expr(kArith), "choice element");
					if (is(":")) {
						++at_;
						e.condition = literal_list();
					}
					h.elements.push_back(std::move(e));
					if (is(";") || is(",")) {
						++at_;
						continue;
					}
					break;
				}
			}
			expect("}");
			h.upper = optional_upper_bound();
			return h;
		}
		h.kind = Head::Kind::Atom;
		h.atom = atom_from(expr(kLowest), "rule head");
		return h;
	}

	// Condition literals: comma separated, stop at ';', '}' or ']'.
	std::vector<BodyLiteral> literal_list() {
		std::vector<BodyLiteral> out;
		for (;;) {
			out.push_back(simple_literal());
			if (is(",") && !(is("}", 1) || is("]", 1))) {
				// a ',' followed by something that is a new aggregate/choice element is ambiguous;
				// conditions greedily take every comma-separated literal.
				++at_;
				continue;
			}
			break;
		}
		return out;
	}

	std::vector<BodyLiteral> body() {
		std::vector<BodyLiteral> out;
		for (;;) {
			out.push_back(body_literal());
			if (is(",")) {
				++at_;
				continue;
			}
			break;
		}
		return out;
	}

	BodyLiteral body_literal() {
		const bool bounded = (peek().kind == Tok::Int || peek().kind == Tok::Var) && (peek(1).kind == Tok::Sum || is("{", 1));
		if (peek().kind == Tok::Sum || is("{") || bounded) {
			return aggregate_literal();
		}
		return simple_literal();
	}

	Negation negation() {
		Negation n = Negation::None;
		if (is_ident("not") && !is("(", 1)) {
			++at_;
			n = Negation::Not;
			if (is_ident("not") && !is("(", 1)) {
				++at_;
				n = Negation::NotNot;
			}
		}
		return n;
	}

	BodyLiteral simple_literal() {
		BodyLiteral l;
		const SourcePos pos = peek().pos;
		l.negation = negation();
		if (is("|")) {
			++at_;
			l.kind = BodyLiteral::Kind::Atom;
			l.atom.term = expr(kLowest);
			l.atom.reserved = Reserved::Constraint;
			expect("|");
			return l;
		}
		Term t = expr(kLowest);
		if (t.kind == TermKind::Function && t.infix && is_comparison_token(t.name)) {
			if (l.negation != Negation::None) throw ParseError("negated built-in comparison", pos);
			l.kind = BodyLiteral::Kind::Builtin;
			l.builtin = std::move(t);
			return l;
		}
		l.kind = BodyLiteral::Kind::Atom;
		l.atom = atom_from(std::move(t), "body literal", pos);
		return l;
	}

	BodyLiteral aggregate_literal() {
		Aggregate agg;
		if (peek().kind != Tok::Sum && !is("{")) agg.lower = primary();
		if (peek().kind == Tok::Sum) {
			++at_;
			agg.is_sum = true;
			expect("[");
			if (!is("]")) agg.elements = aggregate_elements("]");
			expect("]");
		} else {
			agg.is_sum = false;
			expect("{");
			if (!is("}")) agg.elements = aggregate_elements("}");
			expect("}");
		}
		agg.upper = optional_upper_bound();
		BodyLiteral l;
		l.kind = BodyLiteral::Kind::Aggregate;
		l.aggregate.push_back(std::move(agg));
		return l;
	}

	std::vector<AggregateElement> aggregate_elements(const char* close) {
		std::vector<AggregateElement> out;
		for (;;) {
			AggregateElement e;
			const SourcePos pos = peek().pos;
			e.literal.negation = negation();
			e.literal.kind = BodyLiteral::Kind::Atom;
			e.literal.atom = atom_from(expr(kArith), "aggregate element", pos);
			e.weight = Term::integer(1);
			if (is("=")) {
				++at_;
				e.weight = expr(kArith);
			}
			if (is(":")) {
				++at_;
				e.condition = literal_list();
			}
			out.push_back(std::move(e));
			if ((is(";") || is(",")) && !is(close, 1)) {
				++at_;
				continue;
			}
			break;
		}
		return out;
	}

	EzAtom atom_from(Term t, const char* where, std::optional<SourcePos> at = std::nullopt) {
		const SourcePos pos = at ? *at : peek().pos;
		if (!t.is_atom_shaped()) throw ParseError(std::string("expected an atom in ") + where, pos);
		EzAtom a = make_atom(std::move(t));
		check_reserved(a, pos);
		return a;
	}

	static void check_reserved(const EzAtom& a, SourcePos pos) {
		switch (a.reserved) {
		case Reserved::CspDomain: {
			if (a.arity() != 1) throw ParseError("cspdomain expects exactly 1 argument", pos);
			const Term& d = a.term.args[0];
			if (!d.is_symbol() || (d.name != "fd" && d.name != "q" && d.name != "r"))
				throw ParseError("cspdomain argument must be one of fd, q, r", pos);
			break;
		}
		case Reserved::CspVar:
			if (a.arity() != 1 && a.arity() != 3) throw ParseError("cspvar expects 1 or 3 arguments", pos);
			break;
		case Reserved::Required:
			if (a.arity() != 1) throw ParseError("required expects exactly 1 argument", pos);
			break;
		case Reserved::None:
		case Reserved::Constraint: break;
		}
	}

	// Precedence levels, loosest first.
	static constexpr int kLowest = 1; // <->
	static constexpr int kImpl = 2;   // -> <-
	static constexpr int kOr = 3;     // or, xor
	static constexpr int kAnd = 4;    // and
	static constexpr int kNeg = 5;    // !
	static constexpr int kCmp = 6;    // = != < <= > >=
	static constexpr int kRange = 7;  // ..
	static constexpr int kArith = 8;  // + -
	static constexpr int kMul = 9;    // * /
	static constexpr int kUnary = 10; // unary -

	std::optional<std::string> binary_at(int level) const {
		const Token& t = peek();
		if (level == kOr && t.kind == Tok::Ident && t.text == "xor") return std::string("\\");
		if (t.kind != Tok::Punct) return std::nullopt;
		const std::string& s = t.text;
		switch (level) {
		case kLowest: if (s == "<->") return s; break;
		case kImpl: if (s == "->" || s == "<-") return s; break;
		case kOr: if (s == "\\/" || s == "\\") return s; break;
		case kAnd: if (s == "/\\") return s; break;
		case kCmp:
			if (s == "==") return std::string("=");
			if (is_comparison_token(s)) return s;
			break;
		case kRange: if (s == "..") return s; break;
		case kArith: if (s == "+" || s == "-") return s; break;
		case kMul: if (s == "*" || s == "/") return s; break;
		default: break;
		}
		return std::nullopt;
	}

	Term expr(int level) {
		if (level == kNeg) {
			if (is("!")) {
				++at_;
				Term inner = expr(kNeg);
				return Term::function("!", {std::move(inner)}, true);
			}
			return expr(kCmp);
		}
		if (level == kUnary) {
			if (is("-")) {
				++at_;
				Term inner = expr(kUnary);
				if (inner.is_integer()) return Term::integer(-inner.number);
				return Term::function("-", {std::move(inner)}, true);
			}
			return primary();
		}
		Term lhs = expr(level + 1);
		if (level == kImpl) {
			// right associative
			if (auto op = binary_at(level)) {
				++at_;
				Term rhs = expr(level);
				return Term::function(*op, {std::move(lhs), std::move(rhs)}, true);
			}
			return lhs;
		}
		if (level == kCmp || level == kRange) {
			if (auto op = binary_at(level)) {
				++at_;
				Term rhs = expr(level + 1);
				if (level == kRange) return Term::range(std::move(lhs), std::move(rhs));
				return Term::function(*op, {std::move(lhs), std::move(rhs)}, true);
			}
			return lhs;
		}
		while (auto op = binary_at(level)) {
			++at_;
			Term rhs = expr(level + 1);
			lhs = Term::function(*op, {std::move(lhs), std::move(rhs)}, true);
		}
		return lhs;
	}

	std::vector<Term> arguments() {
		std::vector<Term> args;
		expect("(");
		if (!is(")")) {
			for (;;) {
				args.push_back(expr(kLowest));
				if (is(",")) {
					++at_;
					continue;
				}
				break;
			}
		}
		expect(")");
		return args;
	}

	Term primary() {
		const Token& t = peek();
		switch (t.kind) {
		case Tok::Int: ++at_; return Term::integer(t.value);
		case Tok::Var: ++at_; return Term::variable(t.text);
		case Tok::Ident: {
			std::string name = take().text;
			if (is("(")) {
				auto args = arguments();
				if (args.empty()) fail("compound term needs at least one argument");
				return Term::function(std::move(name), std::move(args));
			}
			return Term::symbol(std::move(name));
		}
		case Tok::Punct:
			if (t.text == "(") {
				++at_;
				Term inner = expr(kLowest);
				expect(")");
				return inner;
			}
			if (t.text == "[") return list();
			if ((is_comparison_token(t.text) || t.text == "==") && (is(",", 1) || is(")", 1))) {
				++at_;
				return Term::op(t.text == "==" ? "=" : t.text);
			}
			break;
		default: break;
		}
		fail("expected a term");
	}

	Term list() {
		expect("[");
		if (is("]")) {
			++at_;
			return Term::list({});
		}
		if (peek().kind == Tok::Ident) {
			const std::size_t save = at_;
			std::string name = take().text;
			std::vector<Term> prefix;
			bool ok = true;
			if (is("(")) {
				try {
					prefix = arguments();
				} catch (const ParseError&) {
					ok = false;
				}
			}
			if (ok && is("/") && peek(1).kind == Tok::Int && is("]", 2)) {
				++at_;
				const auto k = take().value;
				++at_;
				if (k < 0 || static_cast<std::size_t>(k) < prefix.size())
					throw ParseError("intensional list prefix longer than its arity", toks_[save].pos);
				return Term::intensional(std::move(name), std::move(prefix), static_cast<int>(k));
			}
			at_ = save;
		}
		std::vector<Term> elems;
		for (;;) {
			elems.push_back(expr(kLowest));
			if (is(",")) {
				++at_;
				continue;
			}
			break;
		}
		expect("]");
		return Term::list(std::move(elems));
	}
};

} // namespace

EzProgram parse(std::string_view text) { return Parser(tokenize(text)).program(); }

namespace {

void note(std::set<std::string>& s, std::string v) { s.insert(std::move(v)); }

void scan_term(const Term& t, std::set<std::string>& consts, std::set<std::string>& vars,
               std::set<std::string>& funcs) {
	switch (t.kind) {
	case TermKind::Integer: note(consts, std::to_string(t.number)); break;
	case TermKind::Symbol: note(consts, t.name); break;
	case TermKind::Variable: note(vars, t.name); break;
	case TermKind::Function:
		note(funcs, t.name + "/" + std::to_string(t.args.size()));
		break;
	case TermKind::IntensionalList: note(funcs, t.name + "/" + std::to_string(t.arity)); break;
	default: break;
	}
	for (const auto& a : t.args) scan_term(a, consts, vars, funcs);
}

} // namespace

Signature EzProgram::signature() const {
	std::set<std::string> consts, vars, funcs, rels;
	auto scan_atom = [&](const EzAtom& a) {
		if (a.reserved == Reserved::Constraint) {
			scan_term(a.term, consts, vars, funcs);
			return;
		}
		note(rels, a.relation() + "/" + std::to_string(a.arity()));
		for (const auto& arg : a.term.args) scan_term(arg, consts, vars, funcs);
	};
	std::function<void(const BodyLiteral&)> scan_lit = [&](const BodyLiteral& l) {
		switch (l.kind) {
		case BodyLiteral::Kind::Atom: scan_atom(l.atom); break;
		case BodyLiteral::Kind::Builtin: scan_term(l.builtin, consts, vars, funcs); break;
		case BodyLiteral::Kind::Aggregate:
			for (const auto& e : l.aggregate.front().elements) {
				scan_lit(e.literal);
				scan_term(e.weight, consts, vars, funcs);
				for (const auto& c : e.condition) scan_lit(c);
			}
			break;
		}
	};
	for (const auto& r : rules) {
		if (r.head.kind == Head::Kind::Atom) scan_atom(r.head.atom);
		for (const auto& e : r.head.elements) {
			scan_atom(e.atom);
			for (const auto& c : e.condition) scan_lit(c);
		}
		for (const auto& l : r.body) scan_lit(l);
	}
	return Signature{{consts.begin(), consts.end()},
	                 {vars.begin(), vars.end()},
	                 {funcs.begin(), funcs.end()},
	                 {rels.begin(), rels.end()}};
}

std::size_t EzProgram::count_facts(Reserved r) const {
	std::size_t n = 0;
	for (const auto& rule : rules) {
		if (rule.is_fact() && rule.head.atom.reserved == r) ++n;
	}
	return n;
}

} // namespace ezcasp
