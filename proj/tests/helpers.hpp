#pragma once

#include <random>
#include <string>
#include <vector>

#include "ezcasp/asp_core.hpp"

namespace testutil {

using namespace ezcasp;

inline Rule rule(RegularProgram& p, const std::string& head, std::vector<std::string> pos = {},
                 std::vector<std::string> neg = {}, std::vector<std::string> dneg = {}) {
	Rule r;
	if (!head.empty()) r.head = p.intern(head);
	for (auto& a : pos) r.pos.push_back(p.intern(a));
	for (auto& a : neg) r.neg.push_back(p.intern(a));
	for (auto& a : dneg) r.dneg.push_back(p.intern(a));
	p.add_rule(r);
	return r;
}

inline Interpretation interp(const RegularProgram& p, const std::vector<std::string>& atoms) {
	Interpretation x(p.num_atoms(), false);
	for (const auto& a : atoms) x[*p.find(a)] = true;
	return x;
}

inline Interpretation from_mask(std::size_t n, std::uint64_t mask) {
	Interpretation x(n);
	for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1u;
	return x;
}

inline Record complete_record(const Interpretation& x) {
	Record m(x.size());
	for (Atom a = 0; a < x.size(); ++a) m.push(x[a] ? Lit::pos(a) : Lit::neg(a));
	return m;
}

/// Random regular program over n atoms: heads, positive, negative and double-negated
/// bodies, plus denials.
inline RegularProgram random_regular(std::mt19937_64& rng, std::size_t n, std::size_t rules) {
	RegularProgram p;
	for (std::size_t i = 0; i < n; ++i) p.intern("a" + std::to_string(i));
	std::uniform_int_distribution<std::size_t> atom(0, n - 1);
	std::uniform_int_distribution<int> pct(0, 99);
	for (std::size_t k = 0; k < rules; ++k) {
		Rule r;
		if (pct(rng) < 85) r.head = static_cast<Atom>(atom(rng));
		const int body = pct(rng) % 4;
		for (int j = 0; j < body; ++j) {
			const int kind = pct(rng);
			const Atom a = static_cast<Atom>(atom(rng));
			if (kind < 50) r.pos.push_back(a);
			else if (kind < 85) r.neg.push_back(a);
			else r.dneg.push_back(a);
		}
		p.add_rule(r);
	}
	return p;
}

inline bool has_unfounded_subset(const RegularProgram& p, const Record& m, const Interpretation& x) {
	std::vector<Atom> in;
	for (Atom a = 0; a < x.size(); ++a)
		if (x[a]) in.push_back(a);
	for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << in.size()); ++mask) {
		Interpretation u(x.size());
		for (std::size_t i = 0; i < in.size(); ++i)
			if ((mask >> i) & 1u) u[in[i]] = true;
		if (is_unfounded(p, m, u)) return true;
	}
	return false;
}

struct CheckCount {
	std::size_t candidates = 0;
	std::size_t answer_sets = 0;
	std::size_t violations = 0;
};

/// X is an answer set iff X satisfies the clauses and no subset of X is unfounded, checked
/// on random programs over 1..12 atoms for every candidate set. Up to 6 atoms every
/// subset is tested for unfoundedness, above that the greatest unfounded set is used.
inline CheckCount check_unfounded_characterization(std::uint64_t seed) {
	std::mt19937_64 rng(seed);
	CheckCount c;
	for (std::size_t n = 1; n <= 12; ++n) {
		for (std::size_t k = 0; k < (n <= 6 ? 200u : 30u); ++k) {
			const RegularProgram p = random_regular(rng, n, n + rng() % (2 * n));
			const auto clauses = clausify(p);
			for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
				const Interpretation x = from_mask(n, mask);
				const Record m = complete_record(x);
				const bool as = is_answer_set(p, x);
				bool founded;
				if (n <= 6) {
					founded = !has_unfounded_subset(p, m, x);
				} else {
					const Interpretation gus = greatest_unfounded_set(p, m);
					founded = true;
					for (Atom a = 0; a < n; ++a)
						if (gus[a] && x[a]) founded = false;
				}
				++c.candidates;
				c.answer_sets += as;
				c.violations += as != (satisfies_clauses(clauses, x) && founded);
			}
		}
	}
	return c;
}

/// X is an answer set of p plus denials iff X is an answer set of p satisfying the denials,
/// on random (program, denial set, candidate) triples over 1..10 atoms.
inline CheckCount check_denial_filtering(std::uint64_t seed) {
	std::mt19937_64 rng(seed);
	CheckCount c;
	for (std::size_t n = 1; n <= 10; ++n) {
		for (std::size_t k = 0; k < (n <= 6 ? 200u : 40u); ++k) {
			const RegularProgram p = random_regular(rng, n, n + rng() % n);
			RegularProgram gp = p;
			RegularProgram gamma;
			for (std::size_t i = 0; i < n; ++i) gamma.intern("a" + std::to_string(i));
			const std::size_t denials = rng() % 3;
			for (std::size_t d = 0; d < denials; ++d) {
				Denial den;
				for (std::size_t j = 0, len = 1 + rng() % 3; j < len; ++j) {
					const Atom a = static_cast<Atom>(rng() % n);
					den.push_back(rng() % 2 ? Lit::pos(a) : Lit::neg(a));
				}
				gp.add_denial(den);
				gamma.add_denial(den);
			}
			const auto gamma_cl = clausify(gamma);
			for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
				const Interpretation x = from_mask(n, mask);
				const bool as = is_answer_set(gp, x);
				++c.candidates;
				c.answer_sets += as;
				c.violations += as != (is_answer_set(p, x) && satisfies_clauses(gamma_cl, x));
			}
		}
	}
	return c;
}

} // namespace testutil
