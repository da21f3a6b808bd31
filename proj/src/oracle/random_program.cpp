// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <random>
#include <sstream>

#include "ezcasp/oracle.hpp"

namespace ezcasp {

namespace {

class Rng {
public:
	explicit Rng(std::uint64_t seed) : gen_(seed) {}
	std::uint64_t below(std::uint64_t n) { return n ? gen_() % n : 0; }
	bool coin(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
	std::mt19937_64 gen_;
};

const char* const kOps[] = {"<", "<=", ">", ">=", "=", "!="};

std::string random_constraint(Rng& r, std::size_t nvars, std::int64_t max_value) {
	auto var = [&] { return "v" + std::to_string(r.below(nvars)); };
	const std::string op = kOps[r.below(6)];
	const auto k = static_cast<std::int64_t>(r.below(static_cast<std::uint64_t>(2 * max_value + 1)));
	switch (r.below(3)) {
	case 0: return var() + " " + op + " " + std::to_string(k / 2);
	case 1: {
		std::string a = var(), b = var();
		if (a == b) return a + " " + op + " " + std::to_string(k / 2);
		return a + " " + op + " " + b;
	}
	default: return var() + " + " + var() + " " + op + " " + std::to_string(k);
	}
}

} // namespace

std::string random_program_text(std::uint64_t seed, const RandomProgramOptions& opts) {
	if (opts.rules == 0) return "";
	Rng r(seed);
	const std::size_t natoms = std::max<std::size_t>(1, opts.atoms);
	const std::size_t nvars = std::clamp<std::size_t>(opts.variables, 1, 4);
	const std::size_t ncons = std::max<std::size_t>(1, opts.constraints);
	const std::int64_t maxv = std::max<std::int64_t>(1, opts.max_value);

	std::vector<std::string> pool;
	while (pool.size() < ncons) {
		std::string c = random_constraint(r, nvars, maxv);
		if (std::find(pool.begin(), pool.end(), c) == pool.end()) pool.push_back(std::move(c));
	}

	std::ostringstream out;
	out << "cspdomain(fd).\n";
	for (std::size_t v = 0; v < nvars; ++v)
		out << "cspvar(v" << v << ",0," << 1 + static_cast<std::int64_t>(r.below(static_cast<std::uint64_t>(maxv)))
		    << ").\n";

	auto atom = [&] { return "p" + std::to_string(r.below(natoms)); };
	auto body = [&](std::size_t max_len) {
		std::vector<std::string> lits;
		const std::size_t len = r.below(max_len + 1);
		for (std::size_t i = 0; i < len; ++i) {
			std::string l;
			if (r.coin(1, 4)) l = "|" + pool[r.below(pool.size())] + "|";
			else l = atom();
			if (r.coin(1, 3)) l = "not " + l;
			if (std::find(lits.begin(), lits.end(), l) == lits.end()) lits.push_back(l);
		}
		std::string s;
		for (std::size_t i = 0; i < lits.size(); ++i) s += (i ? ", " : "") + lits[i];
		return s;
	};

	std::size_t required = 0;
	for (std::size_t i = 0; i < opts.rules; ++i) {
		std::string head;
		std::string b;
		switch (r.below(6)) {
		case 0: head = "{" + atom() + "}"; b = body(1); break;
		case 1: b = body(3); if (b.empty()) b = atom(); break;
		case 2:
			if (required < opts.required) {
				++required;
				head = "required(" + pool[r.below(pool.size())] + ")";
				b = body(2);
				break;
			}
			[[fallthrough]];
		default: head = atom(); b = body(3); break;
		}
		if (head.empty()) out << ":- " << b << ".\n";
		else if (b.empty()) out << head << ".\n";
		else out << head << " :- " << b << ".\n";
	}
	return out.str();
}

CAProgram random_program(std::uint64_t seed, const RandomProgramOptions& opts) {
	return compile(random_program_text(seed, opts));
}

} // namespace ezcasp
