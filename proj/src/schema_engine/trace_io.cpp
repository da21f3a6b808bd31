// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "ezcasp/schema_engine.hpp"

namespace ezcasp {

namespace {

using nlohmann::json;

std::int64_t signed_lit(Lit l) {
	const auto v = static_cast<std::int64_t>(l.atom()) + 1;
	return l.negative() ? -v : v;
}

Lit lit_from(const json& j) {
	const std::int64_t v = j.get<std::int64_t>();
	if (v == 0) throw Error("trace: literal 0");
	const auto a = static_cast<Atom>((v < 0 ? -v : v) - 1);
	return v < 0 ? Lit::neg(a) : Lit::pos(a);
}

json lits(const std::vector<Lit>& ls) {
	json out = json::array();
	for (Lit l : ls) out.push_back(signed_lit(l));
	return out;
}

std::vector<Lit> lits_from(const json& j) {
	std::vector<Lit> out;
	for (const auto& x : j) out.push_back(lit_from(x));
	return out;
}

json digest_json(const StateDigest& d) {
	if (!d.present) return nullptr;
	if (d.fail) return json{{"fail", true}};
	char hex[17];
	std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(d.hash));
	return json{{"m", d.m}, {"d", d.decisions}, {"g", d.gamma}, {"l", d.lambda}, {"h", hex}};
}

StateDigest digest_from(const json& j) {
	StateDigest d;
	if (j.value("fail", false)) {
		d.fail = true;
		return d;
	}
	d.m = j.at("m").get<std::size_t>();
	d.decisions = j.at("d").get<std::size_t>();
	d.gamma = j.at("g").get<std::size_t>();
	d.lambda = j.at("l").get<std::size_t>();
	d.hash = std::stoull(j.at("h").get<std::string>(), nullptr, 16);
	return d;
}

} // namespace

std::string trace_to_jsonl(const Trace& t, const CAProgram& p) {
	std::ostringstream out;
	out << json{{"trace", "ezcasp"},
	            {"schema", to_string(t.schema)},
	            {"semantics", to_string(t.semantics)},
	            {"atoms", t.num_atoms},
	            {"complete", t.complete}}
	           .dump()
	    << '\n';
	for (const TraceStep& s : t.steps) {
		json j{{"rule", s.rule}};
		if (s.lit) {
			j["lit"] = signed_lit(*s.lit);
			const Atom a = s.lit->atom();
			j["name"] = (s.lit->negative() ? "-" : "") + (a < p.pi.num_atoms() ? p.display(a) : std::to_string(a));
		}
		if (s.rule == "UnitPropagate") j["clause"] = lits(s.clause);
		if (s.rule == "Unfounded") j["unfounded"] = s.unfounded;
		if (s.rule == "Learn" || s.rule == "Learn_t") j["denial"] = lits(s.denial);
		if (s.blocking) j["blocking"] = true;
		if (s.pre.present) j["pre"] = digest_json(s.pre);
		if (s.post.present) j["post"] = digest_json(s.post);
		out << j.dump() << '\n';
	}
	return out.str();
}

Trace trace_from_jsonl(const std::string& text) {
	Trace t;
	std::istringstream in(text);
	std::string line;
	std::size_t n = 0;
	bool header = false;
	while (std::getline(in, line)) {
		++n;
		if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
		try {
			const json j = json::parse(line);
			if (!header) {
				if (j.value("trace", "") != "ezcasp") throw Error("missing trace header");
				auto schema = parse_schema(j.at("schema").get<std::string>());
				auto sem = parse_semantics(j.at("semantics").get<std::string>());
				if (!schema || !sem) throw Error("bad schema or semantics");
				t.schema = *schema;
				t.semantics = *sem;
				t.num_atoms = j.at("atoms").get<std::size_t>();
				t.complete = j.value("complete", true);
				header = true;
				continue;
			}
			TraceStep s;
			s.rule = j.at("rule").get<std::string>();
			if (j.contains("lit")) s.lit = lit_from(j["lit"]);
			if (j.contains("clause")) s.clause = lits_from(j["clause"]);
			if (j.contains("unfounded")) s.unfounded = j["unfounded"].get<std::vector<Atom>>();
			if (j.contains("denial")) s.denial = lits_from(j["denial"]);
			s.blocking = j.value("blocking", false);
			s.pre.present = s.post.present = false;
			if (j.contains("pre")) s.pre = digest_from(j["pre"]);
			if (j.contains("post")) s.post = digest_from(j["post"]);
			t.steps.push_back(std::move(s));
		} catch (const json::exception& e) {
			throw Error("trace line " + std::to_string(n) + ": " + e.what());
		} catch (const Error& e) {
			throw Error("trace line " + std::to_string(n) + ": " + e.what());
		}
	}
	if (!header) throw Error("trace: empty input");
	return t;
}

} // namespace ezcasp
