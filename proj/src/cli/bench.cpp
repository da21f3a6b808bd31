// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "ezcasp/cli.hpp"

namespace ezcasp {

namespace {

std::string trim(const std::string& s) {
	const auto b = s.find_first_not_of(" \t\r");
	if (b == std::string::npos) return "";
	return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string read_text(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw Error("cannot open " + path);
	std::ostringstream s;
	s << in.rdbuf();
	return s.str();
}

} // namespace

std::vector<BenchRow> parse_bench_spec(const std::string& text) {
	std::vector<BenchRow> rows;
	std::istringstream in(text);
	std::string line;
	for (std::size_t n = 1; std::getline(in, line); ++n) {
		const std::string t = trim(line);
		if (t.empty() || t[0] == '#') continue;
		const auto tab = t.find('\t');
		if (tab == std::string::npos) throw Error("bench spec line " + std::to_string(n) + ": expected instance<TAB>schema");
		const auto schema = parse_schema(trim(t.substr(tab + 1)));
		if (!schema) throw Error("bench spec line " + std::to_string(n) + ": unknown schema " + trim(t.substr(tab + 1)));
		rows.push_back({trim(t.substr(0, tab)), *schema});
	}
	return rows;
}

RunReport run_instance(const std::string& path, Schema schema, Semantics semantics) {
	RunReport r;
	r.instance = path;
	r.schema = schema;
	r.semantics = semantics;
	const auto start = std::chrono::steady_clock::now();
	try {
		SchemaConfig c;
		c.schema = schema;
		c.semantics = semantics;
		c.limit = 0;
		c.alpha_limit = 1;
		const SolveOutput o = solve_ca(compile(read_text(path)), c);
		r.answers = o.answers.size();
		r.stats = o.stats;
		r.outcome = o.outcome == Outcome::Budget ? "BUDGET" : (o.answers.empty() ? "UNSAT" : "SAT");
	} catch (const std::exception& e) {
		r.outcome = "ERROR";
		r.error = e.what();
	}
	r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	return r;
}

std::vector<RunReport> run_bench(const std::vector<BenchRow>& rows, Semantics semantics, const std::string& base_dir) {
	std::vector<RunReport> out(rows.size());
	std::atomic<std::size_t> next{0};
	auto worker = [&] {
		for (std::size_t i = next++; i < rows.size(); i = next++) {
			std::filesystem::path path(rows[i].instance);
			if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
			out[i] = run_instance(path.string(), rows[i].schema, semantics);
			out[i].instance = rows[i].instance;
		}
	};
	const std::size_t n = std::min<std::size_t>(rows.size(), std::max(1u, std::thread::hardware_concurrency()));
	std::vector<std::thread> pool;
	for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
	for (auto& t : pool) t.join();
	return out;
}

std::string format_table(const std::vector<RunReport>& reports) {
	std::size_t w = 8;
	for (const auto& r : reports) w = std::max(w, r.instance.size());
	std::ostringstream out;
	out << std::left << std::setw(static_cast<int>(w)) << "instance" << "  schema  semantics  outcome  answers"
	    << "  decisions  propagations  csp_checks  learned  restarts  time_ms\n";
	for (const auto& r : reports) {
		out << std::left << std::setw(static_cast<int>(w)) << r.instance << "  " << std::setw(6) << to_string(r.schema)
		    << "  " << std::setw(9) << to_string(r.semantics) << "  " << std::setw(7) << r.outcome << std::right << "  "
		    << std::setw(7) << r.answers << "  " << std::setw(9) << r.stats.decisions << "  " << std::setw(12)
		    << r.stats.propagations << "  " << std::setw(10) << r.stats.csp_checks << "  " << std::setw(7)
		    << r.stats.learned << "  " << std::setw(8) << r.stats.restarts << "  " << std::setw(7) << std::fixed
		    << std::setprecision(1) << r.wall_ms;
		if (!r.error.empty()) out << "  " << r.error;
		out << "\n";
	}
	return out.str();
}

std::string format_tsv(const std::vector<RunReport>& reports) {
	std::ostringstream out;
	out << "instance\tschema\tsemantics\toutcome\tanswers\tdecisions\tpropagations\tcsp_checks\tlearned\trestarts\t"
	       "steps\twall_ms\terror\n";
	for (const auto& r : reports)
		out << r.instance << '\t' << to_string(r.schema) << '\t' << to_string(r.semantics) << '\t' << r.outcome << '\t'
		    << r.answers << '\t' << r.stats.decisions << '\t' << r.stats.propagations << '\t' << r.stats.csp_checks << '\t'
		    << r.stats.learned << '\t' << r.stats.restarts << '\t' << r.stats.steps << '\t' << std::fixed
		    << std::setprecision(3) << r.wall_ms << '\t' << r.error << '\n';
	return out.str();
}

} // namespace ezcasp
