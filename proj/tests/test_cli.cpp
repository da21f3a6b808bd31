#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"

#include "ezcasp/cli.hpp"
#include "programs.hpp"

using namespace ezcasp;
using namespace fixtures;

namespace {

struct Run {
	int code = 0;
	std::string out;
	std::string err;
};

Run cli(std::vector<std::string> args) {
	std::ostringstream out, err;
	Run r;
	r.code = run_cli(args, out, err);
	r.out = out.str();
	r.err = err.str();
	return r;
}

std::string temp_file(const std::string& name, const std::string& text = "") {
	const auto path = std::filesystem::temp_directory_path() / ("ezcasp_test_" + name);
	std::ofstream(path) << text;
	return path.string();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("light domain output") {
	const Run r = cli({encoding_path("light.ez")});
	CHECK(r.code == 10);
	CHECK(r.out == "{ cspdomain(fd), cspvar(x,0,23), lightOn, required(x >= 12), switch, x=12 }\n");
	CHECK(cli({encoding_path("light.ez"), "-n", "0"}).out.size() > r.out.size() * 11);
	CHECK(lines(cli({encoding_path("light.ez"), "-n", "0", "--schema", "clear"}).out) == 12);
}

TEST_CASE("empty program and unsatisfiable programs") {
	const Run e = cli({temp_file("empty.ez"), "-n", "0"});
	CHECK(e.code == 10);
	CHECK(e.out == "{}\n");
	const Run u = cli({encoding_path("weak_vs_full.ez"), "--semantics", "full"});
	CHECK(u.code == 20);
	CHECK(u.out == "UNSATISFIABLE\n");
}

TEST_CASE("riddle: exactly one extended answer set") {
	for (const char* schema : {"black", "grey", "clear"}) {
		const Run r = cli({encoding_path("riddle.ez"), "-n", "0", "--schema", schema});
		CHECK(r.code == 10);
		CHECK(lines(r.out) == 1);
		CHECK(r.out.find("age(1)=12, age(2)=9, age(3)=6 }") != std::string::npos);
	}
	CHECK(cli({encoding_path("riddle.ez"), "--oracle"}).code == 1); // beyond the oracle bounds
}

TEST_CASE("oracle mode agrees with the solver") {
	const Run a = cli({encoding_path("night_am.ez"), "--oracle", "-n", "0", "--semantics", "full"});
	CHECK(a.code == 10);
	CHECK(lines(a.out) == 3);
	const Run b = cli({encoding_path("light.ez"), "--oracle"});
	CHECK(b.out == cli({encoding_path("light.ez")}).out);
}

TEST_CASE("errors exit with status 1") {
	CHECK(cli({encoding_path("light.ez"), "--bogus"}).code == 1);
	CHECK(cli({encoding_path("light.ez"), "--schema", "white"}).code == 1);
	CHECK(cli({"/nonexistent/file.ez"}).code == 1);
	CHECK(cli({}).code == 1);
	const Run bad = cli({temp_file("bad.ez", "p :- q(.\n")});
	CHECK(bad.code == 1);
	CHECK(bad.err.find("1:8") != std::string::npos);
	CHECK(cli({"--help"}).code == 0);

	setenv("EZCASP_STEP_BUDGET", "10", 1);
	const Run budget = cli({encoding_path("rf_toy.ez")});
	unsetenv("EZCASP_STEP_BUDGET");
	CHECK(budget.code == 1);
	CHECK(budget.err.find("budget") != std::string::npos);
}

TEST_CASE("output is deterministic") {
	for (const char* f : {"wseq_toy.ez", "is_toy.ez", "rf_toy.ez"}) {
		const Run a = cli({encoding_path(f), "-n", "0", "--schema", "grey"});
		CHECK(a.code == 10);
		CHECK(a.out == cli({encoding_path(f), "-n", "0", "--schema", "grey"}).out);
	}
}

TEST_CASE("CLP export") {
	const std::string clp = temp_file("light.pl");
	CHECK(cli({encoding_path("light.ez"), "--emit-clp", clp}).code == 10);
	CHECK(read_file(clp) == "solve([x,V_x]) :- V_x >= 0, V_x <= 23, V_x >= 12, labeling([V_x]).\n");

	CHECK(emit_clp(compile("a."), Interpretation{true}) == "solve([]) :- labeling([]).");

	const std::string two = std::string(EZCASP_SOURCE_DIR) + "/tests/golden/clp_two_vars";
	CHECK(cli({two + ".ez", "--emit-clp", clp}).code == 10);
	CHECK(read_file(clp) == read_file(two + ".pl"));

	const CAProgram p = light_program();
	Interpretation m(p.pi.num_atoms());
	m[atom_of(p, "|x >= 12|")] = true;
	CHECK(emit_clp(p, m) == "solve([x,V_x]) :- V_x >= 12, labeling([V_x]).");
	CHECK(emit_clp(p, m, Semantics::Full) == "solve([x,V_x]) :- V_x >= 12, V_x >= 12, labeling([V_x]).");
}

TEST_CASE("ground program dump") {
	const Run r = cli({encoding_path("light.ez"), "--dump-ground"});
	CHECK(r.code == 0);
	CHECK(r.out.find("lightOn :- switch, not am.") != std::string::npos);
	const Run again = cli({temp_file("ground.ez", r.out)});
	CHECK(again.out == cli({encoding_path("light.ez")}).out);
}

TEST_CASE("trace dump and validation") {
	const std::string trace = temp_file("trace.jsonl");
	for (const char* schema : {"black", "grey", "clear"}) {
		CHECK(cli({encoding_path("night_am.ez"), "-n", "0", "--schema", schema, "--dump-trace", trace}).code == 10);
		const Run v = cli({encoding_path("night_am.ez"), "--validate-trace", trace});
		CHECK(v.code == 0);
		CHECK(v.out == "valid trace\n");
	}
	const Run wrong = cli({encoding_path("light.ez"), "--validate-trace", trace});
	CHECK(wrong.code == 1);
	CHECK(wrong.err.find("invalid trace at step") != std::string::npos);
	CHECK(cli({encoding_path("light.ez"), "--validate-trace", temp_file("junk.jsonl", "{")}).code == 1);
}

TEST_CASE("bench") {
	const Run empty = cli({"bench", temp_file("empty.tsv")});
	CHECK(empty.code == 0);
	CHECK(lines(empty.out) == 1);

	const Run r = cli({"bench", encoding_path("bench.tsv"), "--tsv"});
	CHECK(r.code == 0);
	REQUIRE(lines(r.out) == 10);
	std::istringstream in(r.out);
	std::string line;
	std::getline(in, line);
	std::map<std::string, std::set<std::string>> outcome;
	while (std::getline(in, line)) {
		std::vector<std::string> cols;
		std::istringstream cs(line);
		for (std::string c; std::getline(cs, c, '\t');) cols.push_back(c);
		outcome[cols[0]].insert(cols[3] + "/" + cols[4]);
	}
	CHECK(outcome.size() == 3);
	for (const auto& [instance, o] : outcome) {
		INFO(instance);
		CHECK(o.size() == 1);
		CHECK(o.begin()->rfind("SAT/", 0) == 0);
	}

	CHECK(parse_bench_spec("# comment\n\na.ez\tclear\n").size() == 1);
	CHECK_THROWS_AS(parse_bench_spec("a.ez clear\n"), Error);
	CHECK_THROWS_AS(parse_bench_spec("a.ez\twhite\n"), Error);
	const auto missing = run_bench({{"missing.ez", Schema::Black}}, Semantics::Weak, "/nonexistent");
	REQUIRE(missing.size() == 1);
	CHECK(missing[0].outcome == "ERROR");
}
