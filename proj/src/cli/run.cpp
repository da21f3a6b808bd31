// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "ezcasp/cli.hpp"
#include "ezcasp/oracle.hpp"

namespace ezcasp {

namespace {

std::string read_text(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw Error("cannot open " + path);
	std::ostringstream s;
	s << in.rdbuf();
	return s.str();
}

void write_text(const std::string& path, const std::string& text) {
	std::ofstream o(path);
	if (!o) throw Error("cannot write " + path);
	o << text;
}

struct Options {
	std::string file;
	std::string schema = "black";
	std::string semantics = "weak";
	std::size_t n = 1;
	std::size_t check_freq = 1;
	bool dump_ground = false;
	std::string dump_trace;
	std::string validate;
	std::string emit;
	bool oracle = false;
	std::string bench_spec;
	bool tsv = false;
};

int bench(const Options& o, Semantics sem, std::ostream& out) {
	const auto rows = parse_bench_spec(read_text(o.bench_spec));
	const auto reports = run_bench(rows, sem, std::filesystem::path(o.bench_spec).parent_path().string());
	out << (o.tsv ? format_tsv(reports) : format_table(reports));
	return 0;
}

int solve(const Options& o, Semantics sem, std::ostream& out, std::ostream& err) {
	const std::string text = read_text(o.file);
	if (o.dump_ground) {
		const EzProgram g = ground(preprocess(parse(text)));
		out << pretty_print(expand_lists(g, collect_variables(g)));
		return 0;
	}
	const CAProgram p = compile(text);
	if (!o.validate.empty()) {
		const ValidationReport r = validate_trace(trace_from_jsonl(read_text(o.validate)), p);
		if (!r.ok) {
			err << "invalid trace at step " << r.index << ": " << r.reason << "\n";
			return 1;
		}
		out << "valid trace\n";
		return 0;
	}

	std::vector<ExtendedAnswerSet> answers;
	bool budget = false;
	if (o.oracle) {
		answers = enumerate_extended_answer_sets(p, sem);
		if (o.n && answers.size() > o.n) answers.resize(o.n);
	} else {
		SchemaConfig c;
		c.schema = *parse_schema(o.schema);
		c.semantics = sem;
		c.limit = o.n;
		c.check_frequency = o.check_freq;
		c.record_trace = !o.dump_trace.empty();
		SolveOutput r = solve_ca(p, c);
		if (c.record_trace) write_text(o.dump_trace, trace_to_jsonl(r.trace, p));
		answers = std::move(r.answers);
		budget = r.outcome == Outcome::Budget;
	}

	for (const auto& a : answers) out << format_answer(p, a) << "\n";
	if (!o.emit.empty()) {
		std::string clp;
		for (const auto& a : answers) clp += emit_clp(p, a.atoms, sem) + "\n";
		write_text(o.emit, clp);
	}
	if (budget) {
		err << "error: step budget exhausted\n";
		return 1;
	}
	if (answers.empty()) {
		out << "UNSATISFIABLE\n";
		return 20;
	}
	return 10;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
	Options o;
	CLI::App app{"Constraint answer set solver", "ezcasp"};
	app.add_option("file", o.file, "EZ program");
	app.add_option("--schema", o.schema, "black, grey or clear")->check(CLI::IsMember({"black", "grey", "gray", "clear"}));
	app.add_option("--semantics", o.semantics, "weak or full")->check(CLI::IsMember({"weak", "full"}));
	app.add_option("-n", o.n, "extended answer sets to print (0 = all)");
	app.add_option("--check-freq", o.check_freq, "clear-box CSP check every K decisions")->check(CLI::PositiveNumber);
	app.add_flag("--dump-ground", o.dump_ground, "print the ground program");
	app.add_option("--dump-trace", o.dump_trace, "write the transition trace as JSON lines");
	app.add_option("--validate-trace", o.validate, "replay a trace against the program");
	app.add_option("--emit-clp", o.emit, "write the CLP(FD) clause of every printed answer");
	app.add_flag("--oracle", o.oracle, "enumerate by brute force");
	CLI::App* b = app.add_subcommand("bench", "run instance<TAB>schema rows");
	b->add_option("spec", o.bench_spec, "bench spec file")->required();
	b->add_flag("--tsv", o.tsv, "tab-separated rows");
	b->add_option("--semantics", o.semantics, "weak or full")->check(CLI::IsMember({"weak", "full"}));

	std::vector<std::string> rev(args.rbegin(), args.rend());
	try {
		app.parse(rev);
	} catch (const CLI::ParseError& e) {
		if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
			out << app.help();
			return 0;
		}
		err << "error: " << e.what() << "\n";
		return 1;
	}

	try {
		const Semantics sem = *parse_semantics(o.semantics);
		if (b->parsed()) return bench(o, sem, out);
		if (o.file.empty()) {
			err << "error: missing input file\n";
			return 1;
		}
		return solve(o, sem, out, err);
	} catch (const std::exception& e) {
		err << "error: " << e.what() << "\n";
		return 1;
	}
}

} // namespace ezcasp
