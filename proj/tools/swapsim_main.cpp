#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "swapsim/protocol.hpp"
#include "swapsim/vectors.hpp"

namespace {

using namespace swapsim;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

int cmd_run(const std::string& scenario, const std::string& profile, std::uint64_t seed,
            bool seed_set, const std::string& config_path, const std::string& out_path,
            bool quiet) {
    ScenarioScript script;
    if (!config_path.empty()) {
        script = ScenarioScript::from_json(Json::parse(read_file(config_path)));
    } else {
        script.name = "happy";
    }
    if (!scenario.empty()) script.name = scenario;
    if (!profile.empty()) script.profile = profile;
    if (seed_set) script.seed = seed;
    // Route flag values through the same validation as config files.
    script = ScenarioScript::from_json(script.to_json());

    ScenarioResult result = run_scenario(script);
    if (!out_path.empty()) write_file(out_path, trace_to_jsonl(result.trace));
    if (!quiet) std::cout << result.summary().dump(2) << '\n';

    bool ok = result.atomic && result.conservation_ok;
    if (!ok && !quiet) std::cerr << "scenario violated the atomicity invariant\n";
    return ok ? 0 : 1;
}

int cmd_vectors_generate(const std::string& path, std::uint64_t seed) {
    std::vector<std::string> lines = generate_vectors(seed);
    std::string content;
    for (const std::string& line : lines) {
        content += line;
        content += '\n';
    }
    write_file(path, content);
    std::cout << "wrote " << lines.size() << " vectors to " << path << '\n';
    return 0;
}

int cmd_vectors_verify(const std::string& path) {
    std::vector<std::string> lines;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    std::vector<VectorFailure> failures = verify_vector_lines(lines);
    if (failures.empty()) {
        std::cout << "all vectors verify\n";
        return 0;
    }
    for (const VectorFailure& f : failures)
        std::cerr << path << ":" << f.line << ": " << f.reason << '\n';
    return 1;
}

int cmd_trace_diff(const std::string& a_path, const std::string& b_path) {
    std::vector<TraceEvent> a = trace_from_jsonl(read_file(a_path));
    std::vector<TraceEvent> b = trace_from_jsonl(read_file(b_path));
    TraceDiff diff = trace_diff(a, b);
    if (diff.identical) {
        std::cout << "traces identical (" << a.size() << " events)\n";
        return 0;
    }
    std::cerr << "traces diverge at event " << diff.index << ": " << diff.note << '\n';
    std::cerr << "  left:  " << (diff.left.empty() ? "<none>" : diff.left) << '\n';
    std::cerr << "  right: " << (diff.right.empty() ? "<none>" : diff.right) << '\n';
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cross-chain swap simulator"};
    app.require_subcommand(1);

    std::string scenario, profile, config_path, out_path;
    std::uint64_t seed = 1;
    bool quiet = false;

    CLI::App* run = app.add_subcommand("run", "Run a scenario and report its outcome");
    run->add_option("--scenario", scenario, "happy | maker_ghost | taker_ghost | eve_replay | facilitated");
    run->add_option("--profile", profile, "toy | secp256k1");
    CLI::Option* seed_opt = run->add_option("--seed", seed, "Deterministic seed");
    run->add_option("--config", config_path, "JSON config file (flags override it)");
    run->add_option("--out", out_path, "Write the trace (JSON lines) here");
    run->add_flag("--quiet", quiet, "Suppress the summary");

    std::string vec_path;
    std::uint64_t vec_seed = 1;
    CLI::App* vectors = app.add_subcommand("vectors", "Generate or verify test vectors");
    vectors->require_subcommand(1);
    CLI::App* vgen = vectors->add_subcommand("generate", "Write vectors to a file");
    vgen->add_option("path", vec_path, "Output file")->required();
    vgen->add_option("--seed", vec_seed, "Deterministic seed");
    CLI::App* vver = vectors->add_subcommand("verify", "Replay vectors from a file");
    vver->add_option("path", vec_path, "Input file")->required();

    std::string diff_a, diff_b;
    CLI::App* tdiff = app.add_subcommand("trace-diff", "Compare two trace files");
    tdiff->add_option("a", diff_a, "First trace")->required();
    tdiff->add_option("b", diff_b, "Second trace")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(scenario, profile, seed, seed_opt->count() > 0, config_path,
                           out_path, quiet);
        if (vectors->parsed())
            return vgen->parsed() ? cmd_vectors_generate(vec_path, vec_seed)
                                  : cmd_vectors_verify(vec_path);
        if (tdiff->parsed()) return cmd_trace_diff(diff_a, diff_b);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
