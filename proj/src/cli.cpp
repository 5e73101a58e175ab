#include "ptrng/cli.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptrng/pipeline.hpp"
#include "ptrng/theory.hpp"

namespace ptrng {
namespace {

struct GenerateOptions {
    RunConfig config;
    std::string format = "raw";
    std::string pairing = "straddle";
    std::string out_path;    // empty: bits go to stdout
    std::string stats_path;  // empty: stats JSON to stdout (stderr when bits occupy stdout)
    std::string config_path;
};

struct TestOptions {
    std::string in_path;
    std::string format = "raw";
    std::uint64_t substream_bits = 1'000'000;
    BatteryThresholds thresholds;
    std::string report_path;
    std::string config_path;
};

struct SweepOptions {
    double mu_min = 0.0;
    double mu_max = 2.0;
    std::size_t steps = 21;
    std::uint64_t gates_per_point = 1'000'000;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string config_path;
};

std::string read_file(const std::string& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out{path, std::ios::binary};
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

void print_battery_table(std::ostream& out, const BatteryReport& report,
                         const BatteryThresholds& thresholds, bool pass) {
    char line[160];
    out << "ENT metrics (whole stream):\n";
    std::snprintf(line, sizeof line, "  entropy            = %.6f bits per bit\n",
                  report.ent.entropy_bits_per_bit);
    out << line;
    std::snprintf(line, sizeof line, "  chi-square         = %.4f (exceed probability %.2f%%)\n",
                  report.ent.chi_square_stat, 100.0 * report.ent.chi_square_exceed_prob);
    out << line;
    std::snprintf(line, sizeof line, "  arithmetic mean    = %.6f\n", report.ent.arithmetic_mean);
    out << line;
    std::snprintf(line, sizeof line, "  monte carlo pi     = %.6f (%llu points)\n",
                  report.ent.monte_carlo_pi,
                  static_cast<unsigned long long>(report.ent.monte_carlo_points));
    out << line;
    std::snprintf(line, sizeof line, "  serial correlation = %.6f\n",
                  report.ent.serial_correlation);
    out << line;

    std::snprintf(line, sizeof line,
                  "\nSTS subset: %llu substreams of %llu bits (alpha = %g)\n",
                  static_cast<unsigned long long>(report.substreams),
                  static_cast<unsigned long long>(report.substream_bits), report.alpha);
    out << line;
    out << "  test              proportion  band                  KS final p\n";
    for (const auto& [name, proportion] : report.pass_proportion) {
        const double ks = report.ks_final.at(name).value;
        std::snprintf(line, sizeof line, "  %-16s  %.4f      [%.6f, %.6f]  %.6g\n", name.c_str(),
                      proportion.proportion, proportion.low, proportion.high, ks);
        out << line;
    }
    std::snprintf(line, sizeof line,
                  "\nRESULT: %s (thresholds: KS p >= %g, proportions within band)\n",
                  pass ? "PASS" : "FAIL", thresholds.min_ks_pvalue);
    out << line;
}

int cmd_generate(GenerateOptions& options) {
    options.config.format = parse_format(options.format);
    options.config.pairing = options.pairing == "restart" ? PairingPolicy::restart_on_gap
                                                          : PairingPolicy::straddle_gaps;
    validate(options.config);

    const PipelineResult result = run_pipeline(options.config);
    const std::string encoded = encode_bits(result.bits, options.config.format);
    const std::string report = stats_report_json(options.config, result.stats).dump(2) + "\n";

    if (options.out_path.empty()) {
        std::cout.write(encoded.data(), static_cast<std::streamsize>(encoded.size()));
        std::cout.flush();
        if (options.stats_path.empty())
            std::cerr << report;  // keep stdout clean: it carries the bits
        else
            write_file(options.stats_path, report);
    } else {
        write_file(options.out_path, encoded);
        if (options.stats_path.empty())
            std::cout << report;
        else
            write_file(options.stats_path, report);
    }
    return 0;
}

int cmd_test(const TestOptions& options) {
    const OutputFormat format = parse_format(options.format);
    if (options.substream_bits < 100)
        throw std::invalid_argument("test: substream-bits must be >= 100");
    const BitStream bits = decode_bits(read_file(options.in_path), format);
    if (bits.bit_length() < options.substream_bits)
        throw std::invalid_argument("test: input shorter than one substream");
    if (bits.bit_length() / options.substream_bits < 10)
        throw std::invalid_argument(
            "test: need at least 10 full substreams for proportion analysis");

    BatteryReport report;
    try {
        report = run_battery(bits, options.substream_bits, options.thresholds.alpha);
    } catch (const std::domain_error& e) {
        // A battery that cannot even be scored (constant input, ...) is a
        // statistical rejection, not a usage error.
        std::cout << "RESULT: FAIL (degenerate stream: " << e.what() << ")\n";
        return 2;
    }
    const bool pass = battery_passes(report, options.thresholds);
    print_battery_table(std::cout, report, options.thresholds, pass);
    if (!options.report_path.empty()) {
        nlohmann::json json = to_json(report);
        json["pass"] = pass;
        write_file(options.report_path, json.dump(2) + "\n");
    }
    return pass ? 0 : 2;
}

double simulate_sweep_point(double mu, std::uint64_t gates, RandomStream stream) {
    SourceConfig source;
    source.lambda = mu;  // eta = 1, so the detected mean is mu itself
    DetectorConfig ideal;
    ideal.eta = 1.0;
    ideal.dark_prob = 0.0;
    ideal.dead_time_gates = 0;
    ideal.afterpulse_prob = 0.0;
    GateSimulator simulator{source, ideal, stream};
    VonNeumannExtractor extractor;
    for (std::uint64_t i = 0; i < gates; ++i) extractor.push_gate(simulator.next());
    return measured_efficiency(extractor.stats());
}

int cmd_sweep(const SweepOptions& options) {
    if (options.gates_per_point < 10'000)
        throw std::invalid_argument("sweep: gates-per-point must be >= 10000");
    const std::vector<theory::EfficiencyPoint> curve =
        theory::efficiency_curve(options.mu_min, options.mu_max, options.steps);

    // One independent substream per grid point, so the points can run in
    // parallel and are reproducible regardless of scheduling.
    std::vector<std::future<double>> simulated;
    simulated.reserve(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i)
        simulated.push_back(std::async(std::launch::async, simulate_sweep_point, curve[i].mu,
                                       options.gates_per_point,
                                       RandomStream{options.seed, i}));

    std::ostringstream csv;
    csv << "mu,analytic,simulated\n";
    csv.precision(12);
    for (std::size_t i = 0; i < curve.size(); ++i)
        csv << curve[i].mu << ',' << curve[i].efficiency << ',' << simulated[i].get() << '\n';

    if (options.out_path.empty())
        std::cout << csv.str();
    else
        write_file(options.out_path, csv.str());
    return 0;
}

// Applies `key=value` lines from `path` to the options of `cmd`. Values fill
// in options the user did not pass on the command line, so explicit flags keep
// precedence over the file.
void apply_config_file(CLI::App& cmd, const std::string& path) {
    const std::vector<CLI::ConfigItem> items = CLI::ConfigTOML{}.from_file(path);
    for (const CLI::ConfigItem& item : items) {
        const bool own_section =
            item.parents.size() == 1 && item.parents.front() == cmd.get_name();
        if (!item.parents.empty() && !own_section)
            throw CLI::ConfigError("unknown config section: " + item.fullname());
        if (item.name == "config") continue;  // no nested config files
        CLI::Option* option = cmd.get_option_no_throw("--" + item.name);
        if (option == nullptr)
            throw CLI::ConfigError("unknown config key: " + item.name);
        if (option->count() > 0) continue;
        if (item.inputs.empty())
            throw CLI::ConfigError("missing value for config key: " + item.name);
        for (const std::string& value : item.inputs) option->add_result(value);
        option->run_callback();
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Photon-number pulsed-laser TRNG simulator and randomness battery"};
    app.require_subcommand(1);

    GenerateOptions generate_options;
    CLI::App* generate = app.add_subcommand("generate", "Simulate the pipeline and emit random bits");
    {
        RunConfig& config = generate_options.config;
        generate->add_option("--lambda", config.source.lambda, "Mean photons per pulse")
            ->capture_default_str();
        generate->add_option("--rep-rate", config.source.rep_rate_hz, "Pulse repetition rate [Hz]")
            ->capture_default_str();
        generate->add_option("--eta", config.detector.eta, "Detection efficiency")
            ->capture_default_str();
        generate->add_option("--dark", config.detector.dark_prob, "Dark-count probability per gate")
            ->capture_default_str();
        generate
            ->add_option("--dead-time-gates", config.detector.dead_time_gates,
                         "Gates suppressed after each avalanche")
            ->capture_default_str();
        generate
            ->add_option("--afterpulse-prob", config.detector.afterpulse_prob,
                         "Afterpulse trap amplitude")
            ->capture_default_str();
        generate
            ->add_option("--afterpulse-tau", config.detector.afterpulse_tau_gates,
                         "Afterpulse lifetime [gates]")
            ->capture_default_str();
        generate->add_option("--gate-width", config.detector.gate_width_ns, "Gate width [ns], metadata")
            ->capture_default_str();
        generate->add_option("--gates", config.n_gates, "Number of detector gates")
            ->capture_default_str();
        generate->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
        generate->add_option("--stream-id", config.stream_id, "RNG substream id")
            ->capture_default_str();
        generate->add_option("--format", generate_options.format, "raw|hex|base64|ascii01")
            ->check(CLI::IsMember({"raw", "hex", "base64", "ascii01"}))
            ->capture_default_str();
        generate->add_option("--pairing", generate_options.pairing, "straddle|restart")
            ->check(CLI::IsMember({"straddle", "restart"}))
            ->capture_default_str();
        generate->add_option("--out", generate_options.out_path, "Bit-file path (default: stdout)");
        generate->add_option("--stats-out", generate_options.stats_path,
                             "Stats JSON path (default: stdout)");
        generate
            ->add_option("--substream-bits", config.substream_bits,
                         "Substream length echoed into reports")
            ->capture_default_str();
        generate->add_option("--config", generate_options.config_path,
                             "Flat key=value config file");
    }

    TestOptions test_options;
    CLI::App* test = app.add_subcommand("test", "Run the randomness battery on a bit file");
    test->add_option("file", test_options.in_path, "Input bit file")->required();
    test->add_option("--format", test_options.format, "raw|hex|base64|ascii01")
        ->check(CLI::IsMember({"raw", "hex", "base64", "ascii01"}))
        ->capture_default_str();
    test->add_option("--substream-bits", test_options.substream_bits, "Bits per substream")
        ->capture_default_str();
    test->add_option("--alpha", test_options.thresholds.alpha, "Per-test significance level")
        ->capture_default_str();
    test->add_option("--min-ks-p", test_options.thresholds.min_ks_pvalue,
                     "Smallest acceptable KS-final p-value")
        ->capture_default_str();
    test->add_option("--report-out", test_options.report_path, "Report JSON path");
    test->add_option("--config", test_options.config_path, "Flat key=value config file");

    SweepOptions sweep_options;
    CLI::App* sweep = app.add_subcommand("sweep", "Efficiency sweep: analytic vs simulated");
    sweep->add_option("--mu-min", sweep_options.mu_min, "Lowest detected mean")
        ->capture_default_str();
    sweep->add_option("--mu-max", sweep_options.mu_max, "Highest detected mean")
        ->capture_default_str();
    sweep->add_option("--steps", sweep_options.steps, "Grid points (endpoints included)")
        ->capture_default_str();
    sweep->add_option("--gates-per-point", sweep_options.gates_per_point, "Gates per grid point")
        ->capture_default_str();
    sweep->add_option("--seed", sweep_options.seed, "RNG seed")->capture_default_str();
    sweep->add_option("--out", sweep_options.out_path, "CSV path (default: stdout)");
    sweep->add_option("--config", sweep_options.config_path, "Flat key=value config file");

    try {
        app.parse(argc, argv);
        if (generate->parsed() && !generate_options.config_path.empty())
            apply_config_file(*generate, generate_options.config_path);
        if (test->parsed() && !test_options.config_path.empty())
            apply_config_file(*test, test_options.config_path);
        if (sweep->parsed() && !sweep_options.config_path.empty())
            apply_config_file(*sweep, sweep_options.config_path);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (generate->parsed()) return cmd_generate(generate_options);
        if (test->parsed()) return cmd_test(test_options);
        if (sweep->parsed()) return cmd_sweep(sweep_options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace ptrng
