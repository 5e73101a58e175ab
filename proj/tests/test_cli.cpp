#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptrng/cli.hpp"
#include "ptrng/formats.hpp"
#include "ptrng/random.hpp"

namespace fs = std::filesystem;

namespace {

int cli(std::initializer_list<std::string> args) {
    std::vector<std::string> storage = {"ptrng"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(storage.size());
    for (const std::string& s : storage) argv.push_back(s.c_str());
    return ptrng::run_cli(int(argv.size()), argv.data());
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "ptrng_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in{path, std::ios::binary};
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

void spill(const fs::path& path, const std::string& data) {
    std::ofstream out{path, std::ios::binary};
    REQUIRE(out.good());
    out.write(data.data(), std::streamsize(data.size()));
}

}  // namespace

TEST_SUITE("cli") {

    TEST_CASE("usage errors exit with code 1, help with 0") {
        CHECK(cli({}) == 1);
        CHECK(cli({"frobnicate"}) == 1);
        CHECK(cli({"generate", "--no-such-flag"}) == 1);
        CHECK(cli({"test", "/no/such/file.bin", "--substream-bits", "100"}) == 1);
        CHECK(cli({"--help"}) == 0);
    }

    TEST_CASE("generate writes deterministic bits and a config-echoing report") {
        const fs::path dir = scratch_dir();
        const fs::path bits_a = dir / "gen_a.bin";
        const fs::path bits_b = dir / "gen_b.bin";
        const fs::path stats_a = dir / "gen_a.json";
        const fs::path stats_b = dir / "gen_b.json";

        REQUIRE(cli({"generate", "--gates", "100000", "--seed", "5", "--out",
                     bits_a.string(), "--stats-out", stats_a.string()}) == 0);
        REQUIRE(cli({"generate", "--gates", "100000", "--seed", "5", "--out",
                     bits_b.string(), "--stats-out", stats_b.string()}) == 0);
        CHECK(slurp(bits_a) == slurp(bits_b));
        CHECK(slurp(stats_a) == slurp(stats_b));

        const nlohmann::json report = nlohmann::json::parse(slurp(stats_a));
        CHECK(report.at("config").at("n_gates").get<std::uint64_t>() == 100'000);
        CHECK(report.at("config").at("seed").get<std::uint64_t>() == 5);
        CHECK(report.at("efficiency").get<double>() > 0.2);
        CHECK(report.at("stats").at("bits_emitted").get<std::uint64_t>() > 0);
    }

    TEST_CASE("generate formats agree with the raw payload") {
        const fs::path dir = scratch_dir();
        const fs::path raw_path = dir / "fmt.bin";
        const fs::path hex_path = dir / "fmt.hex";
        const fs::path b64_path = dir / "fmt.b64";
        const fs::path devnull = dir / "fmt_stats.json";

        for (const char* format : {"raw", "hex", "base64"}) {
            const fs::path& out = format == std::string{"raw"}
                                      ? raw_path
                                      : (format == std::string{"hex"} ? hex_path : b64_path);
            REQUIRE(cli({"generate", "--gates", "50000", "--seed", "8", "--format", format,
                         "--out", out.string(), "--stats-out", devnull.string()}) == 0);
        }
        const ptrng::BitStream raw = ptrng::decode_bits(slurp(raw_path), ptrng::OutputFormat::raw);
        CHECK(ptrng::decode_bits(slurp(hex_path), ptrng::OutputFormat::hex) == raw);
        CHECK(ptrng::decode_bits(slurp(b64_path), ptrng::OutputFormat::base64) == raw);
    }

    TEST_CASE("config file values apply and explicit flags win") {
        const fs::path dir = scratch_dir();
        const fs::path config = dir / "run.cfg";
        const fs::path bits = dir / "cfg.bin";
        const fs::path stats = dir / "cfg.json";
        spill(config, "lambda=1.25\ngates=40000\nseed=77\n");

        REQUIRE(cli({"generate", "--config", config.string(), "--gates", "60000", "--out",
                     bits.string(), "--stats-out", stats.string()}) == 0);
        const nlohmann::json report = nlohmann::json::parse(slurp(stats));
        CHECK(report.at("config").at("lambda").get<double>() == doctest::Approx(1.25));
        CHECK(report.at("config").at("seed").get<std::uint64_t>() == 77);
        // The command line overrides the file.
        CHECK(report.at("config").at("n_gates").get<std::uint64_t>() == 60'000);
    }

    TEST_CASE("invalid configuration values exit with code 1") {
        const fs::path dir = scratch_dir();
        const fs::path bits = dir / "invalid.bin";
        CHECK(cli({"generate", "--lambda", "-3", "--out", bits.string()}) == 1);
        CHECK(cli({"generate", "--gates", "1", "--out", bits.string()}) == 1);
    }

    TEST_CASE("battery on healthy simulator output passes") {
        const fs::path dir = scratch_dir();
        const fs::path bits = dir / "healthy.bin";
        const fs::path stats = dir / "healthy_stats.json";
        const fs::path report_path = dir / "healthy_report.json";
        REQUIRE(cli({"generate", "--gates", "4500000", "--seed", "3", "--out", bits.string(),
                     "--stats-out", stats.string()}) == 0);

        CHECK(cli({"test", bits.string(), "--substream-bits", "1000", "--report-out",
                   report_path.string()}) == 0);
        const nlohmann::json report = nlohmann::json::parse(slurp(report_path));
        CHECK(report.at("pass").get<bool>());
        const double mean = report.at("ent").at("arithmetic_mean").get<double>();
        CHECK(mean >= 0.0);
        CHECK(mean <= 1.0);
        CHECK(report.at("substreams").get<std::uint64_t>() >= 10);
    }

    TEST_CASE("degenerate and biased inputs exit with code 2") {
        const fs::path dir = scratch_dir();
        const fs::path zeros = dir / "zeros.bin";
        spill(zeros, std::string(1250, '\0'));  // 10^4 zero bits
        CHECK(cli({"test", zeros.string(), "--substream-bits", "1000"}) == 2);

        ptrng::Xoshiro256StarStar rng{ptrng::RandomStream{99, 0}};
        ptrng::BitStream biased;
        for (int i = 0; i < 100'000; ++i) biased.append_bit(rng.bernoulli(0.6));
        const fs::path biased_path = dir / "biased.bin";
        spill(biased_path, ptrng::encode_bits(biased, ptrng::OutputFormat::raw));
        CHECK(cli({"test", biased_path.string(), "--substream-bits", "1000"}) == 2);
    }

    TEST_CASE("too few substreams is a usage error, not a statistical verdict") {
        const fs::path dir = scratch_dir();
        const fs::path bits = dir / "short.bin";
        spill(bits, std::string(1250, '\x5A'));  // 10^4 bits
        CHECK(cli({"test", bits.string(), "--substream-bits", "5000"}) == 1);
        CHECK(cli({"test", bits.string(), "--substream-bits", "20000"}) == 1);
    }

    TEST_CASE("sweep emits the documented CSV and peaks at the right grid point") {
        const fs::path dir = scratch_dir();
        const fs::path csv_path = dir / "sweep.csv";
        REQUIRE(cli({"sweep", "--mu-min", "0", "--mu-max", "2", "--steps", "21",
                     "--gates-per-point", "20000", "--seed", "4", "--out",
                     csv_path.string()}) == 0);

        std::istringstream csv{slurp(csv_path)};
        std::string line;
        REQUIRE(std::getline(csv, line));
        CHECK(line == "mu,analytic,simulated");
        std::vector<double> mu, analytic, simulated;
        while (std::getline(csv, line)) {
            std::istringstream row{line};
            std::string field;
            REQUIRE(std::getline(row, field, ','));
            mu.push_back(std::stod(field));
            REQUIRE(std::getline(row, field, ','));
            analytic.push_back(std::stod(field));
            REQUIRE(std::getline(row, field, ','));
            simulated.push_back(std::stod(field));
        }
        REQUIRE(mu.size() == 21);
        CHECK(mu.front() == 0.0);
        CHECK(analytic.front() == 0.0);
        CHECK(simulated.front() == 0.0);
        CHECK(mu.back() == doctest::Approx(2.0));

        std::size_t argmax = 0;
        for (std::size_t i = 1; i < analytic.size(); ++i)
            if (analytic[i] > analytic[argmax]) argmax = i;
        CHECK(mu[argmax] == doctest::Approx(0.7));
        for (std::size_t i = 0; i < mu.size(); ++i)
            CHECK(std::abs(simulated[i] - analytic[i]) < 0.05);  // loose: 2e4 gates/point
    }

    TEST_CASE("sweep rejects too little data per point") {
        CHECK(cli({"sweep", "--gates-per-point", "9999"}) == 1);
        CHECK(cli({"sweep", "--mu-min", "2", "--mu-max", "1"}) == 1);
    }
}
