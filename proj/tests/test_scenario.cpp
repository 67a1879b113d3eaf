#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "easer/scenario.hpp"

using namespace easer;
namespace fs = std::filesystem;

namespace {

std::string tmp_path(const std::string& name) {
    return (fs::temp_directory_path() / ("easer_scn_" + name)).string();
}

std::string write_config(const std::string& name, const std::string& body) {
    const std::string path = tmp_path(name);
    std::ofstream out(path);
    out << body;
    return path;
}

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// header line followed by data lines; comment and blank lines dropped
std::vector<std::string> table_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

}  // namespace

TEST_CASE("config files round-trip every key") {
    const std::string path = write_config("roundtrip.conf", R"(
# comment line
scenario = montecarlo
out = /tmp/x.csv
format = json
seed = 9

pdc.tau = 0.25
pdc.pump_phase = 0.5
pdc.cutoff = 9
pdc.mean_pairs = 0.75
pdc.truncation_tol = 1e-4

double_pass.tau1 = 0.11
double_pass.tau2 = 0.12
double_pass.theta = 1.5
double_pass.overlap = 0.8
double_pass.pump_wavelength_um = 0.4
double_pass.coherence_length_um = 100
double_pass.cutoff = 7

detection.efficiency = 0.9
detection.basis = diag
detection.splitters = aH,bV
detection.number_resolving = yes

scan.theta_min = 0.1
scan.theta_max = 5.0
scan.theta_steps = 11
scan.delay_min_um = -100
scan.delay_max_um = 100
scan.delay_steps = 21
scan.order = 4
scan.term = 1111

montecarlo.pulses = 5000
)");
    const ScenarioConfig cfg = load_scenario_config(path);
    CHECK(cfg.scenario == "montecarlo");
    CHECK(cfg.output_path == "/tmp/x.csv");
    CHECK(cfg.format == OutputFormat::json);
    CHECK(cfg.seed == 9);
    CHECK(cfg.tau == 0.25);
    CHECK(cfg.pump_phase == 0.5);
    CHECK(cfg.cutoff == 9);
    CHECK(cfg.mean_pairs == 0.75);
    CHECK(cfg.truncation_tol == 1e-4);
    CHECK(cfg.dp.tau1 == 0.11);
    CHECK(cfg.dp.tau2 == 0.12);
    CHECK(cfg.dp.theta == 1.5);
    CHECK(cfg.dp.overlap == 0.8);
    CHECK(cfg.dp.pump_wavelength_um == 0.4);
    CHECK(cfg.dp.coherence_length_um == 100.0);
    CHECK(cfg.dp.cutoff == 7);
    CHECK(cfg.efficiency == 0.9);
    CHECK(cfg.basis == "diag");
    CHECK(cfg.splitter_slots == std::set<Slot>{Slot::aH, Slot::bV});
    CHECK(cfg.number_resolving == true);
    CHECK(cfg.theta_min == 0.1);
    CHECK(cfg.theta_max == 5.0);
    CHECK(cfg.theta_steps == 11);
    CHECK(cfg.delay_min_um == -100.0);
    CHECK(cfg.delay_max_um == 100.0);
    CHECK(cfg.delay_steps == 21);
    CHECK(cfg.order == 4);
    CHECK(cfg.term == ModeOccupation{1, 1, 1, 1});
    CHECK(cfg.pulses == 5000);
}

TEST_CASE("config parsing rejects what it cannot interpret") {
    auto load = [](const std::string& name, const std::string& body) {
        return load_scenario_config(write_config(name, body));
    };
    CHECK_THROWS_AS(load_scenario_config(tmp_path("missing.conf")),
                    ConfigError);
    CHECK_THROWS_WITH_AS(load("unknown.conf", "nope = 3\n"),
                         doctest::Contains("nope"), ConfigError);
    CHECK_THROWS_WITH_AS(load("noequals.conf", "just words\n"),
                         doctest::Contains("line"), ConfigError);
    CHECK_THROWS_AS(load("badnum.conf", "pdc.tau = abc\n"), ConfigError);
    CHECK_THROWS_AS(load("badterm.conf", "scan.term = 12\n"), ConfigError);
    CHECK_THROWS_AS(load("badslot.conf", "detection.splitters = aX\n"),
                    ConfigError);
    CHECK_THROWS_AS(load("badformat.conf", "format = xml\n"), ConfigError);
    CHECK_THROWS_AS(load("badbool.conf", "detection.number_resolving = maybe\n"),
                    ConfigError);
    CHECK_THROWS_AS(load("badseed.conf", "seed = -4\n"), ConfigError);
}

TEST_CASE("run_scenario validates the assembled configuration") {
    ScenarioConfig cfg;
    cfg.scenario = "no-such-scenario";
    cfg.output_path = tmp_path("unused.csv");
    CHECK_THROWS_AS(run_scenario(cfg), ConfigError);

    cfg.scenario = "distribution";
    cfg.tau = -0.5;
    CHECK_THROWS_AS(run_scenario(cfg), ConfigError);

    cfg = ScenarioConfig{};
    cfg.scenario = "fringe-scan";
    cfg.output_path = tmp_path("unused.csv");
    cfg.order = 3;
    CHECK_THROWS_AS(run_scenario(cfg), ConfigError);

    cfg = ScenarioConfig{};
    cfg.scenario = "fringe-scan";
    cfg.output_path = tmp_path("unused.csv");
    cfg.theta_steps = 1;
    CHECK_THROWS_AS(run_scenario(cfg), ConfigError);

    cfg = ScenarioConfig{};
    cfg.scenario = "amplify";
    cfg.output_path = tmp_path("unused.csv");
    cfg.dp.tau2 = 0.2;
    CHECK_THROWS_AS(run_scenario(cfg), ConfigError);

    cfg = ScenarioConfig{};
    cfg.scenario = "montecarlo";
    cfg.output_path = tmp_path("unused.csv");
    cfg.pulses = 0;
    CHECK_THROWS_AS(run_scenario(cfg), ConfigError);

    cfg = ScenarioConfig{};
    cfg.scenario = "montecarlo";
    cfg.output_path = tmp_path("unused.csv");
    cfg.efficiency = 1.2;
    CHECK_THROWS_AS(run_scenario(cfg), ConfigError);

    cfg = ScenarioConfig{};
    cfg.scenario = "project";
    cfg.output_path = tmp_path("unused.csv");
    cfg.basis = "circular";
    CHECK_THROWS_AS(run_scenario(cfg), ConfigError);
}

TEST_CASE("a zero-gain source emits exactly the vacuum row") {
    ScenarioConfig cfg;
    cfg.scenario = "distribution";
    cfg.tau = 0.0;
    cfg.output_path = tmp_path("dist0.csv");
    run_scenario(cfg);
    const auto lines = table_lines(read_all(cfg.output_path));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "n,P");
    CHECK(lines[1] == "0,1");
}

TEST_CASE("requesting a mean pair number tunes the source to match") {
    ScenarioConfig cfg;
    cfg.scenario = "distribution";
    cfg.mean_pairs = 0.5;
    cfg.output_path = tmp_path("dist_mean.csv");
    run_scenario(cfg);
    const auto lines = table_lines(read_all(cfg.output_path));
    REQUIRE(lines.size() >= 3);
    double mean = 0.0;
    double total = 0.0;
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        REQUIRE(fields.size() == 2);
        mean += std::stod(fields[0]) * std::stod(fields[1]);
        total += std::stod(fields[1]);
    }
    CHECK(std::abs(mean - 0.5) / 0.5 <= 1e-6);
    CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("the fringe scan starts at the coherent peak") {
    ScenarioConfig cfg;
    cfg.scenario = "fringe-scan";
    cfg.order = 4;
    cfg.output_path = tmp_path("fringe4.csv");
    run_scenario(cfg);
    const auto lines = table_lines(read_all(cfg.output_path));
    REQUIRE(lines.size() == 1 + 49);
    CHECK(lines[0] == "theta_rad,value");
    const auto first = split_csv(lines[1]);
    CHECK(std::stod(first[0]) == 0.0);
    const double tau = cfg.dp.tau1;
    CHECK(std::stod(first[1]) ==
          doctest::Approx(16.0 * std::pow(tau, 4)).epsilon(1e-9));
}

TEST_CASE("the delay scan reports envelope extrema and the rapid fringe") {
    ScenarioConfig cfg;
    cfg.scenario = "delay-scan";
    cfg.output_path = tmp_path("delay.csv");
    run_scenario(cfg);
    const auto lines = table_lines(read_all(cfg.output_path));
    REQUIRE(lines.size() == 1 + 121);
    CHECK(lines[0] == "delay_um,rate_max,rate_min,rate_at_theta");
    const double tau = cfg.dp.tau1;
    bool saw_zero = false;
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        REQUIRE(fields.size() == 4);
        if (std::stod(fields[0]) == 0.0) {
            saw_zero = true;
            CHECK(std::stod(fields[1]) ==
                  doctest::Approx(4.0 * tau * tau).epsilon(1e-12));
            CHECK(std::stod(fields[2]) == doctest::Approx(0.0));
            CHECK(std::stod(fields[3]) ==
                  doctest::Approx(4.0 * tau * tau).epsilon(1e-12));
        }
    }
    CHECK(saw_zero);
}

TEST_CASE("amplify tabulates the three ideal ratios with references") {
    ScenarioConfig cfg;
    cfg.scenario = "amplify";
    cfg.output_path = tmp_path("amp.csv");
    run_scenario(cfg);
    const auto lines = table_lines(read_all(cfg.output_path));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "term,ideal_ratio,measured_ref,measured_err");
    const auto pair = split_csv(lines[1]);
    const auto quad_mixed = split_csv(lines[2]);
    const auto quad_same = split_csv(lines[3]);
    CHECK(pair[0] == "|1 0;0 1>");
    CHECK(std::stod(pair[1]) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::stod(pair[2]) == 1.95);
    CHECK(std::stod(pair[3]) == 0.10);
    CHECK(quad_mixed[0] == "|1 1;1 1>");
    CHECK(std::stod(quad_mixed[1]) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::stod(quad_mixed[2]) == 4.1);
    CHECK(quad_same[0] == "|2 0;0 2>");
    CHECK(std::stod(quad_same[1]) ==
          doctest::Approx(16.0 / 3.0).epsilon(1e-12));
    CHECK(std::stod(quad_same[2]) == 5.3);
}

TEST_CASE("identical seeds give byte-identical sampled output") {
    ScenarioConfig cfg;
    cfg.scenario = "montecarlo";
    cfg.tau = 0.1;
    cfg.pulses = 100000;
    cfg.seed = 77;
    cfg.output_path = tmp_path("mc_a.csv");
    run_scenario(cfg);
    cfg.output_path = tmp_path("mc_b.csv");
    run_scenario(cfg);
    CHECK(read_all(tmp_path("mc_a.csv")) == read_all(tmp_path("mc_b.csv")));
}

TEST_CASE("json output carries the same table as structured data") {
    ScenarioConfig cfg;
    cfg.scenario = "montecarlo";
    cfg.tau = 0.1;
    cfg.pulses = 20000;
    cfg.format = OutputFormat::json;
    cfg.output_path = tmp_path("mc.json");
    run_scenario(cfg);
    const nlohmann::json doc = nlohmann::json::parse(read_all(cfg.output_path));
    CHECK(doc.at("scenario") == "montecarlo");
    CHECK(doc.at("columns") ==
          nlohmann::json({"pattern", "analytic_p", "sampled_count", "pulses"}));
    REQUIRE(doc.at("rows").size() == 3);
    std::set<std::string> patterns;
    for (const auto& row : doc.at("rows")) {
        patterns.insert(row.at(0).get<std::string>());
        CHECK(row.at(3).get<long long>() == 20000);
        const double p = row.at(1).get<double>();
        const double n = row.at(2).get<double>();
        // loose 5-sigma envelope around the analytic value
        CHECK(std::abs(n - 20000.0 * p) <=
              5.0 * std::sqrt(20000.0 * p * (1.0 - p)) + 1.0);
    }
    CHECK(patterns ==
          std::set<std::string>{"aH+aV+bH+bV", "aH+bV", "aV+bH"});
}

TEST_CASE("the conditional-state report carries the outcome probability") {
    ScenarioConfig cfg;
    cfg.scenario = "project";
    cfg.tau = 0.1;
    cfg.format = OutputFormat::json;
    cfg.output_path = tmp_path("proj.json");
    run_scenario(cfg);
    const nlohmann::json doc = nlohmann::json::parse(read_all(cfg.output_path));

    const double t = std::tanh(cfg.tau);
    const double vacuum_p = std::pow(1.0 - t * t, 2.0);
    double reported = -1.0;
    for (const auto& note : doc.at("notes")) {
        const std::string text = note.get<std::string>();
        const std::string prefix = "outcome probability = ";
        const auto at = text.find(prefix);
        if (at != std::string::npos) {
            reported = std::stod(text.substr(at + prefix.size()));
        }
    }
    CHECK(reported ==
          doctest::Approx((1.0 - vacuum_p) / 2.0).epsilon(1e-9));

    double square_sum = 0.0;
    for (const auto& row : doc.at("rows")) {
        const std::string label = row.at(0).get<std::string>();
        if (label.rfind("schmidt[", 0) == 0) {
            const double c = row.at(1).get<double>();
            square_sum += c * c;
        }
    }
    CHECK(square_sum == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("the command line runs a scenario end to end") {
    const std::string out = tmp_path("cli_dist.csv");
    CHECK(cli_main({"distribution", "--tau", "0.1", "--out", out}) == 0);
    CHECK(fs::exists(out));
    CHECK(cli_main({"--help"}) == 0);
}

TEST_CASE("usage and configuration mistakes exit with code 2") {
    CHECK(cli_main({"bogus"}) == 2);
    CHECK(cli_main({"distribution", "--tau", "abc"}) == 2);
    CHECK(cli_main({"distribution", "--config", tmp_path("absent.conf")}) ==
          2);
    CHECK(cli_main({"fringe-scan", "--order", "3", "--out",
                    tmp_path("cli_f3.csv")}) == 2);
}

TEST_CASE("numeric-domain failures exit with code 3") {
    CHECK(cli_main({"distribution", "--tau", "0.2", "--cutoff", "3", "--out",
                    tmp_path("cli_trunc.csv")}) == 3);
}

TEST_CASE("command-line flags override config-file values") {
    const std::string conf = write_config("override.conf",
                                          "scenario = distribution\n"
                                          "pdc.tau = 0.2\n");
    const std::string out = tmp_path("cli_override.csv");
    CHECK(cli_main({"distribution", "--config", conf, "--tau", "0.05",
                    "--out", out}) == 0);
    const std::string text = read_all(out);
    CHECK(text.find("tau = 0.05") != std::string::npos);
    CHECK(text.find("tau = 0.2") == std::string::npos);
}

TEST_CASE("a mean pair number can be requested from the command line") {
    const std::string out = tmp_path("cli_mean.csv");
    CHECK(cli_main({"distribution", "--mean-pairs", "0.5", "--out", out}) ==
          0);
    const auto lines = table_lines(read_all(out));
    double mean = 0.0;
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        mean += std::stod(fields[0]) * std::stod(fields[1]);
    }
    CHECK(std::abs(mean - 0.5) / 0.5 <= 1e-6);
}
