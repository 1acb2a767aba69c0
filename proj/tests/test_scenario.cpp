#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gwbec/sweep.hpp"

using namespace gwbec;

namespace {

const char* base_scenario = R"(
# Fig. 2 style duration sweep
[cavity]
length_m = 1e-6
sound_speed_m_per_s = 1e-2
max_mode = 12
atom_mass_kg = 1.44316e-25

[wave]
amplitude = 1e-6
duration_s = 1000
resonant_m = 1
resonant_n = 2

[state]
mode_n = 2
mode_m = 1
squeezing_r = 10

[estimation]
num_probes = 1e14
qfi_method = closed_derived

[sweep]
variable = duration_s
from = 100
to = 2000
points = 8
scale = linear

[output]
format = csv
path = out.csv
)";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("scenario parses and resolves the resonant drive") {
    const Scenario sc = parse_scenario(base_scenario);
    CHECK(sc.cavity.max_mode == 12);
    CHECK(sc.drive_frequency() ==
          doctest::Approx(2.0 * 3.14159265358979 * 15000.0).epsilon(1e-10));
    CHECK(sc.qfi_method == QfiMethod::closed_derived);
    CHECK(sc.sweep.has_value());
    CHECK(sc.sweep->points == 8);
}

TEST_CASE("parse errors carry line and field context") {
    std::string text = base_scenario;

    SUBCASE("missing section") {
        const auto pos = text.find("[output]");
        text.resize(pos);
        CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("[output]"),
                             ScenarioParseError);
    }
    SUBCASE("bad number") {
        const auto pos = text.find("1e-6");
        text.replace(pos, 4, "tiny");
        CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("length_m"),
                             ScenarioParseError);
    }
    SUBCASE("both frequency and resonant pair") {
        const auto pos = text.find("resonant_m = 1");
        text.insert(pos, "frequency_hz = 15000\n");
        CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("exactly one"),
                             ScenarioParseError);
    }
    SUBCASE("unknown field rejected") {
        const auto pos = text.find("[state]");
        text.insert(pos, "mystery_knob = 3\n");
        CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("mystery_knob"),
                             ScenarioParseError);
    }
    SUBCASE("even resonant pair rejected") {
        auto pos = text.find("resonant_n = 2");
        text.replace(pos, 14, "resonant_n = 3");
        CHECK_THROWS_AS(parse_scenario(text), std::domain_error);
    }
}

TEST_CASE("validate report lists resolved frequencies and gate status") {
    const Scenario sc = parse_scenario(base_scenario);
    const std::string report = validate_scenario_report(sc);
    CHECK(report.find("15000") != std::string::npos);   // Omega in Hz
    CHECK(report.find("5000") != std::string::npos);    // fundamental
    CHECK(report.find("resonant approximation valid") != std::string::npos);

    // r = 10 with fidelity_fd draws a conditioning advisory
    Scenario fd = sc;
    fd.qfi_method = QfiMethod::fidelity_fd;
    CHECK(validate_scenario_report(fd).find("poorly conditioned") != std::string::npos);
}

TEST_CASE("sweep values") {
    const SweepSpec lin{SweepVariable::duration_s, 100.0, 2000.0, 5, SweepScale::linear};
    const auto v = sweep_values(lin);
    CHECK(v.size() == 5);
    CHECK(v.front() == 100.0);
    CHECK(v.back() == 2000.0);
    CHECK(v[2] == doctest::Approx(1050.0));

    const SweepSpec log_spec{SweepVariable::num_probes, 1e6, 1e14, 5, SweepScale::log};
    const auto w = sweep_values(log_spec);
    CHECK(w[1] / w[0] == doctest::Approx(100.0).epsilon(1e-10));
    CHECK(w.back() == 1e14);
}

TEST_CASE("sweep is deterministic and serial/parallel identical") {
    const Scenario sc = parse_scenario(base_scenario);
    const auto serial = run_sweep(sc, ExecutionMode::serial);
    const auto parallel = run_sweep(sc, ExecutionMode::parallel);
    const auto parallel2 = run_sweep(sc, ExecutionMode::parallel, 3);
    REQUIRE(serial.size() == 8);
    REQUIRE(parallel.size() == 8);
    CHECK(format_csv(sc, serial) == format_csv(sc, parallel));
    CHECK(format_csv(sc, serial) == format_csv(sc, parallel2));

    // byte-identical files across repeated runs
    write_output(sc, parallel, "det_a.csv");
    write_output(sc, run_sweep(sc, ExecutionMode::parallel), "det_b.csv");
    CHECK(read_file("det_a.csv") == read_file("det_b.csv"));
    CHECK(!read_file("det_a.csv").empty());
    std::remove("det_a.csv");
    std::remove("det_b.csv");
}

TEST_CASE("csv output carries metadata and monotone sensitivity curve") {
    const Scenario sc = parse_scenario(base_scenario);
    const auto points = run_sweep(sc);
    const std::string csv = format_csv(sc, points);
    CHECK(csv.find("# estimation.qfi_method = closed_derived") != std::string::npos);
    CHECK(csv.find("# constants = codata-2018") != std::string::npos);
    CHECK(csv.find("sweep_variable,value,qfi,delta_epsilon") != std::string::npos);
    double prev = 1e300;
    for (const SweepPoint& p : points) {
        CHECK(p.record.strain_sensitivity < prev);
        prev = p.record.strain_sensitivity;
        CHECK(p.record.method_tag == "closed_form_derived");
    }
}

TEST_CASE("zero-duration single point reports the unbounded sentinel") {
    Scenario sc = parse_scenario(base_scenario);
    sc.sweep.reset();
    sc.duration_s = 0.0;
    const auto points = run_sweep(sc);
    REQUIRE(points.size() == 1);
    CHECK(points[0].record.qfi == 0.0);
    const std::string csv = format_csv(sc, points);
    CHECK(csv.find(",inf,") != std::string::npos);
}

TEST_CASE("json mirror carries the same fields") {
    Scenario sc = parse_scenario(base_scenario);
    sc.format = OutputFormat::json;
    const auto points = run_sweep(sc);
    const std::string json = format_json(sc, points);
    CHECK(json.find("\"qfi\"") != std::string::npos);
    CHECK(json.find("\"strain_sensitivity_hz_m12\"") != std::string::npos);
    CHECK(json.find("codata-2018") != std::string::npos);
}

TEST_CASE("sweep-grid runs the cartesian product") {
    Scenario sc = parse_scenario(base_scenario);
    sc.sweep2 = SweepSpec{SweepVariable::squeezing_r, 2.0, 4.0, 3, SweepScale::linear};
    const auto points = run_sweep_grid(sc, ExecutionMode::serial);
    REQUIRE(points.size() == 24);
    const auto par = run_sweep_grid(sc, ExecutionMode::parallel);
    CHECK(format_csv(sc, points, true) == format_csv(sc, par, true));
    CHECK(format_csv(sc, points, true).find("value2") != std::string::npos);

    Scenario bad = sc;
    bad.sweep2->variable = SweepVariable::duration_s;
    CHECK_THROWS_AS(run_sweep_grid(bad), std::invalid_argument);
}
