#include "gwbec/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "gwbec/constants.hpp"

namespace gwbec {

double Scenario::drive_frequency() const {
    if (frequency_hz) return 2.0 * constants::pi * *frequency_hz;
    return resonant_drive_frequency(resonant_pair->first, resonant_pair->second, cavity);
}

EstimationInput Scenario::base_input() const {
    EstimationInput input;
    input.mode_n = mode_n;
    input.mode_m = mode_m;
    input.squeezing = squeezing_r;
    input.wave = {amplitude, drive_frequency(), duration_s};
    input.cavity = cavity;
    input.probes = num_probes;
    return input;
}

EvaluateOptions Scenario::options() const {
    EvaluateOptions opts;
    opts.method = qfi_method;
    opts.d_eps = d_eps;
    opts.figure = figure_of_merit;
    return opts;
}

namespace {

struct Field {
    std::string value;
    int line;
    mutable bool used = false;
};
using Section = std::map<std::string, Field>;

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw ScenarioParseError(origin + ":" + std::to_string(line) + ": " + msg);
}

double num(const std::string& origin, const Section& s, const std::string& key) {
    auto it = s.find(key);
    if (it == s.end()) fail(origin, 0, "missing required field '" + key + "'");
    it->second.used = true;
    try {
        size_t pos = 0;
        double v = std::stod(it->second.value, &pos);
        if (pos != it->second.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        fail(origin, it->second.line, "field '" + key + "' is not a number: " + it->second.value);
    }
}

std::optional<double> opt_num(const std::string& origin, const Section& s,
                              const std::string& key) {
    if (!s.count(key)) return std::nullopt;
    return num(origin, s, key);
}

std::string word(const std::string& origin, const Section& s, const std::string& key) {
    auto it = s.find(key);
    if (it == s.end()) fail(origin, 0, "missing required field '" + key + "'");
    it->second.used = true;
    return it->second.value;
}

SweepSpec parse_sweep(const std::string& origin, const Section& s) {
    SweepSpec spec;
    const std::string var = word(origin, s, "variable");
    if (var == "duration_s") spec.variable = SweepVariable::duration_s;
    else if (var == "squeezing_r") spec.variable = SweepVariable::squeezing_r;
    else if (var == "num_probes") spec.variable = SweepVariable::num_probes;
    else fail(origin, s.at("variable").line, "unknown sweep variable '" + var + "'");
    spec.from = num(origin, s, "from");
    spec.to = num(origin, s, "to");
    spec.points = static_cast<int>(num(origin, s, "points"));
    if (s.count("scale")) {
        const std::string sc = word(origin, s, "scale");
        if (sc == "linear") spec.scale = SweepScale::linear;
        else if (sc == "log") spec.scale = SweepScale::log;
        else fail(origin, s.at("scale").line, "scale must be linear or log");
    }
    if (spec.points < 1) fail(origin, s.at("points").line, "sweep needs at least 1 point");
    if (spec.from < 0.0 || (spec.points > 1 && spec.to <= spec.from))
        fail(origin, s.at("from").line, "sweep bounds must be non-negative and ordered");
    if (spec.scale == SweepScale::log && spec.from <= 0.0)
        fail(origin, s.at("from").line, "log sweep needs a positive lower bound");
    return spec;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    std::map<std::string, Section> sections;
    std::istringstream in(text);
    std::string line, current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, lineno, "unterminated section header");
            current = trim(line.substr(1, line.size() - 2));
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
        if (current.empty()) fail(origin, lineno, "field outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail(origin, lineno, "empty key or value");
        if (sections[current].count(key))
            fail(origin, lineno, "duplicate field '" + key + "'");
        sections[current][key] = {value, lineno};
    }

    for (const char* required : {"cavity", "wave", "state", "estimation", "output"})
        if (!sections.count(required))
            fail(origin, 0, std::string("missing required section [") + required + "]");

    Scenario sc;
    {
        const Section& s = sections["cavity"];
        sc.cavity.length = num(origin, s, "length_m");
        sc.cavity.sound_speed = num(origin, s, "sound_speed_m_per_s");
        sc.cavity.max_mode = static_cast<int>(num(origin, s, "max_mode"));
        sc.cavity.atom_mass = opt_num(origin, s, "atom_mass_kg");
        sc.cavity.validate();
    }
    {
        const Section& s = sections["wave"];
        sc.amplitude = num(origin, s, "amplitude");
        sc.duration_s = num(origin, s, "duration_s");
        const bool has_freq = s.count("frequency_hz") > 0;
        const bool has_pair = s.count("resonant_m") || s.count("resonant_n");
        if (has_freq == has_pair)
            fail(origin, 0,
                 "[wave] needs exactly one of frequency_hz or resonant_m/resonant_n");
        if (has_freq) {
            sc.frequency_hz = num(origin, s, "frequency_hz");
            if (*sc.frequency_hz <= 0.0) fail(origin, 0, "frequency_hz must be > 0");
        } else {
            sc.resonant_pair = {static_cast<int>(num(origin, s, "resonant_m")),
                                static_cast<int>(num(origin, s, "resonant_n"))};
        }
    }
    {
        const Section& s = sections["state"];
        sc.mode_n = static_cast<int>(num(origin, s, "mode_n"));
        sc.mode_m = static_cast<int>(num(origin, s, "mode_m"));
        sc.squeezing_r = num(origin, s, "squeezing_r");
    }
    {
        const Section& s = sections["estimation"];
        sc.num_probes = num(origin, s, "num_probes");
        const std::string method = word(origin, s, "qfi_method");
        if (method == "fidelity_fd") sc.qfi_method = QfiMethod::fidelity_fd;
        else if (method == "closed_derived") sc.qfi_method = QfiMethod::closed_derived;
        else if (method == "closed_paper") sc.qfi_method = QfiMethod::closed_paper;
        else fail(origin, s.at("qfi_method").line, "unknown qfi_method '" + method + "'");
        if (auto d = opt_num(origin, s, "d_eps")) sc.d_eps = *d;
        if (s.count("figure_of_merit")) {
            const std::string fom = word(origin, s, "figure_of_merit");
            if (fom == "sqrt_omega") sc.figure_of_merit = FigureOfMerit::sqrt_omega;
            else if (fom == "omega") sc.figure_of_merit = FigureOfMerit::omega;
            else fail(origin, s.at("figure_of_merit").line, "figure_of_merit must be sqrt_omega or omega");
        }
    }
    if (sections.count("sweep")) sc.sweep = parse_sweep(origin, sections["sweep"]);
    if (sections.count("sweep2")) sc.sweep2 = parse_sweep(origin, sections["sweep2"]);
    {
        const Section& s = sections["output"];
        const std::string fmt = word(origin, s, "format");
        if (fmt == "csv") sc.format = OutputFormat::csv;
        else if (fmt == "json") sc.format = OutputFormat::json;
        else fail(origin, s.at("format").line, "format must be csv or json");
        sc.output_path = word(origin, s, "path");
    }

    for (const auto& [name, section] : sections)
        for (const auto& [key, field] : section)
            if (!field.used)
                fail(origin, field.line, "unknown field '" + key + "' in section [" + name + "]");

    // Resolving the drive checks the resonant-pair gates (m != n, m + n odd).
    sc.drive_frequency();
    sc.base_input().validate();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioParseError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

const char* to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::duration_s: return "duration_s";
        case SweepVariable::squeezing_r: return "squeezing_r";
        case SweepVariable::num_probes: return "num_probes";
    }
    return "?";
}

const char* to_string(QfiMethod m) {
    switch (m) {
        case QfiMethod::fidelity_fd: return "fidelity_fd";
        case QfiMethod::closed_derived: return "closed_derived";
        case QfiMethod::closed_paper: return "closed_paper";
    }
    return "?";
}

std::string validate_scenario_report(const Scenario& sc) {
    std::ostringstream out;
    const double omega_1 = constants::pi * sc.cavity.sound_speed / sc.cavity.length;
    const double drive = sc.drive_frequency();
    out << "cavity: L = " << sc.cavity.length << " m, c_s = " << sc.cavity.sound_speed
        << " m/s, max_mode = " << sc.cavity.max_mode << "\n";
    out << "fundamental: omega_1 = " << omega_1 << " rad/s ("
        << omega_1 / (2.0 * constants::pi) << " Hz)\n";
    out << "drive: Omega = " << drive << " rad/s (" << drive / (2.0 * constants::pi)
        << " Hz)";
    if (sc.resonant_pair)
        out << " [resonant pair m = " << sc.resonant_pair->first
            << ", n = " << sc.resonant_pair->second << "]";
    out << "\n";
    out << "probe pair: (n, m) = (" << sc.mode_n << ", " << sc.mode_m
        << "), squeezing r = " << sc.squeezing_r << "\n";
    if (sc.cavity.atom_mass) {
        const RegimeCheck rc = check_phonon_regime(sc.cavity.max_mode, sc.cavity);
        out << "phonon regime: hbar k / (m c_s) = " << rc.ratio << " at n = "
            << sc.cavity.max_mode << (rc.advisory ? "  ** above 0.01 advisory margin" : "  (ok)")
            << "\n";
    } else {
        out << "phonon regime: not checked (no atom_mass_kg given)\n";
    }
    const double gate = omega_1 * sc.duration_s;
    out << "long-time gate: omega_1 t = " << gate
        << (gate >= long_time_gate ? "  (resonant approximation valid)"
                                   : "  ** below 100; closed-form methods will fall back to fidelity_fd")
        << "\n";
    if (sc.qfi_method == QfiMethod::fidelity_fd && sc.squeezing_r > 2.0)
        out << "advisory: fidelity_fd with r > 2 is poorly conditioned; "
               "prefer a closed-form method\n";
    out << "qfi_method = " << to_string(sc.qfi_method) << ", M = " << sc.num_probes
        << ", d_eps = " << sc.d_eps << "\n";
    return out.str();
}

}  // namespace gwbec
