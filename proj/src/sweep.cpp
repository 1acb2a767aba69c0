#include "gwbec/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <nlohmann/json.hpp>

#include "gwbec/constants.hpp"

namespace gwbec {

namespace {

void apply(Scenario& sc, SweepVariable var, double value) {
    switch (var) {
        case SweepVariable::duration_s: sc.duration_s = value; break;
        case SweepVariable::squeezing_r: sc.squeezing_r = value; break;
        case SweepVariable::num_probes: sc.num_probes = value; break;
    }
}

SensitivityRecord evaluate_scenario_point(const Scenario& sc) {
    return evaluate_point(sc.base_input(), sc.options());
}

template <typename PointFn>
void for_each_point(int count, ExecutionMode mode, int workers, PointFn&& fn) {
    if (mode == ExecutionMode::serial) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
    if (workers > 0) omp_set_num_threads(workers);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) fn(i);
#else
    (void)workers;
    for (int i = 0; i < count; ++i) fn(i);
#endif
}

// %.17g round-trips doubles and is locale-independent: repeated runs hash
// identically.
std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<double> sweep_values(const SweepSpec& spec) {
    std::vector<double> values(spec.points);
    if (spec.points == 1) {
        values[0] = spec.from;
        return values;
    }
    if (spec.scale == SweepScale::linear) {
        const double step = (spec.to - spec.from) / (spec.points - 1);
        for (int i = 0; i < spec.points; ++i) values[i] = spec.from + i * step;
    } else {
        const double ratio = std::log(spec.to / spec.from) / (spec.points - 1);
        for (int i = 0; i < spec.points; ++i) values[i] = spec.from * std::exp(i * ratio);
    }
    values.back() = spec.to;
    return values;
}

std::vector<SweepPoint> run_sweep(const Scenario& sc, ExecutionMode mode, int workers) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (!sc.sweep) {
        SweepPoint point{sc.duration_s, nan, evaluate_scenario_point(sc)};
        return {point};
    }
    const std::vector<double> values = sweep_values(*sc.sweep);
    std::vector<SweepPoint> points(values.size());
    for_each_point(static_cast<int>(values.size()), mode, workers, [&](int i) {
        Scenario local = sc;
        apply(local, sc.sweep->variable, values[i]);
        points[i] = {values[i], nan, evaluate_scenario_point(local)};
    });
    return points;
}

std::vector<SweepPoint> run_sweep_grid(const Scenario& sc, ExecutionMode mode,
                                       int workers) {
    if (!sc.sweep || !sc.sweep2)
        throw std::invalid_argument("sweep-grid needs both [sweep] and [sweep2] sections");
    if (sc.sweep->variable == sc.sweep2->variable)
        throw std::invalid_argument("grid axes must sweep different variables");
    const std::vector<double> outer = sweep_values(*sc.sweep);
    const std::vector<double> inner = sweep_values(*sc.sweep2);
    const int total = static_cast<int>(outer.size() * inner.size());
    std::vector<SweepPoint> points(total);
    for_each_point(total, mode, workers, [&](int idx) {
        const double v1 = outer[idx / inner.size()];
        const double v2 = inner[idx % inner.size()];
        Scenario local = sc;
        apply(local, sc.sweep->variable, v1);
        apply(local, sc.sweep2->variable, v2);
        points[idx] = {v1, v2, evaluate_scenario_point(local)};
    });
    return points;
}

namespace {

std::string header_lines(const Scenario& sc, char prefix) {
    std::ostringstream out;
    auto line = [&](const std::string& s) { out << prefix << ' ' << s << '\n'; };
    line("constants = " + std::string(constants::table_version));
    line("cavity.length_m = " + fmt(sc.cavity.length));
    line("cavity.sound_speed_m_per_s = " + fmt(sc.cavity.sound_speed));
    line("cavity.max_mode = " + std::to_string(sc.cavity.max_mode));
    if (sc.cavity.atom_mass) line("cavity.atom_mass_kg = " + fmt(*sc.cavity.atom_mass));
    line("wave.amplitude = " + fmt(sc.amplitude));
    line("wave.duration_s = " + fmt(sc.duration_s));
    line("wave.drive_rad_per_s = " + fmt(sc.drive_frequency()));
    if (sc.resonant_pair)
        line("wave.resonant_pair = " + std::to_string(sc.resonant_pair->first) + " " +
             std::to_string(sc.resonant_pair->second));
    line("state.mode_n = " + std::to_string(sc.mode_n));
    line("state.mode_m = " + std::to_string(sc.mode_m));
    line("state.squeezing_r = " + fmt(sc.squeezing_r));
    line("estimation.num_probes = " + fmt(sc.num_probes));
    line("estimation.qfi_method = " + std::string(to_string(sc.qfi_method)));
    line("estimation.d_eps = " + fmt(sc.d_eps));
    line(std::string("estimation.figure_of_merit = ") +
         (sc.figure_of_merit == FigureOfMerit::sqrt_omega ? "sqrt_omega" : "omega"));
    line("resonant_qfi_prefactor = derived n/16m (published prefactor n/4m, 4x larger)");
    return out.str();
}

}  // namespace

std::string format_csv(const Scenario& sc, const std::vector<SweepPoint>& points,
                       bool grid) {
    std::ostringstream out;
    out << header_lines(sc, '#');
    const char* var = sc.sweep ? to_string(sc.sweep->variable) : "duration_s";
    if (grid) {
        out << "# sweep2_variable = " << to_string(sc.sweep2->variable) << "\n";
        out << "sweep_variable,value,value2,qfi,delta_epsilon,"
               "strain_sensitivity_hz_m12,method_tag\n";
    } else {
        out << "sweep_variable,value,qfi,delta_epsilon,"
               "strain_sensitivity_hz_m12,method_tag\n";
    }
    for (const SweepPoint& p : points) {
        out << var << ',' << fmt(p.value) << ',';
        if (grid) out << fmt(p.value2) << ',';
        out << fmt(p.record.qfi) << ',' << fmt(p.record.delta_epsilon) << ','
            << fmt(p.record.strain_sensitivity) << ',' << p.record.method_tag << '\n';
    }
    return out.str();
}

std::string format_json(const Scenario& sc, const std::vector<SweepPoint>& points,
                        bool grid) {
    nlohmann::ordered_json doc;
    doc["metadata"]["constants"] = constants::table_version;
    doc["metadata"]["cavity"] = {{"length_m", sc.cavity.length},
                                 {"sound_speed_m_per_s", sc.cavity.sound_speed},
                                 {"max_mode", sc.cavity.max_mode}};
    if (sc.cavity.atom_mass)
        doc["metadata"]["cavity"]["atom_mass_kg"] = *sc.cavity.atom_mass;
    doc["metadata"]["wave"] = {{"amplitude", sc.amplitude},
                               {"duration_s", sc.duration_s},
                               {"drive_rad_per_s", sc.drive_frequency()}};
    doc["metadata"]["state"] = {{"mode_n", sc.mode_n},
                                {"mode_m", sc.mode_m},
                                {"squeezing_r", sc.squeezing_r}};
    doc["metadata"]["estimation"] = {{"num_probes", sc.num_probes},
                                     {"qfi_method", to_string(sc.qfi_method)},
                                     {"d_eps", sc.d_eps}};
    doc["metadata"]["resonant_qfi_prefactor"] =
        "derived n/16m (published prefactor n/4m, 4x larger)";
    doc["sweep_variable"] = sc.sweep ? to_string(sc.sweep->variable) : "duration_s";
    if (grid) doc["sweep2_variable"] = to_string(sc.sweep2->variable);
    doc["records"] = nlohmann::ordered_json::array();
    for (const SweepPoint& p : points) {
        nlohmann::ordered_json rec;
        rec["value"] = p.value;
        if (grid) rec["value2"] = p.value2;
        rec["qfi"] = p.record.qfi;
        rec["delta_epsilon"] = std::isinf(p.record.delta_epsilon)
                                   ? nlohmann::ordered_json("inf")
                                   : nlohmann::ordered_json(p.record.delta_epsilon);
        rec["strain_sensitivity_hz_m12"] =
            std::isinf(p.record.strain_sensitivity)
                ? nlohmann::ordered_json("inf")
                : nlohmann::ordered_json(p.record.strain_sensitivity);
        rec["method_tag"] = p.record.method_tag;
        doc["records"].push_back(rec);
    }
    return doc.dump(2) + "\n";
}

void write_output(const Scenario& sc, const std::vector<SweepPoint>& points,
                  const std::string& path_override, bool grid) {
    const std::string path = path_override.empty() ? sc.output_path : path_override;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << (sc.format == OutputFormat::csv ? format_csv(sc, points, grid)
                                           : format_json(sc, points, grid));
}

}  // namespace gwbec
