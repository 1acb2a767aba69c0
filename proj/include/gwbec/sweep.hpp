#pragma once

#include <string>
#include <vector>

#include "gwbec/scenario.hpp"

namespace gwbec {

struct SweepPoint {
    double value;               // primary sweep variable
    double value2;              // secondary (grid runs), NaN otherwise
    SensitivityRecord record;
};

enum class ExecutionMode { serial, parallel };

// Expanded sweep axis values (single point from the scenario when no [sweep]).
std::vector<double> sweep_values(const SweepSpec& spec);

// Evaluate every sweep point of the scenario. The parallel path runs the
// points under OpenMP; the serial path is the reference implementation and
// both produce identical results in declared order.
std::vector<SweepPoint> run_sweep(const Scenario& sc,
                                  ExecutionMode mode = ExecutionMode::parallel,
                                  int workers = 0);

// Cartesian product over [sweep] x [sweep2].
std::vector<SweepPoint> run_sweep_grid(const Scenario& sc,
                                       ExecutionMode mode = ExecutionMode::parallel,
                                       int workers = 0);

// Deterministic writers; the header records every resolved parameter.
std::string format_csv(const Scenario& sc, const std::vector<SweepPoint>& points,
                       bool grid = false);
std::string format_json(const Scenario& sc, const std::vector<SweepPoint>& points,
                        bool grid = false);

void write_output(const Scenario& sc, const std::vector<SweepPoint>& points,
                  const std::string& path_override = "", bool grid = false);

}  // namespace gwbec
