#pragma once

#include <string>
#include <vector>

#include "vpp/mpc_types.hpp"

namespace vpp::io {

// One row per closed-loop step: applied inputs, realized signals, costs.
void write_timeseries_csv(const mpc::TrajectoryLog& log,
                          const std::string& path);

// Revenue summary across runs with the relative gap to the fc baseline of
// the same regime. Cost components are reported separately, never netted
// into the revenue column.
void write_summary_csv(const std::vector<mpc::TrajectoryLog>& logs,
                       const std::string& path);

// The same summary as a printable table.
std::string summary_table(const std::vector<mpc::TrajectoryLog>& logs);

// File-name-safe run label, e.g. "dr_eps0.5_full".
std::string run_slug(const mpc::ControllerMode& mode);

// Summary plus one time-series file per run under out_dir.
void write_results(const std::vector<mpc::TrajectoryLog>& logs,
                   const std::string& summary_path,
                   const std::string& out_dir);

}  // namespace vpp::io
