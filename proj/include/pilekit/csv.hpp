#pragma once

#include "pilekit/experiments.hpp"
#include "pilekit/pielm.hpp"

#include <string>

namespace pilekit::csv {

/// Full-precision formatting (17 significant digits) so that emitted files
/// parse back to bit-identical doubles.
std::string format_double(double v);

/// Profile files: header `z_m,w_m,theta_rad,M_Nm,Q_N`.
void write_profile(const std::string& path, const ResponseProfile& profile);
ResponseProfile read_profile(const std::string& path);

/// Monitored-data files: header `depth_m,deflection_m`.
void write_data(const std::string& path, const MonitoredDataset& data);
MonitoredDataset read_data(const std::string& path);

/// Study outputs: one record per run, plus per-depth error profiles.
void write_study_records(const std::string& path, const StudyReport& report);
void write_error_profiles(const std::string& path, const StudyReport& report);

}  // namespace pilekit::csv
