#pragma once

#include "pilekit/experiments.hpp"
#include "pilekit/pielm.hpp"

#include <string>
#include <vector>

namespace pilekit::config {

/// Everything a solve/fdm run needs, as resolved from a problem-definition
/// file (or a previously emitted manifest, which uses the same format).
struct RunSpec {
    PileSoilProblem problem;
    SolverConfig solver;
    int fdm_segments = 2000;  ///< benchmark resolution / evaluation grid
    MonitoredDataset data;    ///< inline [data] section, if any
};

/// Parses a problem-definition file. Moduli accept Pa/kPa/MPa/GPa suffixes,
/// the volume loss accepts a % suffix, lengths accept an optional m suffix.
/// Missing soil.t defaults to 11 D. Errors name the offending field.
RunSpec load_problem(const std::string& path);

/// Parses a study-definition file; `problem = <path>` is resolved relative
/// to the study file's directory.
StudyConfig load_study(const std::string& path);

/// Writes the run manifest: a complete, re-runnable snapshot of the problem,
/// solver settings and inline data, plus version/timestamp/output metadata.
void write_manifest(const std::string& path, const RunSpec& spec, const std::string& command,
                    const std::vector<std::string>& outputs);

/// Version identifier recorded in manifests and summaries.
const char* version();

}  // namespace pilekit::config
