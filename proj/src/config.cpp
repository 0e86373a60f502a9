#include "pilekit/config.hpp"

#include "pilekit/csv.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pilekit::config {

namespace {

struct Entry {
    std::string value;
    bool used = false;
};

/// Ordered key/value pairs per section; section "" holds top-level keys.
struct IniFile {
    std::map<std::string, std::vector<std::pair<std::string, Entry>>> sections;
    std::string path;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

IniFile parse_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
    IniFile file;
    file.path = path;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                            ": malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            file.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value', got '" + line + "'");
        file.sections[section].push_back(
            {trim(line.substr(0, eq)), Entry{trim(line.substr(eq + 1)), false}});
    }
    return file;
}

Entry* find(IniFile& file, const std::string& section, const std::string& key) {
    auto it = file.sections.find(section);
    if (it == file.sections.end()) return nullptr;
    for (auto& [k, entry] : it->second)
        if (k == key) {
            entry.used = true;
            return &entry;
        }
    return nullptr;
}

std::string qualified(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
}

/// Number with an optional unit suffix.
double parse_quantity(const std::string& raw, const std::string& field) {
    std::size_t pos = 0;
    double value = 0;
    try {
        value = std::stod(raw, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(field + ": cannot parse '" + raw + "'");
    }
    const std::string suffix = trim(raw.substr(pos));
    if (suffix.empty()) return value;
    if (suffix == "GPa") return value * 1e9;
    if (suffix == "MPa") return value * 1e6;
    if (suffix == "kPa") return value * 1e3;
    if (suffix == "Pa") return value;
    if (suffix == "%") return value * 1e-2;
    if (suffix == "m") return value;
    throw std::invalid_argument(field + ": unknown unit '" + suffix + "' in '" + raw + "'");
}

double require_quantity(IniFile& file, const std::string& section, const std::string& key) {
    Entry* e = find(file, section, key);
    if (!e)
        throw std::invalid_argument(file.path + ": missing required field " +
                                    qualified(section, key));
    return parse_quantity(e->value, qualified(section, key));
}

long parse_integer(const std::string& raw, const std::string& field) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(raw, &pos);
        if (trim(raw.substr(pos)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(field + ": cannot parse integer '" + raw + "'");
}

std::vector<double> parse_number_list(const std::string& raw, const std::string& field) {
    std::vector<double> values;
    std::stringstream ss(raw);
    std::string token;
    while (ss >> token) values.push_back(parse_quantity(token, field));
    return values;
}

void apply_solver_section(IniFile& file, SolverConfig& solver, int& fdm_segments) {
    if (Entry* e = find(file, "solver", "mc"))
        solver.elm.neurons = static_cast<int>(parse_integer(e->value, "solver.mc"));
    if (Entry* e = find(file, "solver", "nc"))
        solver.collocation_points = static_cast<int>(parse_integer(e->value, "solver.nc"));
    if (Entry* e = find(file, "solver", "nf"))
        fdm_segments = static_cast<int>(parse_integer(e->value, "solver.nf"));
    if (Entry* e = find(file, "solver", "seed"))
        solver.elm.seed = static_cast<std::uint64_t>(parse_integer(e->value, "solver.seed"));
    if (Entry* e = find(file, "solver", "rcond"))
        solver.rcond = parse_quantity(e->value, "solver.rcond");
    if (Entry* e = find(file, "solver", "weight_range"))
        solver.elm.weight_range = parse_quantity(e->value, "solver.weight_range");
    if (Entry* e = find(file, "solver", "bias_range"))
        solver.elm.bias_range = parse_quantity(e->value, "solver.bias_range");
    if (Entry* e = find(file, "solver", "activation"))
        solver.elm.activation = activation_from_string(e->value);
    find(file, "solver", "rng");  // informational
}

void check_unused(IniFile& file, const std::vector<std::string>& known_sections) {
    for (auto& [section, entries] : file.sections) {
        if (section == "run" || section == "outputs") continue;  // manifest metadata
        if (std::find(known_sections.begin(), known_sections.end(), section) ==
            known_sections.end())
            throw std::invalid_argument(file.path + ": unknown section [" + section + "]");
        for (auto& [key, entry] : entries)
            if (!entry.used)
                throw std::invalid_argument(file.path + ": unknown field " +
                                            qualified(section, key));
    }
}

}  // namespace

RunSpec load_problem(const std::string& path) {
    IniFile file = parse_ini(path);
    RunSpec spec;

    spec.problem.pile.E = require_quantity(file, "pile", "E");
    spec.problem.pile.D = require_quantity(file, "pile", "D");
    spec.problem.pile.L = require_quantity(file, "pile", "L");

    spec.problem.soil.Es = require_quantity(file, "soil", "Es");
    spec.problem.soil.nu_s = require_quantity(file, "soil", "nu_s");
    if (Entry* e = find(file, "soil", "t"))
        spec.problem.soil.t = parse_quantity(e->value, "soil.t");
    else
        spec.problem.soil.t = 11.0 * spec.problem.pile.D;

    spec.problem.tunnel.H = require_quantity(file, "tunnel", "H");
    spec.problem.tunnel.R = require_quantity(file, "tunnel", "R");
    spec.problem.tunnel.x0 = require_quantity(file, "tunnel", "x0");
    spec.problem.tunnel.epsilon = require_quantity(file, "tunnel", "epsilon");

    Entry* bc = find(file, "", "bc");
    if (!bc) throw std::invalid_argument(file.path + ": missing required field bc");
    spec.problem.bc = bc_from_string(bc->value);

    apply_solver_section(file, spec.solver, spec.fdm_segments);

    if (auto it = file.sections.find("data"); it != file.sections.end()) {
        for (auto& [key, entry] : it->second) {
            entry.used = true;
            const auto values = parse_number_list(entry.value, "data." + key);
            if (values.size() != 2)
                throw std::invalid_argument(file.path + ": data." + key +
                                            " must hold 'depth deflection'");
            spec.data.entries.push_back({values[0], values[1]});
        }
    }

    check_unused(file, {"", "pile", "soil", "tunnel", "solver", "data"});
    spec.problem.validate();
    spec.solver.validate();
    FdmConfig{spec.fdm_segments}.validate();
    spec.data.validate(spec.problem);
    return spec;
}

StudyConfig load_study(const std::string& path) {
    IniFile file = parse_ini(path);

    Entry* kind = find(file, "", "kind");
    if (!kind) throw std::invalid_argument(file.path + ": missing required field kind");
    Entry* problem = find(file, "", "problem");
    if (!problem) throw std::invalid_argument(file.path + ": missing required field problem");

    const auto problem_path =
        std::filesystem::path(path).parent_path() / std::string(problem->value);
    RunSpec base = load_problem(problem_path.string());

    StudyConfig study;
    study.kind = study_kind_from_string(kind->value);
    study.problem = base.problem;
    study.solver = base.solver;
    study.fdm_segments = base.fdm_segments;

    if (Entry* e = find(file, "", "mc"))
        study.solver.elm.neurons = static_cast<int>(parse_integer(e->value, "mc"));
    if (Entry* e = find(file, "", "nc"))
        study.solver.collocation_points = static_cast<int>(parse_integer(e->value, "nc"));
    if (Entry* e = find(file, "", "nf"))
        study.fdm_segments = static_cast<int>(parse_integer(e->value, "nf"));
    if (Entry* e = find(file, "", "seed"))
        study.solver.elm.seed = static_cast<std::uint64_t>(parse_integer(e->value, "seed"));
    if (Entry* e = find(file, "", "repeats"))
        study.repeats = static_cast<int>(parse_integer(e->value, "repeats"));
    if (Entry* e = find(file, "", "epsilons"))
        study.epsilons = parse_number_list(e->value, "epsilons");
    if (Entry* e = find(file, "", "values")) {
        for (double v : parse_number_list(e->value, "values"))
            study.sweep_values.push_back(static_cast<int>(v));
    }

    if (auto it = file.sections.find("series"); it != file.sections.end()) {
        for (auto& [key, entry] : it->second) {
            entry.used = true;
            DataSeries series;
            series.name = key;
            std::stringstream ss(entry.value);
            std::string token;
            while (ss >> token) {
                if (token == "none") continue;
                if (token.rfind("nc=", 0) == 0) {
                    series.collocation_override =
                        static_cast<int>(parse_integer(token.substr(3), "series." + key));
                } else {
                    series.depths.push_back(parse_quantity(token, "series." + key));
                }
            }
            study.series.push_back(std::move(series));
        }
    }

    check_unused(file, {"", "series"});
    study.validate();
    return study;
}

const char* version() { return "pilekit 0.1.0"; }

void write_manifest(const std::string& path, const RunSpec& spec, const std::string& command,
                    const std::vector<std::string>& outputs) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write manifest '" + path + "'");
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%FT%TZ", std::gmtime(&now));

    out << "bc = " << to_string(spec.problem.bc) << "\n\n";
    out << "[run]\n"
        << "version = " << version() << "\n"
        << "timestamp = " << stamp << "\n"
        << "command = " << command << "\n\n";
    out << "[pile]\n"
        << "E = " << csv::format_double(spec.problem.pile.E) << "\n"
        << "D = " << csv::format_double(spec.problem.pile.D) << "\n"
        << "L = " << csv::format_double(spec.problem.pile.L) << "\n\n";
    out << "[soil]\n"
        << "Es = " << csv::format_double(spec.problem.soil.Es) << "\n"
        << "nu_s = " << csv::format_double(spec.problem.soil.nu_s) << "\n"
        << "t = " << csv::format_double(spec.problem.soil.t) << "\n\n";
    out << "[tunnel]\n"
        << "H = " << csv::format_double(spec.problem.tunnel.H) << "\n"
        << "R = " << csv::format_double(spec.problem.tunnel.R) << "\n"
        << "x0 = " << csv::format_double(spec.problem.tunnel.x0) << "\n"
        << "epsilon = " << csv::format_double(spec.problem.tunnel.epsilon) << "\n\n";
    out << "[solver]\n"
        << "mc = " << spec.solver.elm.neurons << "\n"
        << "nc = " << spec.solver.collocation_points << "\n"
        << "nf = " << spec.fdm_segments << "\n"
        << "seed = " << spec.solver.elm.seed << "\n"
        << "rcond = " << csv::format_double(spec.solver.rcond) << "\n"
        << "weight_range = " << csv::format_double(spec.solver.elm.weight_range) << "\n"
        << "bias_range = " << csv::format_double(spec.solver.elm.bias_range) << "\n"
        << "activation = " << to_string(spec.solver.elm.activation) << "\n"
        << "rng = " << ElmBasis::rng_name() << "\n";
    if (!spec.data.entries.empty()) {
        out << "\n[data]\n";
        for (std::size_t i = 0; i < spec.data.entries.size(); ++i)
            out << "point_" << i << " = " << csv::format_double(spec.data.entries[i].depth)
                << " " << csv::format_double(spec.data.entries[i].deflection) << "\n";
    }
    if (!outputs.empty()) {
        out << "\n[outputs]\n";
        for (std::size_t i = 0; i < outputs.size(); ++i)
            out << "file_" << i << " = " << outputs[i] << "\n";
    }
}

}  // namespace pilekit::config
