#include "pilekit/csv.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pilekit::csv {

namespace {

constexpr const char* kProfileHeader = "z_m,w_m,theta_rad,M_Nm,Q_N";
constexpr const char* kDataHeader = "depth_m,deflection_m";

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    return out;
}

std::vector<double> parse_row(const std::string& line, std::size_t expected,
                              const std::string& path, int lineno) {
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(cell, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": cannot parse number '" + cell + "'");
        }
        while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
        if (pos != cell.size())
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": trailing characters in '" + cell + "'");
        values.push_back(v);
    }
    if (values.size() != expected)
        throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected " +
                                    std::to_string(expected) + " columns, got " +
                                    std::to_string(values.size()));
    return values;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_profile(const std::string& path, const ResponseProfile& profile) {
    auto out = open_out(path);
    out << kProfileHeader << "\n";
    for (Eigen::Index i = 0; i < profile.z.size(); ++i)
        out << format_double(profile.z(i)) << ',' << format_double(profile.w(i)) << ','
            << format_double(profile.theta(i)) << ',' << format_double(profile.M(i)) << ','
            << format_double(profile.Q(i)) << "\n";
}

ResponseProfile read_profile(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != kProfileHeader)
        throw std::invalid_argument(path + ": bad profile header '" + line + "' (expected '" +
                                    kProfileHeader + "')");
    std::vector<std::array<double, 5>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto v = parse_row(line, 5, path, lineno);
        rows.push_back({v[0], v[1], v[2], v[3], v[4]});
    }
    ResponseProfile p;
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    p.z.resize(n);
    p.w.resize(n);
    p.theta.resize(n);
    p.M.resize(n);
    p.Q.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        p.z(i) = rows[i][0];
        p.w(i) = rows[i][1];
        p.theta(i) = rows[i][2];
        p.M(i) = rows[i][3];
        p.Q(i) = rows[i][4];
    }
    return p;
}

void write_data(const std::string& path, const MonitoredDataset& data) {
    auto out = open_out(path);
    out << kDataHeader << "\n";
    for (const auto& obs : data.entries)
        out << format_double(obs.depth) << ',' << format_double(obs.deflection) << "\n";
}

MonitoredDataset read_data(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != kDataHeader)
        throw std::invalid_argument(path + ": bad data header '" + line + "' (expected '" +
                                    kDataHeader + "')");
    MonitoredDataset data;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto v = parse_row(line, 2, path, lineno);
        data.entries.push_back({v[0], v[1]});
    }
    return data;
}

void write_study_records(const std::string& path, const StudyReport& report) {
    auto out = open_out(path);
    out << "label,bc,epsilon,Mc,Nc,N_data,seed,L2_w,L2_M,L2_Q,"
           "train_seconds,residual_norm,rank\n";
    for (const auto& r : report.records)
        out << r.label << ',' << r.bc << ',' << format_double(r.epsilon) << ',' << r.neurons
            << ',' << r.collocation_points << ',' << r.data_points << ',' << r.seed << ','
            << format_double(r.l2_w) << ',' << format_double(r.l2_m) << ','
            << format_double(r.l2_q) << ',' << format_double(r.train_seconds) << ','
            << format_double(r.residual_norm) << ',' << r.rank << "\n";
}

void write_error_profiles(const std::string& path, const StudyReport& report) {
    auto out = open_out(path);
    out << "label,z_m,abs_err_w_m,abs_err_M_Nm\n";
    for (const auto& ep : report.profiles)
        for (Eigen::Index i = 0; i < ep.z.size(); ++i)
            out << ep.label << ',' << format_double(ep.z(i)) << ','
                << format_double(ep.abs_err_w(i)) << ',' << format_double(ep.abs_err_m(i))
                << "\n";
}

}  // namespace pilekit::csv
