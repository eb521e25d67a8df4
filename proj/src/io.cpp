#include "erk/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace erk {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps '\n' endings
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    return out;
}

void write_json(const OrderedJson& doc, const std::string& path) {
    auto out = open_for_write(path);
    out << doc.dump(2) << "\n";
    if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace

std::string format_float(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 1099511628211ULL;
    }
    char buffer[24];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

void emit_convergence(const ConvergenceReport& report, const std::string& stem,
                      const std::string& config_hash) {
    {
        auto csv = open_for_write(stem + ".csv");
        csv << "h,ge\n";
        for (const auto& row : report.rows) {
            if (!row.ok) continue;
            csv << format_float(row.h) << "," << format_float(row.global_error) << "\n";
        }
        if (!csv) throw Error("write failed for '" + stem + ".csv'");
    }
    {
        auto csv = open_for_write(stem + ".timing.csv");
        csv << "h,seconds\n";
        for (const auto& row : report.rows) {
            if (!row.ok) continue;
            csv << format_float(row.h) << "," << format_float(row.wall_seconds) << "\n";
        }
        if (!csv) throw Error("write failed for '" + stem + ".timing.csv'");
    }

    OrderedJson doc;
    doc["scheme"] = report.scheme;
    doc["problem"] = report.problem;
    doc["config_hash"] = config_hash;
    doc["slope"] = report.slope_valid ? OrderedJson(report.slope) : OrderedJson(nullptr);
    doc["slope_valid"] = report.slope_valid;
    bool all_ok = true;
    OrderedJson rows = OrderedJson::array();
    for (const auto& row : report.rows) {
        OrderedJson r;
        r["h"] = row.h;
        r["ge"] = row.ok ? OrderedJson(row.global_error) : OrderedJson(nullptr);
        r["ok"] = row.ok;
        if (!row.ok) r["failure"] = row.failure;
        rows.push_back(std::move(r));
        all_ok = all_ok && row.ok;
    }
    doc["rows"] = std::move(rows);
    doc["pass"] = all_ok;
    write_json(doc, stem + ".json");
}

void emit_energy(const EnergyReport& report, const std::string& stem,
                 const std::string& config_hash) {
    {
        auto csv = open_for_write(stem + ".csv");
        csv << "t,rgeh\n";
        for (std::size_t i = 0; i < report.times.size(); ++i) {
            csv << format_float(report.times[i]) << "," << format_float(report.rgeh[i]) << "\n";
        }
        if (!csv) throw Error("write failed for '" + stem + ".csv'");
    }
    OrderedJson doc;
    doc["scheme"] = report.scheme;
    doc["problem"] = report.problem;
    doc["config_hash"] = config_hash;
    doc["h"] = report.h;
    doc["max_abs_rgeh"] = report.max_abs_rgeh;
    doc["drift_rate"] = report.drift_rate;
    doc["pass"] = std::isfinite(report.max_abs_rgeh);
    write_json(doc, stem + ".json");
}

void emit_stability(const StabilityGrid& grid, const std::string& path) {
    auto csv = open_for_write(path);
    csv << "k1,k2,absR\n";
    for (int i2 = 0; i2 < grid.spec.k2.count; ++i2) {
        const double k2 = grid.k2_value(i2);
        for (int i1 = 0; i1 < grid.spec.k1.count; ++i1) {
            csv << format_float(grid.k1_value(i1)) << "," << format_float(k2) << ","
                << format_float(grid.at(i2, i1)) << "\n";
        }
    }
    if (!csv) throw Error("write failed for '" + path + "'");
}

void emit_trajectory(const Trajectory& traj, const std::string& path) {
    auto csv = open_for_write(path);
    const bool with_energy = !traj.energies.empty();
    csv << "t";
    const auto dim = traj.states.empty() ? 0 : traj.states.front().size();
    for (Eigen::Index i = 0; i < dim; ++i) csv << ",y" << (i + 1);
    if (with_energy) csv << ",energy";
    csv << "\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        csv << format_float(traj.times[k]);
        for (Eigen::Index i = 0; i < dim; ++i) csv << "," << format_float(traj.states[k](i));
        if (with_energy) csv << "," << format_float(traj.energies[k]);
        csv << "\n";
    }
    if (!csv) throw Error("write failed for '" + path + "'");
}

void emit_check_report(const std::string& scheme, const std::string& check,
                       const std::vector<double>& residuals, bool pass,
                       const std::string& path) {
    OrderedJson doc;
    doc["scheme"] = scheme;
    doc["check"] = check;
    doc["residuals"] = residuals;
    doc["pass"] = pass;
    write_json(doc, path);
}

}  // namespace erk
