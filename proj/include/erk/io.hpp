#pragma once

#include <cstdint>
#include <string>

#include "erk/bench.hpp"
#include "erk/stability.hpp"
#include "erk/verification.hpp"

namespace erk {

/// Shortest 17-significant-digit decimal form, locale-independent.
std::string format_float(double x);

/// FNV-1a 64-bit hash, hex-encoded; used for config fingerprints.
std::string fnv1a_hex(const std::string& text);

/// Writes <stem>.csv (header `h,ge`), <stem>.timing.csv (header `h,seconds`)
/// and a <stem>.json metadata sidecar. The .csv and .json outputs are
/// byte-deterministic for identical inputs; timing lives in its own file.
void emit_convergence(const ConvergenceReport& report, const std::string& stem,
                      const std::string& config_hash);

/// Writes <stem>.csv (header `t,rgeh`) and a <stem>.json sidecar.
void emit_energy(const EnergyReport& report, const std::string& stem,
                 const std::string& config_hash);

/// Writes the scan as CSV with header `k1,k2,absR`, one row per cell,
/// k2-major cell order.
void emit_stability(const StabilityGrid& grid, const std::string& path);

/// Writes a trajectory as CSV: `t,y1..yn[,energy]`.
void emit_trajectory(const Trajectory& traj, const std::string& path);

/// JSON check record {scheme, check, residuals, pass, ...extras}.
void emit_check_report(const std::string& scheme, const std::string& check,
                       const std::vector<double>& residuals, bool pass,
                       const std::string& path);

}  // namespace erk
