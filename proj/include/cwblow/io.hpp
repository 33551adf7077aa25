#pragma once

#include <filesystem>
#include <vector>

#include "cwblow/driver.hpp"

namespace cwblow {

/// CSV with header `n,t_n,tau_n,h_n,N_n,M_n`; reals in explicit exponent
/// notation with enough digits to round-trip. Deterministic byte-for-byte
/// for a deterministic history. Throws std::runtime_error on an empty
/// history or an unwritable path.
void write_history(const std::vector<StepRecord>& history,
                   const std::filesystem::path& path);

/// One two-column x,u file per snapshot (profile_<n>.csv) plus index.csv
/// mapping each file to its step and time. Returns the number of profile
/// files written.
std::size_t write_snapshots(const std::vector<State>& snapshots,
                            const std::filesystem::path& directory);

/// Human-readable summary of a run.
void write_report(const BlowupReport& report, const std::filesystem::path& path);

/// Paired summary for a damping comparison, including the ordering verdict.
void write_comparison_report(const DampingComparison& comparison,
                             const std::filesystem::path& path);

}  // namespace cwblow
