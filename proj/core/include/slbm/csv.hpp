#pragma once

#include <map>
#include <string>
#include <vector>

#include "slbm/diagnostics.hpp"

namespace slbm {

using Metadata = std::map<std::string, std::string>;

/// All writers emit a '#'-prefixed metadata block (key=value per line)
/// followed by a one-line column header and plain CSV rows.

void write_interface_trace_csv(const std::string& path, const Metadata& meta,
                               const InterfaceTrace& trace);

/// 1D profile: x,theta plus exact/error columns when `exact` is non-empty.
void write_profile_csv(const std::string& path, const Metadata& meta,
                       const std::vector<double>& x, const std::vector<double>& theta,
                       const std::vector<double>& exact = {});

/// Diagonal profile rows: s,theta with s the arclength along x=y.
void write_diagonal_csv(const std::string& path, const Metadata& meta,
                        const std::vector<std::array<double, 2>>& profile);

/// Isoline vertices: level,polyline_id,x,y (polyline ids are unique per file).
void write_isolines_csv(const std::string& path, const Metadata& meta, const IsolineSet& set);

/// Conserved-total trace rows: time,total.
void write_conservation_csv(const std::string& path, const Metadata& meta,
                            const std::vector<std::array<double, 2>>& series);

/// Timing table rows: n,<method>,... seconds per full run.
void write_timing_csv(const std::string& path, const Metadata& meta,
                      const std::vector<std::string>& methods, const std::vector<int>& sizes,
                      const std::vector<std::vector<double>>& seconds);

struct TraceFile {
  Metadata meta;
  InterfaceTrace trace;
};

/// Reads back a file produced by write_interface_trace_csv.
TraceFile read_interface_trace_csv(const std::string& path);

/// Side-by-side table of several runs: time, per-method x_f and |error|,
/// and the exact front position. Traces on different time grids are
/// resampled onto the first trace's grid by linear interpolation. Throws on
/// empty input.
void write_comparison_csv(const std::string& path, const std::vector<TraceFile>& traces);

} // namespace slbm
