#include "slbm/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "slbm/errors.hpp"

namespace slbm {

namespace {

std::string num(double v) {
  char buf[32];
  snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  return f;
}

void write_meta(std::ofstream& f, const Metadata& meta) {
  for (const auto& [k, v] : meta) f << "# " << k << "=" << v << "\n";
}

} // namespace

void write_interface_trace_csv(const std::string& path, const Metadata& meta,
                               const InterfaceTrace& trace) {
  auto f = open_out(path);
  write_meta(f, meta);
  f << "time,x_f,x_f_exact,error\n";
  for (size_t i = 0; i < trace.size(); ++i) {
    f << num(trace.times[i]) << "," << num(trace.positions[i]) << ","
      << num(trace.exact_positions[i]) << "," << num(trace.errors[i]) << "\n";
  }
}

void write_profile_csv(const std::string& path, const Metadata& meta,
                       const std::vector<double>& x, const std::vector<double>& theta,
                       const std::vector<double>& exact) {
  auto f = open_out(path);
  write_meta(f, meta);
  if (exact.empty()) {
    f << "x,theta\n";
    for (size_t i = 0; i < x.size(); ++i) f << num(x[i]) << "," << num(theta[i]) << "\n";
  } else {
    f << "x,theta,theta_exact,error\n";
    for (size_t i = 0; i < x.size(); ++i) {
      f << num(x[i]) << "," << num(theta[i]) << "," << num(exact[i]) << ","
        << num(std::abs(theta[i] - exact[i])) << "\n";
    }
  }
}

void write_diagonal_csv(const std::string& path, const Metadata& meta,
                        const std::vector<std::array<double, 2>>& profile) {
  auto f = open_out(path);
  write_meta(f, meta);
  f << "s,theta\n";
  for (const auto& p : profile) f << num(p[0]) << "," << num(p[1]) << "\n";
}

void write_isolines_csv(const std::string& path, const Metadata& meta, const IsolineSet& set) {
  auto f = open_out(path);
  write_meta(f, meta);
  f << "level,polyline_id,x,y\n";
  int id = 0;
  for (size_t li = 0; li < set.levels.size(); ++li) {
    for (const auto& line : set.polylines[li]) {
      for (const auto& p : line)
        f << num(set.levels[li]) << "," << id << "," << num(p[0]) << "," << num(p[1]) << "\n";
      ++id;
    }
  }
}

void write_conservation_csv(const std::string& path, const Metadata& meta,
                            const std::vector<std::array<double, 2>>& series) {
  auto f = open_out(path);
  write_meta(f, meta);
  f << "time,total\n";
  for (const auto& p : series) f << num(p[0]) << "," << num(p[1]) << "\n";
}

void write_timing_csv(const std::string& path, const Metadata& meta,
                      const std::vector<std::string>& methods, const std::vector<int>& sizes,
                      const std::vector<std::vector<double>>& seconds) {
  auto f = open_out(path);
  write_meta(f, meta);
  f << "n";
  for (const auto& m : methods) f << "," << m;
  f << "\n";
  for (size_t r = 0; r < sizes.size(); ++r) {
    f << sizes[r];
    for (size_t c = 0; c < methods.size(); ++c) f << "," << num(seconds[r][c]);
    f << "\n";
  }
}

TraceFile read_interface_trace_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open '" + path + "'");
  TraceFile out;
  std::string line;
  bool header_seen = false;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const size_t eq = line.find('=');
      if (eq != std::string::npos) {
        size_t b = 1;
        while (b < line.size() && line[b] == ' ') ++b;
        out.meta[line.substr(b, eq - b)] = line.substr(eq + 1);
      }
      continue;
    }
    if (!header_seen) { // column header
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    double v[4] = {0, 0, 0, 0};
    for (int c = 0; c < 4 && std::getline(ss, cell, ','); ++c) v[c] = std::stod(cell);
    out.trace.times.push_back(v[0]);
    out.trace.positions.push_back(v[1]);
    out.trace.exact_positions.push_back(v[2]);
    out.trace.errors.push_back(v[3]);
  }
  return out;
}

namespace {

double lerp_at(const std::vector<double>& ts, const std::vector<double>& vs, double t) {
  if (ts.empty()) return std::nan("");
  if (t <= ts.front()) return vs.front();
  if (t >= ts.back()) return vs.back();
  const auto it = std::lower_bound(ts.begin(), ts.end(), t);
  const size_t hi = it - ts.begin();
  const size_t lo = hi - 1;
  const double u = (t - ts[lo]) / (ts[hi] - ts[lo]);
  return vs[lo] + u * (vs[hi] - vs[lo]);
}

} // namespace

void write_comparison_csv(const std::string& path, const std::vector<TraceFile>& traces) {
  if (traces.empty()) throw Error("write_comparison_csv: no traces given");
  auto f = open_out(path);
  f << "# stefan-lbm trace comparison\n";
  std::vector<std::string> names;
  for (size_t i = 0; i < traces.size(); ++i) {
    auto it = traces[i].meta.find("method");
    names.push_back(it != traces[i].meta.end() ? it->second : "run" + std::to_string(i));
    auto h = traces[i].meta.find("case_hash");
    f << "# trace" << i << "=" << names.back() << (h != traces[i].meta.end() ? " " + h->second : "")
      << "\n";
  }
  f << "time";
  for (const auto& n : names) f << ",x_f_" << n << ",error_" << n;
  f << ",x_f_exact\n";

  const auto& grid = traces[0].trace;
  for (size_t r = 0; r < grid.size(); ++r) {
    const double t = grid.times[r];
    f << num(t);
    for (const auto& tf : traces) {
      f << "," << num(lerp_at(tf.trace.times, tf.trace.positions, t)) << ","
        << num(lerp_at(tf.trace.times, tf.trace.errors, t));
    }
    f << "," << num(grid.exact_positions[r]) << "\n";
  }
}

} // namespace slbm
