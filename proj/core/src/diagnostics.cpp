#include "slbm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "slbm/errors.hpp"

namespace slbm {

InterfaceLocation locate_interface_1d(std::span<const double> theta, double dx) {
  InterfaceLocation loc;
  for (size_t j = 0; j + 1 < theta.size(); ++j) {
    if (theta[j] > 0 && theta[j + 1] <= 0) {
      if (!loc.position) {
        loc.position = j * dx + dx * theta[j] / (theta[j] - theta[j + 1]);
      } else {
        loc.multiple_crossings = true;
        break;
      }
    }
  }
  return loc;
}

InterfaceLocation locate_interface_by_fraction(std::span<const double> ell, double dx,
                                               double threshold) {
  InterfaceLocation loc;
  for (size_t j = 0; j + 1 < ell.size(); ++j) {
    if (ell[j] > threshold && ell[j + 1] <= threshold) {
      if (!loc.position) {
        loc.position = j * dx + dx * (ell[j] - threshold) / (ell[j] - ell[j + 1]);
      } else {
        loc.multiple_crossings = true;
        break;
      }
    }
  }
  return loc;
}

namespace {

// Grid-edge identifiers used to chain marching-squares segments: a crossing
// point lies on exactly one edge, so equal ids mean shared endpoints without
// any floating-point comparison.
long hedge_id(int i, int j, int nx) { return static_cast<long>(j) * (nx - 1) + i; }
long vedge_id(int i, int j, int nx, int ny) {
  return static_cast<long>(nx - 1) * ny + static_cast<long>(j) * nx + i;
}

struct Segment {
  long ea, eb;
  IsoPoint pa, pb;
};

IsoPoint interp(double xa, double ya, double va, double xb, double yb, double vb, double level) {
  double t = (vb == va) ? 0.5 : (level - va) / (vb - va);
  t = std::clamp(t, 0.0, 1.0);
  return {xa + t * (xb - xa), ya + t * (yb - ya)};
}

std::vector<Polyline> assemble(std::vector<Segment>& segs) {
  std::multimap<long, size_t> by_edge;
  for (size_t s = 0; s < segs.size(); ++s) {
    by_edge.emplace(segs[s].ea, s);
    by_edge.emplace(segs[s].eb, s);
  }
  std::vector<bool> used(segs.size(), false);
  std::vector<Polyline> out;

  auto walk = [&](size_t start, bool from_a) {
    Polyline line;
    size_t s = start;
    bool enter_at_a = from_a;
    line.push_back(enter_at_a ? segs[s].pa : segs[s].pb);
    while (true) {
      used[s] = true;
      const long exit_edge = enter_at_a ? segs[s].eb : segs[s].ea;
      line.push_back(enter_at_a ? segs[s].pb : segs[s].pa);
      size_t next = segs.size();
      auto [lo, hi] = by_edge.equal_range(exit_edge);
      for (auto it = lo; it != hi; ++it) {
        if (!used[it->second]) {
          next = it->second;
          break;
        }
      }
      if (next == segs.size()) break;
      s = next;
      enter_at_a = segs[s].ea == exit_edge;
    }
    return line;
  };

  // Open chains first: start from edges incident to exactly one segment.
  for (size_t s = 0; s < segs.size(); ++s) {
    if (used[s]) continue;
    for (bool from_a : {true, false}) {
      const long e = from_a ? segs[s].ea : segs[s].eb;
      size_t incident = 0;
      auto [lo, hi] = by_edge.equal_range(e);
      for (auto it = lo; it != hi; ++it) ++incident;
      if (incident == 1) {
        out.push_back(walk(s, from_a));
        break;
      }
    }
  }
  // Remaining segments belong to closed loops.
  for (size_t s = 0; s < segs.size(); ++s) {
    if (!used[s]) out.push_back(walk(s, true));
  }
  return out;
}

} // namespace

IsolineSet extract_isolines_2d(std::span<const double> theta, int nx, int ny, double dx,
                               std::span<const double> levels) {
  if (static_cast<long>(theta.size()) != static_cast<long>(nx) * ny)
    throw DiagnosticsError("extract_isolines_2d: field size does not match nx*ny");
  IsolineSet out;
  out.levels.assign(levels.begin(), levels.end());
  out.polylines.resize(levels.size());

  auto value = [&](int i, int j) { return theta[i + static_cast<long>(nx) * j]; };

  for (size_t li = 0; li < levels.size(); ++li) {
    const double lv = levels[li];
    std::vector<Segment> segs;
    for (int j = 0; j + 1 < ny; ++j) {
      for (int i = 0; i + 1 < nx; ++i) {
        const double v00 = value(i, j), v10 = value(i + 1, j);
        const double v01 = value(i, j + 1), v11 = value(i + 1, j + 1);
        int c = 0;
        if (v00 >= lv) c |= 1;
        if (v10 >= lv) c |= 2;
        if (v11 >= lv) c |= 4;
        if (v01 >= lv) c |= 8;
        if (c == 0 || c == 15) continue;

        const double x0 = i * dx, x1 = (i + 1) * dx;
        const double y0 = j * dx, y1 = (j + 1) * dx;
        const long eb = hedge_id(i, j, nx);
        const long et = hedge_id(i, j + 1, nx);
        const long el = vedge_id(i, j, nx, ny);
        const long er = vedge_id(i + 1, j, nx, ny);
        const IsoPoint pb = interp(x0, y0, v00, x1, y0, v10, lv);
        const IsoPoint pt = interp(x0, y1, v01, x1, y1, v11, lv);
        const IsoPoint pl = interp(x0, y0, v00, x0, y1, v01, lv);
        const IsoPoint pr = interp(x1, y0, v10, x1, y1, v11, lv);

        switch (c) {
        case 1: case 14: segs.push_back({eb, el, pb, pl}); break;
        case 2: case 13: segs.push_back({eb, er, pb, pr}); break;
        case 4: case 11: segs.push_back({et, er, pt, pr}); break;
        case 8: case 7:  segs.push_back({et, el, pt, pl}); break;
        case 3: case 12: segs.push_back({el, er, pl, pr}); break;
        case 6: case 9:  segs.push_back({eb, et, pb, pt}); break;
        case 5: case 10: {
          // Saddle: connect according to the cell-average side.
          const bool avg_in = 0.25 * (v00 + v10 + v11 + v01) >= lv;
          const bool corners_in_are_00_11 = (c == 5);
          if (corners_in_are_00_11 == avg_in) {
            segs.push_back({eb, er, pb, pr});
            segs.push_back({et, el, pt, pl});
          } else {
            segs.push_back({eb, el, pb, pl});
            segs.push_back({et, er, pt, pr});
          }
          break;
        }
        default: break;
        }
      }
    }
    out.polylines[li] = assemble(segs);
  }
  return out;
}

std::vector<std::array<double, 2>> sample_diagonal(std::span<const double> theta, int nx, int ny,
                                                   double dx) {
  if (nx != ny) throw DiagnosticsError("sample_diagonal: field is not square");
  if (static_cast<long>(theta.size()) != static_cast<long>(nx) * ny)
    throw DiagnosticsError("sample_diagonal: field size does not match nx*ny");
  std::vector<std::array<double, 2>> out;
  out.reserve(nx);
  const double ds = dx * std::sqrt(2.0);
  for (int i = 0; i < nx; ++i) out.push_back({i * ds, theta[i + static_cast<long>(nx) * i]});
  return out;
}

double linf_error(std::span<const double> theta, const AnalyticSolution& oracle, double dx,
                  double t) {
  if (!(t > 0)) throw DiagnosticsError("linf_error: requires t > 0");
  double worst = 0.0;
  for (size_t j = 0; j < theta.size(); ++j)
    worst = std::max(worst, std::abs(theta[j] - exact_theta(oracle, j * dx, t)));
  return worst;
}

double total_enthalpy(const SolverState& state) {
  const double Ste = state.config.Ste;
  double total = 0.0;
  switch (state.config.method) {
  case Method::EEBM: {
    const auto m0 = moment(state.f, 0);
    for (long j = 0; j < m0.nodes; ++j) total += m0.data[j];
    break;
  }
  case Method::IREBM:
    for (double th : state.theta) total += th + phi_delta(th, state.config.delta) / Ste;
    break;
  case Method::ILFBM:
    for (long j = 0; j < static_cast<long>(state.theta.size()); ++j)
      total += state.theta[j] + state.ell[j] / Ste;
    break;
  }
  return total;
}

} // namespace slbm
