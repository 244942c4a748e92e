#include "slbm/lattice.hpp"

#include <cmath>
#include <limits>

#include "slbm/errors.hpp"

namespace slbm {

std::string_view to_string(LatticeKind kind) {
  switch (kind) {
  case LatticeKind::D1Q3: return "d1q3";
  case LatticeKind::D2Q5: return "d2q5";
  case LatticeKind::D2Q9: return "d2q9";
  }
  return "?";
}

LatticeDescriptor make_lattice(LatticeKind kind) {
  LatticeDescriptor lat;
  lat.kind = kind;
  switch (kind) {
  case LatticeKind::D1Q3:
    lat.dim = 1;
    lat.q = 3;
    lat.velocities = {{0, 0}, {1, 0}, {-1, 0}};
    lat.weights = {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0};
    lat.opposite = {0, 2, 1};
    break;
  case LatticeKind::D2Q5:
    lat.dim = 2;
    lat.q = 5;
    lat.velocities = {{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    lat.weights = {1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    lat.opposite = {0, 3, 4, 1, 2};
    break;
  case LatticeKind::D2Q9:
    lat.dim = 2;
    lat.q = 9;
    lat.velocities = {{0, 0}, {1, 0},  {0, 1},  {-1, 0}, {0, -1},
                      {1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    lat.weights = {4.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0, 1.0 / 9.0,
                   1.0 / 36.0, 1.0 / 36.0, 1.0 / 36.0, 1.0 / 36.0};
    lat.opposite = {0, 3, 4, 1, 2, 7, 8, 5, 6};
    break;
  }
  return lat;
}

DistributionField::DistributionField(LatticeDescriptor lattice, int nx, int ny)
    : lattice_(std::move(lattice)), nx_(nx), ny_(ny),
      data_(static_cast<size_t>(lattice_.q) * nx * ny, 0.0) {
  if (nx < 1 || ny < 1) throw Error("DistributionField: grid must have at least one node per axis");
  if (lattice_.dim == 1 && ny != 1) throw Error("DistributionField: 1D lattice requires ny == 1");
}

bool DistributionField::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

MomentField moment(const DistributionField& dist, int order) {
  const auto& lat = dist.lattice();
  const long n = dist.nodes();
  MomentField out;
  out.order = order;
  out.nodes = n;

  switch (order) {
  case 0: {
    out.components = 1;
    out.data.assign(n, 0.0);
    moment0_into(dist, out.data);
    break;
  }
  case 1: {
    out.components = lat.dim;
    out.data.assign(static_cast<size_t>(out.components) * n, 0.0);
    for (int i = 0; i < lat.q; ++i) {
      auto p = dist.plane(i);
      for (int c = 0; c < lat.dim; ++c) {
        const double e = lat.velocities[i][c];
        if (e == 0.0) continue;
        double* dst = out.data.data() + c * n;
        for (long j = 0; j < n; ++j) dst[j] += e * p[j];
      }
    }
    break;
  }
  case 2: {
    out.components = lat.dim * lat.dim;
    out.data.assign(static_cast<size_t>(out.components) * n, 0.0);
    for (int i = 0; i < lat.q; ++i) {
      auto p = dist.plane(i);
      for (int a = 0; a < lat.dim; ++a) {
        for (int b = 0; b < lat.dim; ++b) {
          const double e = static_cast<double>(lat.velocities[i][a]) * lat.velocities[i][b];
          if (e == 0.0) continue;
          double* dst = out.data.data() + (a * lat.dim + b) * n;
          for (long j = 0; j < n; ++j) dst[j] += e * p[j];
        }
      }
    }
    break;
  }
  default:
    throw Error("moment: unsupported order " + std::to_string(order));
  }
  return out;
}

void moment0_into(const DistributionField& dist, std::span<double> out) {
  const long n = dist.nodes();
  auto p0 = dist.plane(0);
  for (long j = 0; j < n; ++j) out[j] = p0[j];
  for (int i = 1; i < dist.lattice().q; ++i) {
    auto p = dist.plane(i);
    for (long j = 0; j < n; ++j) out[j] += p[j];
  }
}

namespace {

// Shift one row of length nx by ex (pull: dst[x] = src[x-ex]).
void shift_row(const double* src, double* dst, int nx, int ex, AxisWrap wrap) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  if (ex == 0) {
    for (int x = 0; x < nx; ++x) dst[x] = src[x];
  } else if (ex > 0) {
    for (int x = nx - 1; x >= ex; --x) dst[x] = src[x - ex];
    for (int x = 0; x < ex; ++x) dst[x] = wrap == AxisWrap::Periodic ? src[nx + x - ex] : nan;
  } else {
    for (int x = 0; x < nx + ex; ++x) dst[x] = src[x - ex];
    for (int x = nx + ex; x < nx; ++x) dst[x] = wrap == AxisWrap::Periodic ? src[x - ex - nx] : nan;
  }
}

} // namespace

void stream(const DistributionField& src, DistributionField& dst,
            std::array<AxisWrap, 2> wrap, bool reverse) {
  const auto& lat = src.lattice();
  const int nx = src.nx();
  const int ny = src.ny();
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  for (int i = 0; i < lat.q; ++i) {
    const int sgn = reverse ? -1 : 1;
    const int ex = sgn * lat.velocities[i][0];
    const int ey = sgn * lat.velocities[i][1];
    auto sp = src.plane(i);
    auto dp = dst.plane(i);
    for (int y = 0; y < ny; ++y) {
      double* drow = dp.data() + static_cast<long>(y) * nx;
      int sy = y - ey;
      if (sy < 0 || sy >= ny) {
        if (wrap[1] == AxisWrap::Periodic) {
          sy = (sy + ny) % ny;
        } else {
          for (int x = 0; x < nx; ++x) drow[x] = nan;
          continue;
        }
      }
      const double* srow = sp.data() + static_cast<long>(sy) * nx;
      shift_row(srow, drow, nx, ex, wrap[0]);
    }
  }
}

} // namespace slbm
