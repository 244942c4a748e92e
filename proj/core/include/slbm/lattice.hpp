#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace slbm {

enum class LatticeKind { D1Q3, D2Q5, D2Q9 };

std::string_view to_string(LatticeKind kind);

/// Discrete velocity set of a DdQq stencil: velocities e_i, weights w_i and
/// the opposite-direction map. Weights satisfy sum(w) = 1, sum(w e) = 0 and
/// sum(w e⊗e) = I/3, which fixes the diffusive scaling used by all schemes.
struct LatticeDescriptor {
  LatticeKind kind;
  int dim; // spatial dimension, 1 or 2
  int q;   // number of discrete velocities
  std::vector<std::array<int, 2>> velocities; // e_i, second component 0 in 1D
  std::vector<double> weights;                // w_i
  std::vector<int> opposite;                  // i -> index of -e_i
};

LatticeDescriptor make_lattice(LatticeKind kind);

/// Per-node populations for one stencil, stored as q contiguous per-velocity
/// planes of nx*ny scalars (x fastest). The layout makes streaming a set of
/// shifted plane copies.
class DistributionField {
public:
  DistributionField(LatticeDescriptor lattice, int nx, int ny = 1);

  const LatticeDescriptor& lattice() const { return lattice_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  long nodes() const { return static_cast<long>(nx_) * ny_; }

  long node_index(int ix, int iy = 0) const { return ix + static_cast<long>(nx_) * iy; }

  std::span<double> plane(int i) { return {data_.data() + i * nodes(), static_cast<size_t>(nodes())}; }
  std::span<const double> plane(int i) const {
    return {data_.data() + i * nodes(), static_cast<size_t>(nodes())};
  }

  double& operator()(int i, long node) { return data_[i * nodes() + node]; }
  double operator()(int i, long node) const { return data_[i * nodes() + node]; }

  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }

  bool all_finite() const;

private:
  LatticeDescriptor lattice_;
  int nx_;
  int ny_;
  std::vector<double> data_; // q planes of nx*ny values
};

/// Moment field of order k: `components` scalar planes over the same grid
/// (1 for k=0, d for k=1, d*d row-major for k=2).
struct MomentField {
  int order;
  int components;
  long nodes;
  std::vector<double> data; // component-major planes

  double at(int component, long node) const { return data[component * nodes + node]; }
};

/// Per-node sum of e_i^(⊗k) s_i over the velocity index. Throws on k > 2.
MomentField moment(const DistributionField& dist, int order);

/// Zeroth moment written into a caller-provided span (hot path of the schemes).
void moment0_into(const DistributionField& dist, std::span<double> out);

enum class AxisWrap { Periodic, Open };

/// Shifted-copy streaming: dst_i(x) = src_i(x - e_i). On an Open axis the
/// slots whose source lies outside the grid are set to NaN; the boundary
/// module is responsible for filling them afterwards. `reverse` pulls along
/// +e_i instead, which undoes a periodic streaming pass exactly.
void stream(const DistributionField& src, DistributionField& dst,
            std::array<AxisWrap, 2> wrap, bool reverse = false);

} // namespace slbm
