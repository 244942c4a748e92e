#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "slbm/analytic.hpp"
#include "slbm/schemes.hpp"

namespace slbm {

/// Time series of the measured front position against the similarity
/// solution. All four sequences share the same length.
struct InterfaceTrace {
  std::vector<double> times;
  std::vector<double> positions;
  std::vector<double> exact_positions;
  std::vector<double> errors; // |positions - exact_positions|

  size_t size() const { return times.size(); }
  void push(double t, double x, double x_exact) {
    times.push_back(t);
    positions.push_back(x);
    exact_positions.push_back(x_exact);
    errors.push_back(std::abs(x - x_exact));
  }
};

struct InterfaceLocation {
  std::optional<double> position; // empty when the field has no sign change
  bool multiple_crossings = false;
};

/// Zero crossing of a 1D temperature profile, located by linear interpolation
/// between the bracketing nodes (positive-to-nonpositive, left to right).
InterfaceLocation locate_interface_1d(std::span<const double> theta, double dx);

/// Alternative front locator: threshold crossing of the liquid fraction,
/// for sensitivity checks against the zero-crossing default.
InterfaceLocation locate_interface_by_fraction(std::span<const double> ell, double dx,
                                               double threshold = 0.5);

using IsoPoint = std::array<double, 2>;
using Polyline = std::vector<IsoPoint>;

struct IsolineSet {
  std::vector<double> levels;
  std::vector<std::vector<Polyline>> polylines; // one list of polylines per level
};

/// Marching-squares level sets with linear edge interpolation; saddle cells
/// are disambiguated by the cell-average sign. Coordinates are in domain
/// units (node spacing dx).
IsolineSet extract_isolines_2d(std::span<const double> theta, int nx, int ny, double dx,
                               std::span<const double> levels);

/// Temperature along the main diagonal of a square field, as (arclength,
/// theta) pairs with arclength i*dx*sqrt(2). Throws on non-square fields.
std::vector<std::array<double, 2>> sample_diagonal(std::span<const double> theta, int nx, int ny,
                                                   double dx);

/// Max-norm nodal error of a 1D profile against the similarity solution at
/// time t > 0.
double linf_error(std::span<const double> theta, const AnalyticSolution& oracle, double dx,
                  double t);

/// Conserved total of the running scheme: sum of M0(f) for EEBM, sum of
/// theta + phi_delta(theta)/Ste for IREBM, sum of theta + ell/Ste for ILFBM.
double total_enthalpy(const SolverState& state);

} // namespace slbm
