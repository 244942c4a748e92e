#pragma once

#include <cmath>
#include <span>
#include <string_view>
#include <vector>

#include "slbm/boundary.hpp"
#include "slbm/lattice.hpp"
#include "slbm/method.hpp"

namespace slbm {

std::string_view to_string(Method m);

struct SchemeConfig {
  Method method = Method::IREBM;
  double tau = 0;   // relaxation parameter, > 1/2
  double Ste = 0;   // Stefan number, > 0
  double delta = 0; // regularization width, > 0 for IREBM

  double newton_tol = 1e-12; // absolute tolerance on the theta iterate
  int newton_max_iter = 50;
  double inner_tol = 1e-8; // max-norm tolerance on the liquid fraction
  int inner_max_iter = 100;

  void validate() const; // throws ConfigError
};

// --- enthalpy/temperature/liquid-fraction transfer functions ---------------

/// l(H): 0 below the melting range, Ste*H on the mushy plateau, 1 above it.
inline double liquid_fraction_from_enthalpy(double H, double Ste) {
  if (H < 0) return 0.0;
  if (H > 1.0 / Ste) return 1.0;
  return Ste * H;
}

/// Theta(H): H below melting, 0 on the mushy plateau, H - 1/Ste above it.
inline double temperature_from_enthalpy(double H, double Ste) {
  if (H < 0) return H;
  if (H > 1.0 / Ste) return H - 1.0 / Ste;
  return 0.0;
}

/// Sharp liquid fraction; theta = 0 counts as solid.
inline double sharp_liquid_fraction(double theta) { return theta > 0 ? 1.0 : 0.0; }

/// H(theta) with the sharp fraction: theta + phi(theta)/Ste.
inline double enthalpy_from_temperature(double theta, double Ste) {
  return theta + sharp_liquid_fraction(theta) / Ste;
}

/// Regularized liquid fraction 0.5 (1 + tanh(theta/delta)).
inline double phi_delta(double theta, double delta) {
  return 0.5 * (1.0 + std::tanh(theta / delta));
}

/// d/dtheta of phi_delta: sech^2(theta/delta)/(2 delta), evaluated through
/// exp(-2|x|) so large arguments underflow to 0 instead of overflowing.
inline double phi_delta_prime(double theta, double delta) {
  const double x = std::abs(theta / delta);
  const double e = std::exp(-2.0 * x);
  const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
  return sech2 / (2.0 * delta);
}

// --- per-node Newton solve for the regularized enthalpy equation -----------

/// One Newton step for F(t) = t + phi_delta(t)/Ste - m0 - phi_delta(theta_old)/Ste.
/// The denominator is >= 1, so the update is always well defined.
double newton_update(double theta_k, double m0, double theta_old, double Ste, double delta);

struct NewtonResult {
  double theta;
  int iterations;
  double residual; // F(theta) at the returned iterate
  bool used_bisection;
};

/// Full solve of F(t) = 0 from the initial guess theta_old; stops when the
/// iterate moves less than tol. If the iteration cap is hit, falls back to
/// bisection on a bracket that always contains the root (F is strictly
/// increasing).
NewtonResult solve_regularized_enthalpy(double m0, double theta_old, double Ste, double delta,
                                        double tol, int max_iter);

// --- relaxation-parameter / time-step conversion ---------------------------

/// tau = 1/2 + 3 dt/dx^2 (diffusive scaling of the BGK schemes).
double tau_from_timestep(double dt, double dx);

/// dt = (tau - 1/2) dx^2 / 3; throws on tau <= 1/2.
double timestep_from_tau(double tau, double dx);

// --- solver state and steppers ---------------------------------------------

/// State advanced by the three schemes. `theta` is kept consistent with the
/// populations after construction and after every step: for EEBM the zeroth
/// moment of f is the enthalpy and theta = Theta(M0(f)); for ILFBM/IREBM the
/// zeroth moment is theta itself. `ell` is the converged liquid fraction and
/// is only used by ILFBM.
struct SolverState {
  DistributionField f;
  std::vector<double> theta;
  std::vector<double> ell;
  long step = 0;
  SchemeConfig config;
};

/// Equilibrium-initialized state from a nodal temperature field.
SolverState make_state(const LatticeDescriptor& lattice, int nx, int ny, const SchemeConfig& config,
                       std::span<const double> theta);

struct StepStats {
  long newton_nodes = 0;
  long newton_iterations = 0;
  int newton_iter_max = 0;
  double newton_residual_max = 0;
  int inner_iterations = 0; // ILFBM
  double dirichlet_deviation_max = 0; // max |theta - theta_Dir| over Dirichlet-on-q nodes
  double neumann_deviation_max = 0;   // max wall/neighbor mismatch over Neumann-on-q nodes

  double newton_iter_mean() const {
    return newton_nodes ? static_cast<double>(newton_iterations) / newton_nodes : 0.0;
  }
};

/// Advances a SolverState one lattice time step at a time. Owns the scratch
/// buffers so repeated stepping does not allocate. One Stepper drives one
/// state; concurrent solver instances must not share a Stepper.
class Stepper {
public:
  Stepper(const LatticeDescriptor& lattice, int nx, int ny, BoundarySpec boundaries);

  /// Dispatches on state.config.method. Throws ConvergenceError when the
  /// Newton solve or the ILFBM inner loop fails to converge.
  StepStats step(SolverState& state);

  const BoundarySpec& boundaries() const { return boundaries_; }

private:
  StepStats step_eebm(SolverState& state);
  StepStats step_ilfbm(SolverState& state);
  StepStats step_irebm(SolverState& state);

  BoundarySpec boundaries_;
  std::array<AxisWrap, 2> wrap_;
  DistributionField omega_;
  DistributionField omega_bgk_; // ILFBM only
  std::vector<double> scalar_a_;
  std::vector<double> scalar_b_;
};

/// One-off convenience wrappers matching the per-scheme step contracts; they
/// build a scratch Stepper internally. Prefer a long-lived Stepper in loops.
StepStats step_eebm(SolverState& state, const BoundarySpec& boundaries);
StepStats step_ilfbm(SolverState& state, const BoundarySpec& boundaries);
StepStats step_irebm(SolverState& state, const BoundarySpec& boundaries);

} // namespace slbm
