#pragma once

namespace slbm {

/// Parameters of the two-phase melting similarity solution. The solver
/// benchmarks in this project all use equal material properties in both
/// phases (alpha = k = rho = 1); the formulas keep the general ratios.
struct StefanCaseParams {
  double Ste;       // Stefan number, > 0
  double theta0;    // far-field solid temperature, < 0
  double alpha = 1; // diffusivity ratio alpha_s/alpha_l
  double k = 1;     // conductivity ratio k_s/k_l
  double rho = 1;   // density ratio rho_s/rho_l

  void validate() const; // throws ConfigError on violated invariants
};

/// Similarity solution: temperature profiles in both phases and the front
/// trajectory x_f(t) = 2 lambda sqrt(t), with lambda the positive root of
/// the transcendental front condition.
struct AnalyticSolution {
  StefanCaseParams params;
  double lambda;
};

double erf(double z);
double erfc(double z); // cancellation-safe for large z

/// Residual of the front condition at a trial lambda:
///   exp(-l^2)/erf(l) + theta0 (k/sqrt(a)) exp(-l^2/a)/erfc(l/sqrt(a)) - rho l sqrt(pi)/Ste.
double lambda_residual(const StefanCaseParams& params, double lambda);

/// Finds the root of the front condition by bracketed bisection/secant on
/// (1e-8, 5]. Throws if the bracket carries no sign change or the residual
/// at the root exceeds 1e-12.
AnalyticSolution solve_lambda(const StefanCaseParams& params);

/// Exact temperature at position x >= 0 and time t > 0 (throws on t <= 0).
double exact_theta(const AnalyticSolution& sol, double x, double t);

/// Front position 2 lambda sqrt(t), t >= 0.
double interface_position(const AnalyticSolution& sol, double t);

/// Time at which the front sits at x_target > 0 (throws on x_target <= 0).
double initial_time_for_front(const AnalyticSolution& sol, double x_target);

} // namespace slbm
