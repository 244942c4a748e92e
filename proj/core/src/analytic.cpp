#include "slbm/analytic.hpp"

#include <cmath>
#include <sstream>

#include "slbm/errors.hpp"

namespace slbm {

void StefanCaseParams::validate() const {
  if (!(Ste > 0)) throw ConfigError("StefanCaseParams: Ste must be > 0");
  if (!(theta0 < 0)) throw ConfigError("StefanCaseParams: theta0 must be < 0");
  if (!(alpha > 0) || !(k > 0) || !(rho > 0))
    throw ConfigError("StefanCaseParams: property ratios must be > 0");
}

double erf(double z) { return std::erf(z); }

double erfc(double z) { return std::erfc(z); }

double lambda_residual(const StefanCaseParams& p, double lambda) {
  const double sqrt_pi = std::sqrt(M_PI);
  const double sqrt_a = std::sqrt(p.alpha);
  return std::exp(-lambda * lambda) / erf(lambda) +
         p.theta0 * (p.k / sqrt_a) * std::exp(-lambda * lambda / p.alpha) / erfc(lambda / sqrt_a) -
         p.rho * lambda * sqrt_pi / p.Ste;
}

AnalyticSolution solve_lambda(const StefanCaseParams& params) {
  params.validate();

  // Bracket: the residual diverges to +inf as lambda -> 0 (erf(lambda) -> 0)
  // and is dominated by the negative linear term for large lambda.
  double a = 1e-8;
  double b = 5.0;
  double fa = lambda_residual(params, a);
  double fb = lambda_residual(params, b);
  if (!(fa > 0) || !(fb < 0)) {
    std::ostringstream os;
    os << "solve_lambda: no sign change on [" << a << ", " << b << "] (residuals " << fa << ", "
       << fb << "); degenerate parameters";
    throw Error(os.str());
  }

  // Bisection with secant acceleration: the secant candidate is accepted only
  // while it stays inside the current bracket, otherwise fall back to the
  // midpoint. Terminates on an interval below 1e-14.
  double x = 0.5 * (a + b);
  for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
    double cand = b - fb * (b - a) / (fb - fa);
    if (!(cand > a) || !(cand < b)) cand = 0.5 * (a + b);
    const double fc = lambda_residual(params, cand);
    if (fc == 0.0) {
      a = b = cand;
      fa = fb = 0.0;
    } else if (fc > 0) {
      a = cand;
      fa = fc;
    } else {
      b = cand;
      fb = fc;
    }
    // Secant stalls when one endpoint barely moves; force a midpoint split
    // every other iteration to keep the bracket shrinking geometrically.
    if (it % 2 == 1 && (b - a) > 1e-14) {
      const double m = 0.5 * (a + b);
      const double fm = lambda_residual(params, m);
      if (fm == 0.0) {
        a = b = m;
      } else if (fm > 0) {
        a = m;
        fa = fm;
      } else {
        b = m;
        fb = fm;
      }
    }
    x = 0.5 * (a + b);
  }

  AnalyticSolution sol{params, x};
  const double res = lambda_residual(params, x);
  if (std::abs(res) > 1e-12) {
    std::ostringstream os;
    os << "solve_lambda: residual " << res << " at lambda=" << x << " exceeds 1e-12";
    throw Error(os.str());
  }
  return sol;
}

double exact_theta(const AnalyticSolution& sol, double x, double t) {
  if (!(t > 0)) throw Error("exact_theta: requires t > 0");
  const auto& p = sol.params;
  const double xf = interface_position(sol, t);
  if (x <= xf) {
    return 1.0 - erf(x / (2.0 * std::sqrt(t))) / erf(sol.lambda);
  }
  const double sqrt_a = std::sqrt(p.alpha);
  return p.theta0 -
         p.theta0 * erfc(x / (2.0 * std::sqrt(p.alpha * t))) / erfc(sol.lambda / sqrt_a);
}

double interface_position(const AnalyticSolution& sol, double t) {
  return 2.0 * sol.lambda * std::sqrt(t);
}

double initial_time_for_front(const AnalyticSolution& sol, double x_target) {
  if (!(x_target > 0)) throw Error("initial_time_for_front: requires x_target > 0");
  const double r = x_target / (2.0 * sol.lambda);
  return r * r;
}

} // namespace slbm
