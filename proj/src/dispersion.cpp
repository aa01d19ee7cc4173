#include "kpp/dispersion.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "kpp/errors.hpp"

namespace kpp::dispersion {

namespace {

constexpr double kResidualTol = 1e-10;
constexpr int kMaxIterations = 200;

void require_positive(double x, const char* name) {
  if (!(x > 0.0)) {
    throw std::domain_error(std::string(name) + " must be > 0");
  }
}

/// Bracketed bisection refined by Newton. `f` must be monotone on
/// [lo, hi] with a sign change. Converges to |f| <= kResidualTol or throws.
double solve_root(const std::function<double(double)>& f,
                  const std::function<double(double)>& df, double lo,
                  double hi, const char* what) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) {
    throw NumericsError(std::string("no sign change bracketing ") + what);
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIterations; ++it) {
    double fx = f(x);
    if (std::fabs(fx) <= kResidualTol) return x;
    if ((flo < 0.0) == (fx < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    // Newton step, falling back to bisection when it leaves the bracket.
    double d = df(x);
    double xn = d != 0.0 ? x - fx / d : lo;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    x = xn;
  }
  throw NumericsError(std::string("root finder did not converge for ") + what);
}

}  // namespace

double lambda_of_mu(double mu) {
  require_positive(mu, "mu");
  return std::exp(mu) - 1.0 + std::exp(-mu);
}

double c_of_mu(double mu) {
  require_positive(mu, "mu");
  return lambda_of_mu(mu) / mu;
}

double zeta(double z) {
  require_positive(z, "z");
  double s = std::sqrt(1.0 + z * z);
  return s + std::log(z / (1.0 + s));
}

double g_of_z(double z, double mu) {
  require_positive(z, "z");
  require_positive(mu, "mu");
  return -1.0 + 2.0 * (zeta(z) + mu) / z;
}

double sigma_of_speed(double c) {
  require_positive(c, "c");
  double z = 2.0 / c;
  return 1.0 - 2.0 * zeta(z) / z;
}

DispersionSummary solve_dispersion(double lambda_hat) {
  if (!(lambda_hat >= 1.0)) {
    throw std::domain_error("lambda_hat must be >= 1");
  }

  // mu*: critical point of c, i.e. mu lambda'(mu) = lambda(mu).
  auto crit = [](double mu) {
    return mu * (std::exp(mu) - std::exp(-mu)) - lambda_of_mu(mu);
  };
  auto dcrit = [](double mu) {
    // d/dmu [mu (e^mu - e^-mu) - lambda(mu)] = mu (e^mu + e^-mu)
    return mu * (std::exp(mu) + std::exp(-mu));
  };
  double mu_star = solve_root(crit, dcrit, 1e-6, 10.0, "mu_star");

  DispersionSummary out;
  out.mu_star = mu_star;
  out.lambda_star = lambda_of_mu(mu_star);
  out.c_star = out.lambda_star / mu_star;
  out.lambda_hat = lambda_hat;

  // l0: the zero of zeta.
  auto dzeta = [](double z) { return std::sqrt(1.0 + z * z) / z; };
  out.l0 = solve_root([](double z) { return zeta(z); }, dzeta, 0.1, 10.0,
                      "l0");

  if (lambda_hat > 1.0) {
    // lambda(mu_hat) = lambda_hat has the closed form
    // mu_hat = arccosh((lambda_hat + 1) / 2).
    double mu_hat = std::acosh(0.5 * (lambda_hat + 1.0));
    if (std::fabs(lambda_of_mu(mu_hat) - lambda_hat) > kResidualTol) {
      throw NumericsError("mu_hat residual above tolerance");
    }
    out.mu_hat = mu_hat;
    out.c_hat = c_of_mu(mu_hat);
  }
  return out;
}

double mu_of_speed(double c, const DispersionSummary& summary) {
  if (!(c >= summary.c_star)) {
    throw std::domain_error("mu_of_speed requires c >= c_star");
  }
  if (c == summary.c_star) return summary.mu_star;
  // c(mu) is strictly decreasing on (0, mu*]; bracket below mu*.
  auto f = [&](double mu) { return c_of_mu(mu) - c; };
  auto df = [](double mu) {
    double l = std::exp(mu) - 1.0 + std::exp(-mu);
    double dl = std::exp(mu) - std::exp(-mu);
    return (dl * mu - l) / (mu * mu);
  };
  return solve_root(f, df, 1e-8, summary.mu_star, "mu_of_speed");
}

}  // namespace kpp::dispersion
