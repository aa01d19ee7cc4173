#pragma once

#include <optional>

namespace kpp::dispersion {

/// lambda(mu) = e^mu - 1 + e^-mu, the growth rate of the linearized lattice
/// equation on the homogeneous background. Throws std::domain_error for
/// mu <= 0.
double lambda_of_mu(double mu);

/// c(mu) = lambda(mu)/mu, convex with a unique minimum at mu*.
double c_of_mu(double mu);

/// zeta(z) = sqrt(1+z^2) + ln(z / (1 + sqrt(1+z^2))), strictly increasing,
/// with a single zero l0 ~ 0.6627.
double zeta(double z);

/// g(z) = -1 + 2 (zeta(z) + mu) / z; maximized at z0 = csch(mu) where it
/// equals lambda(mu).
double g_of_z(double z, double mu);

/// sigma(c) = 1 - 2 zeta(2/c) / (2/c). Zero at c = c_star, positive for
/// c > c_star (the decay margin used by the tail estimates).
double sigma_of_speed(double c);

/// The critical constants of a medium with spectral bound lambda_hat.
/// mu_hat/c_hat are empty exactly when lambda_hat = 1 (then the formal
/// maximal speed is infinite).
struct DispersionSummary {
  double mu_star;      ///< minimizer of c(mu)
  double c_star;       ///< minimal/spreading speed c(mu_star)
  double lambda_star;  ///< lambda(mu_star)
  double lambda_hat;   ///< spectral bound of the medium (input)
  std::optional<double> mu_hat;  ///< lambda(mu_hat) = lambda_hat; empty => 0
  std::optional<double> c_hat;   ///< c(mu_hat); empty => +infinity
  double l0;                     ///< zero of zeta

  bool c_hat_infinite() const { return !c_hat.has_value(); }
  /// True when lambda_hat < lambda_star and the speed window [c*, c_hat]
  /// (possibly unbounded) is nonempty.
  bool existence_window() const {
    return lambda_hat < lambda_star && (!c_hat || *c_hat > c_star);
  }
};

/// Solves for all critical constants with residuals <= 1e-10.
/// Throws std::domain_error if lambda_hat < 1, NumericsError if a root
/// finder fails to converge.
DispersionSummary solve_dispersion(double lambda_hat);

/// The root of c(mu) = c on (0, mu_star]; defined only for c >= c_star.
/// This is the decay exponent attached to a front of speed c.
double mu_of_speed(double c, const DispersionSummary& summary);

}  // namespace kpp::dispersion
