#pragma once

#include <optional>

#include "kpp/front_metrics.hpp"

namespace kpp::single_site {

/// Closed-form positive solution of the linearized eigenproblem for the
/// single perturbed site (a_j = 1 for j != 0):
///   psi_j = e^{-mu j}                                   for j >= 0,
///   psi_j = (1 + (1-a0) e^-mu (1-e^{2 mu j})/(1-e^{-2 mu})) e^{-mu j}
///                                                       for j < 0.
/// Positive for all j iff a0 <= e^mu - e^-mu + 1.
double closed_form_phi(double a0, double mu, int j);

/// The positivity threshold e^mu - e^-mu + 1 for a given twist.
double positivity_threshold_a0(double mu);

/// The existence threshold e^{mu*} - e^{-mu*} + 1 (~ 3.0734), above which
/// lambda(a0) exceeds lambda* and no fronts exist.
double regime_threshold_a0();

enum class Regime { always_exists_a0_le_1, window_exists, no_fronts };

struct SingleSiteSummary {
  double a0;
  double lambda;                ///< sqrt((1-a0)^2 + 4) - 1 for a0 > 1, else 1
  double mu_hat;                ///< 0 when a0 <= 1
  std::optional<double> c_hat;  ///< empty = infinite
  Regime regime;
};

/// Closed-form constants and the regime verdict for one perturbed site.
SingleSiteSummary summarize(double a0);

struct CrossValidation {
  double lambda_gap;  ///< |spectral_bound - closed-form lambda|
  double phi_gap;     ///< sup-norm gap, untwisted recursion vs closed form
  front_metrics::Verdict classifier_verdict;
  Regime expected_regime;
  bool verdict_agrees;
};

/// Ties the closed forms to the general machinery: spectral bound via
/// M-doubling started at M, twisted recursion untwisted against
/// closed_form_phi, classifier verdict against the regime table.
/// Requires a0 > 0 and M >= 32.
CrossValidation cross_validate(double a0, double mu, int M);

}  // namespace kpp::single_site
