#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kpp/medium.hpp"

namespace kpp::spectral {

/// Matrix-free handle for the truncated operator A_M: symmetric tridiagonal
/// with diagonal a_j - 2 (j = -M..M), off-diagonals 1, Dirichlet ends.
struct TruncatedOperator {
  int M;
  std::vector<double> diag;  ///< a_j - 2, indexed j = -M..M

  std::size_t dim() const { return diag.size(); }
  /// out = A_M u (u and out must have dim() entries).
  void matvec(const std::vector<double>& u, std::vector<double>& out) const;
};

/// Throws std::invalid_argument unless M > medium.radius().
TruncatedOperator build_truncated(const MediumProfile& medium, int M);

struct TruncatedEigenPair {
  int M;
  double lambda_M;
  std::vector<double> phi;  ///< positive, sup-norm 1, indexed -M..M
  double residual;          ///< ||A phi - lambda phi||_inf
  long iterations;
};

/// Principal (largest) eigenvalue and positive eigenvector of A_M by
/// shifted power iteration; residual <= 1e-10 or NumericsError.
TruncatedEigenPair principal_pair(const MediumProfile& medium, int M);

/// Largest eigenvalue of the symmetric tridiagonal with the given diagonal
/// and unit off-diagonals, by Sturm-sequence bisection to absolute
/// tolerance `tol`. Used directly by spectral_bound, where the
/// power-iteration gap collapses like M^-2 near lambda = 1.
double sturm_largest_eigenvalue(const std::vector<double>& diag, double tol);

struct SpectralBoundResult {
  double lambda;  ///< Richardson-extrapolated limit of lambda_M
  std::vector<std::pair<int, double>> sequence;  ///< (M, lambda_M), monotone
};

/// lambda = lim_M lambda_M by doubling M until |lambda_2M - lambda_M| < tol,
/// then extrapolating in M^-2. Throws NumericsError past M = 2^14.
SpectralBoundResult spectral_bound(const MediumProfile& medium, double tol);

enum class TailClass { decays_to_zero, limit_positive };

/// Positive solution of the twisted eigenproblem
///   e^-mu phi_{j+1} - 2 phi_j + e^mu phi_{j-1} + a_j phi_j = lambda(mu) phi_j
/// seeded with phi = 1 at the anchor; phi_j = 1 for every j > radius and
/// phi_j = c1 + c2 e^{2 mu j} to the left of the perturbation.
struct TwistedEigenvector {
  double mu;
  double gamma;  ///< lambda(mu)
  int window_left;
  int anchor;                ///< n0; stored indices are [window_left, n0+1]
  std::vector<double> phi;   ///< phi_j for j in [window_left, anchor+1]
  TailClass tail_class;
  double c1 = 0.0;           ///< left tail limit
  double c2 = 0.0;

  double value_at(int j) const;      ///< with tail extensions outside window
  double untwisted_at(int j) const;  ///< psi_j = e^{-mu j} phi_j
  double sup() const;
  double inf() const;
};

struct SignFailure {
  int index;  ///< first j (from the right) with phi_j <= 0
  double value;
};

/// Either the positive eigenvector or the index where positivity failed
/// (expected exactly when mu < mu_hat).
struct TwistedResult {
  std::optional<TwistedEigenvector> vector;
  std::optional<SignFailure> failure;
  bool positive() const { return vector.has_value(); }
};

/// window_left <= -(N+2) and anchor > N required. Defaults: anchor = N+1,
/// window_left = -(N+200).
TwistedResult twisted_eigenvector(const MediumProfile& medium, double mu,
                                  int window_left, int anchor);
TwistedResult twisted_eigenvector(const MediumProfile& medium, double mu);

}  // namespace kpp::spectral
