#include "kpp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kpp/dispersion.hpp"
#include "kpp/errors.hpp"

namespace kpp::spectral {

void TruncatedOperator::matvec(const std::vector<double>& u,
                               std::vector<double>& out) const {
  const std::size_t n = dim();
  if (u.size() != n || out.size() != n) {
    throw std::invalid_argument("matvec size mismatch");
  }
  if (n == 1) {
    out[0] = diag[0] * u[0];
    return;
  }
  out[0] = diag[0] * u[0] + u[1];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = u[i - 1] + diag[i] * u[i] + u[i + 1];
  }
  out[n - 1] = u[n - 2] + diag[n - 1] * u[n - 1];
}

TruncatedOperator build_truncated(const MediumProfile& medium, int M) {
  if (M <= medium.radius()) {
    throw std::invalid_argument(
        "truncation half-width M must exceed the perturbation radius");
  }
  TruncatedOperator op;
  op.M = M;
  op.diag.reserve(static_cast<std::size_t>(2 * M + 1));
  for (int j = -M; j <= M; ++j) op.diag.push_back(medium.a(j) - 2.0);
  return op;
}

TruncatedEigenPair principal_pair(const MediumProfile& medium, int M) {
  const TruncatedOperator op = build_truncated(medium, M);
  const std::size_t n = op.dim();
  // Shift by s = 2 + max a_j so the iteration matrix A + sI is entrywise
  // nonnegative with positive diagonal (Perron iteration stays positive).
  const double shift = 2.0 + medium.max_a();

  std::vector<double> v(n, 1.0), av(n), w(n);
  const long cap = 2000000;
  double lambda = 0.0;
  double residual = 0.0;
  long it = 0;
  for (it = 1; it <= cap; ++it) {
    op.matvec(v, av);
    // Rayleigh quotient and residual from the same matvec.
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += v[i] * av[i];
      den += v[i] * v[i];
    }
    lambda = num / den;
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::fabs(av[i] - lambda * v[i]));
    }
    if (residual <= 1e-10) break;

    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = av[i] + shift * v[i];
      norm = std::max(norm, std::fabs(w[i]));
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  if (residual > 1e-10) {
    throw NumericsError("principal_pair: power iteration did not converge");
  }

  double norm = 0.0;
  for (double x : v) norm = std::max(norm, std::fabs(x));
  for (double& x : v) x /= norm;
  for (double x : v) {
    if (!(x > 0.0)) {
      throw NumericsError("principal_pair: eigenvector lost positivity");
    }
  }
  return TruncatedEigenPair{M, lambda, std::move(v), residual, it};
}

double sturm_largest_eigenvalue(const std::vector<double>& diag, double tol) {
  if (diag.empty()) throw std::invalid_argument("empty diagonal");
  const std::size_t n = diag.size();
  const double pivmin = 1e-300;

  // Number of eigenvalues strictly below x (unit off-diagonals).
  auto count_below = [&](double x) {
    std::size_t count = 0;
    double q = diag[0] - x;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
      q = diag[i] - x - 1.0 / q;
      if (std::fabs(q) < pivmin) q = -pivmin;
      if (q < 0.0) ++count;
    }
    return count;
  };

  double lo = diag[0], hi = diag[0];
  for (double d : diag) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  lo -= 2.0;  // Gershgorin
  hi += 2.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // hit double resolution
    if (count_below(mid) == n) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SpectralBoundResult spectral_bound(const MediumProfile& medium, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("tol must be > 0");
  const int kMaxM = 1 << 14;

  SpectralBoundResult out;
  int M = std::max(medium.radius() + 1, 8);
  auto lambda_at = [&](int m) {
    return sturm_largest_eigenvalue(build_truncated(medium, m).diag, 1e-13);
  };
  double prev = lambda_at(M);
  out.sequence.emplace_back(M, prev);
  while (true) {
    int M2 = 2 * M;
    if (M2 > kMaxM) {
      throw NumericsError(
          "spectral_bound: lambda_M not converged by M = 2^14");
    }
    double cur = lambda_at(M2);
    out.sequence.emplace_back(M2, cur);
    if (std::fabs(cur - prev) < tol) {
      // One Richardson step in M^-2 removes the leading truncation error.
      out.lambda = cur + (cur - prev) / 3.0;
      return out;
    }
    M = M2;
    prev = cur;
  }
}

double TwistedEigenvector::value_at(int j) const {
  if (j > anchor + 1) return 1.0;
  if (j < window_left) return c1 + c2 * std::exp(2.0 * mu * j);
  return phi[static_cast<std::size_t>(j - window_left)];
}

double TwistedEigenvector::untwisted_at(int j) const {
  if (mu * std::fabs(static_cast<double>(j)) > 700.0) {
    throw std::overflow_error("untwisted eigenvector overflows at this j");
  }
  return std::exp(-mu * j) * value_at(j);
}

double TwistedEigenvector::sup() const {
  double m = 1.0;  // right tail
  for (double x : phi) m = std::max(m, x);
  return m;
}

double TwistedEigenvector::inf() const {
  double m = 1.0;
  for (double x : phi) m = std::min(m, x);
  return std::min(m, c1 + std::min(0.0, c2));
}

TwistedResult twisted_eigenvector(const MediumProfile& medium, double mu,
                                  int window_left, int anchor) {
  if (!(mu > 0.0)) throw std::domain_error("mu must be > 0");
  const int N = medium.radius();
  if (anchor <= N) throw std::invalid_argument("anchor must exceed N");
  if (window_left > -(N + 2)) {
    throw std::invalid_argument("window_left must be <= -(N+2)");
  }

  const double gamma = dispersion::lambda_of_mu(mu);
  const double emu = std::exp(mu);
  const double eminus = std::exp(-mu);

  TwistedEigenvector vec;
  vec.mu = mu;
  vec.gamma = gamma;
  vec.window_left = window_left;
  vec.anchor = anchor;
  vec.phi.assign(static_cast<std::size_t>(anchor + 1 - window_left + 1), 0.0);

  auto idx = [&](int j) { return static_cast<std::size_t>(j - window_left); };
  vec.phi[idx(anchor)] = 1.0;
  vec.phi[idx(anchor + 1)] = 1.0;

  // Leftward recursion: e^mu phi_{j-1} = (gamma + 2 - a_j) phi_j
  //                                      - e^-mu phi_{j+1}.
  for (int j = anchor; j > window_left; --j) {
    double next = ((gamma + 2.0 - medium.a(j)) * vec.phi[idx(j)] -
                   eminus * vec.phi[idx(j + 1)]) /
                  emu;
    if (std::fabs(next) > 1e250) {
      throw NumericsError("twisted_eigenvector: recursion overflow");
    }
    vec.phi[idx(j - 1)] = next;
    if (!(next > 0.0)) {
      return TwistedResult{std::nullopt, SignFailure{j - 1, next}};
    }
  }

  // Tail coefficients from the two sites adjacent to the perturbation;
  // phi_j = c1 + c2 e^{2 mu j} is exact for all j <= -N.
  {
    int jb = -(N + 1);
    int ja = -N;
    double ea = std::exp(2.0 * mu * ja);
    double eb = std::exp(2.0 * mu * jb);
    double denom = ea - eb;
    if (denom != 0.0) {
      vec.c2 = (vec.phi[idx(ja)] - vec.phi[idx(jb)]) / denom;
      vec.c1 = vec.phi[idx(ja)] - vec.c2 * ea;
    } else {
      vec.c2 = 0.0;
      vec.c1 = vec.phi[idx(jb)];
    }
  }
  vec.tail_class = std::fabs(vec.c1) < 1e-6 * std::max(1.0, std::fabs(vec.c2))
                       ? TailClass::decays_to_zero
                       : TailClass::limit_positive;
  return TwistedResult{std::move(vec), std::nullopt};
}

TwistedResult twisted_eigenvector(const MediumProfile& medium, double mu) {
  const int N = medium.radius();
  return twisted_eigenvector(medium, mu, -(N + 200), N + 1);
}

}  // namespace kpp::spectral
