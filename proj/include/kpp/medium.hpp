#pragma once

#include <map>
#include <stdexcept>
#include <vector>

namespace kpp {

/// Coefficient sequence a_j of the lattice equation: a_j = 1 outside the
/// perturbation radius N, a_j > 0 prescribed inside.
class MediumProfile {
 public:
  /// Homogeneous medium (N = 0, a_j = 1 everywhere).
  MediumProfile() = default;

  /// Perturbed medium from explicit values on |j| <= N. `values` must have
  /// exactly 2N+1 entries ordered j = -N..N, all positive.
  MediumProfile(int radius, std::vector<double> values) : radius_(radius) {
    if (radius < 0) {
      throw std::invalid_argument("perturbation radius must be >= 0");
    }
    if (values.size() != static_cast<std::size_t>(2 * radius + 1)) {
      throw std::invalid_argument("perturbation needs 2N+1 values");
    }
    for (int j = -radius; j <= radius; ++j) {
      double a = values[static_cast<std::size_t>(j + radius)];
      if (!(a > 0.0)) {
        throw std::invalid_argument("perturbation coefficients must be > 0");
      }
      perturbation_[j] = a;
    }
  }

  /// Single perturbed site at j = 0 with coefficient a0.
  static MediumProfile single_site(double a0) {
    return MediumProfile(0, {a0});
  }

  double a(int j) const {
    auto it = perturbation_.find(j);
    return it == perturbation_.end() ? 1.0 : it->second;
  }

  int radius() const { return radius_; }

  double max_a() const {
    double m = 1.0;
    for (const auto& [j, a] : perturbation_) m = std::max(m, a);
    return m;
  }

  bool homogeneous() const {
    for (const auto& [j, a] : perturbation_) {
      if (a != 1.0) return false;
    }
    return true;
  }

  /// Coefficients sampled on the window [j_min, j_max], contiguous.
  std::vector<double> sample(int j_min, int j_max) const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(j_max - j_min + 1));
    for (int j = j_min; j <= j_max; ++j) out.push_back(a(j));
    return out;
  }

 private:
  int radius_ = 0;
  std::map<int, double> perturbation_;
};

/// The logistic nonlinearity f_j(u) = a_j - u tied to a medium, with the
/// bounds L (on -f') and L0 (f_j(u) < 0 for u > L0) that the sub-solution
/// construction and the invariant region use.
struct NonlinearityModel {
  double L = 1.0;
  double L0 = 0.0;  // 0 means "derive from the medium" (max_j a_j)

  double f(const MediumProfile& medium, int j, double u) const {
    return medium.a(j) - u;
  }
  static double fprime(double /*u*/) { return -1.0; }

  double effective_L0(const MediumProfile& medium) const {
    return L0 > 0.0 ? L0 : medium.max_a();
  }
};

}  // namespace kpp
