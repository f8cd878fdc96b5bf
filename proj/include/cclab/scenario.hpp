#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cclab/point_model.hpp"

namespace cclab {

/// Second-fundamental-form construction recipe.
struct HSpec {
  enum class Kind { zero, umbilical, quasi_umbilical, explicit_values, random };
  Kind kind = Kind::zero;
  std::vector<double> lambda;   ///< umbilical: h^a = lambda[a] * I (missing entries 0)
  double u = 0.0;               ///< quasi_umbilical scaling
  double r = 1.0;               ///< quasi_umbilical parameter
  std::vector<Matrix> values;   ///< explicit components
  double scale = 1.0;           ///< random: entries uniform in [-scale, scale]
};

/// Connection tensor construction recipe.
struct MSpec {
  enum class Kind { zero, scaled_identity, explicit_values, random };
  Kind kind = Kind::zero;
  double s = 0.0;       ///< scaled_identity factor
  Matrix values;        ///< explicit matrix
  double scale = 0.3;   ///< random: entries uniform in [-scale, scale]
};

/// Deterministic recipe for one pointwise scenario. The seed fully determines
/// the output of make_point.
struct ScenarioSpec {
  enum class Kind { invariant, anti_invariant, random, fixture };
  Kind kind = Kind::random;
  std::string id;            ///< report identifier
  std::string fixture_name;  ///< for Kind::fixture
  int n = 0;
  int m = 0;
  double c = 0.0;
  HSpec h;
  MSpec M;
  std::uint64_t seed = 0;
};

/// Tangent space assembled from whole quaternionic blocks {v, J1 v, J2 v, J3 v};
/// achieves ||P_k||^2 = n for every k. Requires 4 | n and n <= 4m.
SubmanifoldPoint make_invariant_point(const ScenarioSpec& spec);

/// Tangent space spanned by the real axes of n distinct quaternionic blocks;
/// achieves ||P_k||^2 = 0. Requires n <= m.
SubmanifoldPoint make_anti_invariant_point(const ScenarioSpec& spec);

/// Orthonormalized seeded Gaussian tangent frame with random symmetric h and M.
SubmanifoldPoint make_random_point(const ScenarioSpec& spec);

/// Dispatch on spec.kind, including named fixtures.
SubmanifoldPoint make_point(const ScenarioSpec& spec);

/// h components realizing the quasi-umbilical equality pattern:
/// h^0 = diag(u, ..., u, n(n-1)/r * u), all others zero.
std::vector<Matrix> make_quasi_umbilical_h(int n, int codim, double u, double r);

/// Canonical fixtures: S0 invariant totally geodesic (n=4, 4m=8, c=1),
/// S1 = S0 with umbilical h on the first normal direction,
/// S2 = S0 with M = 0.1 * I.
SubmanifoldPoint fixture(const std::string& name);
std::vector<std::string> fixture_names();
ScenarioSpec fixture_spec(const std::string& name);

}  // namespace cclab
