#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "cclab/curvature.hpp"

namespace cclab {

struct MeanCurvature {
  Vector H;        ///< mean curvature vector in normal-frame coordinates
  double norm2 = 0.0;
};

enum class ExtremumMode { inf, sup };

/// Casorati curvature together with one hyperplane extremum. The hyperplane V
/// is the orthogonal complement of extremal_normal within the tangent space.
struct CasoratiResult {
  double C = 0.0;
  double extremal_value = 0.0;
  Vector extremal_normal;
  ExtremumMode mode = ExtremumMode::inf;
  std::optional<double> delta_value;  ///< set by the delta computations
};

struct DeltaC {
  double delta = 0.0;
  enum class Variant { low, high } variant = Variant::low;
};

struct NormalizedDeltaC {
  double deltaC = 0.0;
  double deltaC_hat = 0.0;
};

struct ChenDelta {
  double delta = 0.0;
  Matrix plane;  ///< n x 2 orthonormal argmin plane, tangent coordinates
};

struct PlaneData {
  std::array<double, 3> beta = {0.0, 0.0, 0.0};
  double trace_m_perp = 0.0;  ///< trace(M) minus the restriction of M to the plane
};

struct Lemma1Result {
  double a_star = 0.0;  ///< the scalar solving the constraint for the given a
  double lhs = 0.0;     ///< 2 sum_{i<j<=k} a_i a_j
  bool holds = false;
  bool equality = false;
};

struct Lemma2Result {
  double zeta = 0.0;
  double bound = 0.0;  ///< mu^2 with mu = (sum x_i)/2
  bool holds = false;
  bool equality = false;
};

MeanCurvature mean_curvature(const SubmanifoldPoint& point);

/// C = (1/n) sum_a ||h^a||_F^2.
double casorati_C(const SubmanifoldPoint& point);

/// C(V) for an orthonormal subspace basis (n x r, r >= 2), via the congruence
/// transform of the h components.
double casorati_CV(const SubmanifoldPoint& point, const Matrix& basis);

/// C of the hyperplane orthogonal to unit normal u (closed form).
double hyperplane_casorati(const SubmanifoldPoint& point, const Vector& u);

/// Multi-start projected-gradient extremization of C(V) over tangent
/// hyperplanes (64 seeded starts, deterministic given the seed).
CasoratiResult hyperplane_extrema(const SubmanifoldPoint& point, ExtremumMode mode,
                                  std::uint64_t seed);

/// Generalized normalized delta-Casorati curvature for parameter r > 0.
/// Below r = n^2 - n the inf branch applies, above it the sup branch; at the
/// boundary both degenerate to r*C.
DeltaC delta_C_generalized(const SubmanifoldPoint& point, double r, std::uint64_t seed);

/// Extremum record for a given r: the branch-appropriate hyperplane extremum
/// together with the resulting delta value.
CasoratiResult casorati_result(const SubmanifoldPoint& point, double r, std::uint64_t seed);

NormalizedDeltaC delta_C_normalized(const SubmanifoldPoint& point, std::uint64_t seed);

/// Chen invariant tau - inf K over 2-planes, via coordinate-pair enumeration
/// plus multi-start optimization on orthonormal pairs.
ChenDelta chen_delta(const SubmanifoldPoint& point, std::uint64_t seed);

/// beta_k and the complementary M-trace for an orthonormal plane (n x 2).
PlaneData plane_data(const SubmanifoldPoint& point, const Matrix& plane);

/// Chen's algebraic lemma: with a_star solving
/// (sum a_i)^2 = (n-k+1)(sum a_i^2 + a_star), checks 2 sum_{i<j<=k} a_i a_j >= a_star.
Lemma1Result lemma1_check(std::span<const double> a, int k);

/// zeta(x) = x_1 sum_{i>=2} x_i <= mu^2 where 2 mu = sum x_i.
Lemma2Result lemma2_bound(std::span<const double> x);

}  // namespace cclab
