#pragma once

#include "cclab/invariants.hpp"

namespace cclab {

enum class EqualityCase { totally_geodesic, totally_umbilical, quasi_umbilical, none };

struct EqualityClass {
  EqualityCase kind = EqualityCase::none;
  double r = 0.0;  ///< valid only for quasi_umbilical
};

std::string to_string(const EqualityClass& ec);

/// Whether the check is an upper bound (lhs <= rhs) or lower bound (lhs >= rhs).
enum class BoundKind { upper, lower };

/// One verified inequality: holds when slack >= -tol * scale, equality when
/// |slack| <= tol * scale, with tol = 1e-8 and scale = max(|lhs|, |rhs|, 1).
/// slack is the signed margin: rhs - lhs for upper bounds, lhs - rhs for
/// lower bounds, so a satisfied check always has slack >= 0.
struct InequalityReport {
  std::string name;
  BoundKind bound = BoundKind::upper;
  double lhs = 0.0;
  double rhs_canonical = 0.0;
  std::optional<double> rhs_variant;  ///< where statement and proof versions differ
  double slack = 0.0;
  bool holds = false;
  bool equality = false;
  EqualityClass equality_case;
  std::optional<bool> invariance_proxy;  ///< structural-side condition, bound reports only
};

/// Spectrum of the quadratic-form Hessian block driving the Casorati bound.
struct HessianSpectrum {
  int n = 0;
  double r = 0.0;
  Matrix H1;
  std::vector<double> eigenvalues;        ///< ascending
  std::vector<double> paper_eigenvalues;  ///< ascending closed-form values
  bool psd = false;
  int zero_multiplicity = 0;
  bool matches_paper = false;
};

/// Scalar curvature bound: tau against the mean-curvature / structure bound.
/// The slack equals (||h||^2 - n ||H||^2) / 2.
InequalityReport check_A1(const SubmanifoldPoint& point);

/// Ricci curvature bound for a unit tangent vector X (tangent or ambient
/// coordinates).
InequalityReport check_A2(const SubmanifoldPoint& point, const Vector& X);

/// tau - K(plane) bound. Canonical RHS from the derivation chain; the
/// statement's printed bracket is reported as rhs_variant.
InequalityReport check_A3(const SubmanifoldPoint& point, const Matrix& plane);

/// Chen invariant bounds for c > 0 (A4) and c < 0 (A5). The plane supplies
/// the complementary M-trace; invariance_proxy records whether the structural
/// side condition holds at the argmin plane. The overloads without a plane use
/// the argmin plane itself.
InequalityReport check_A4(const SubmanifoldPoint& point, const Matrix& plane, std::uint64_t seed);
InequalityReport check_A5(const SubmanifoldPoint& point, const Matrix& plane, std::uint64_t seed);
InequalityReport check_A4(const SubmanifoldPoint& point, std::uint64_t seed);
InequalityReport check_A5(const SubmanifoldPoint& point, std::uint64_t seed);

/// Generalized normalized delta-Casorati bound at parameter r. The slack
/// equals the extremal value of quadratic_T over hyperplanes.
InequalityReport check_B1(const SubmanifoldPoint& point, double r, std::uint64_t seed);

/// Normalized delta-Casorati bounds (the r = n(n-1)/2 and r = 2n(n-1)
/// specializations divided by n(n-1)).
std::pair<InequalityReport, InequalityReport> check_corollary_11(const SubmanifoldPoint& point,
                                                                 std::uint64_t seed);

/// The quadratic form T at parameter r and the hyperplane orthogonal to u.
double quadratic_T(const SubmanifoldPoint& point, double r, const Vector& u);

HessianSpectrum hessian_spectrum(int n, double r);

/// Pointwise classification from the shape operators. When r is provided the
/// quasi-umbilical pattern must match that specific r.
EqualityClass detect_equality_case(const SubmanifoldPoint& point,
                                   std::optional<double> r = std::nullopt);

}  // namespace cclab
