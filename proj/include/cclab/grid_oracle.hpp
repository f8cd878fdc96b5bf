#pragma once

#include <cstdint>

#include "cclab/invariants.hpp"

namespace cclab {

/// Dense-sample verification of the multi-start optimizers. The oracle side
/// evaluates extrema by definition — C(V) through the congruence transform of
/// an explicit complement basis, K through the curvature evaluator — scans a
/// dense point set, and polishes the best sample by finite-difference descent.
/// It shares no objective or gradient code with the optimizers it checks.
struct GridComparison {
  double optimizer_value = 0.0;
  double oracle_value = 0.0;      ///< polished best grid sample
  double grid_best = 0.0;         ///< raw best grid sample
  bool within(double tol) const;  ///< |optimizer - oracle| <= tol, optimizer no worse than grid
  bool is_inf = true;
};

/// Orthonormal basis of the hyperplane orthogonal to unit u (deterministic).
Matrix hyperplane_basis(int n, const Vector& u);

/// C of the hyperplane u-perp via casorati_CV on an explicit basis.
double oracle_hyperplane_value(const SubmanifoldPoint& point, const Vector& u);

GridComparison oracle_check_hyperplane(const SubmanifoldPoint& point, ExtremumMode mode,
                                       int grid_points, std::uint64_t seed);

GridComparison oracle_check_plane_inf(const SubmanifoldPoint& point, int grid_points,
                                      std::uint64_t seed);

}  // namespace cclab
