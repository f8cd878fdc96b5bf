#pragma once

#include <array>
#include <vector>

#include "cclab/quat_structure.hpp"

namespace cclab {

/// Quaternionic space form model: a structure on R^{4m} plus the curvature
/// parameter c (the quaternionic-plane sectional curvature is 4c).
struct AmbientModel {
  QuaternionicStructure structure;
  double c = 0.0;
};

/// Complete pointwise submanifold datum: orthonormal tangent/normal frames,
/// second fundamental form components h[alpha](i,j), and the connection
/// deformation tensor M restricted to the tangent space.
///
/// h is indexed by normal direction alpha (0-based, codim entries of n x n
/// symmetric matrices). M is n x n symmetric. Frames are stored columnwise
/// in ambient coordinates.
struct SubmanifoldPoint {
  AmbientModel ambient;
  int n = 0;             ///< submanifold dimension, 2 <= n < 4m
  Matrix tangent_frame;  ///< 4m x n
  Matrix normal_frame;   ///< 4m x (4m - n)
  std::vector<Matrix> h; ///< codim matrices, each n x n
  Matrix M;              ///< n x n

  int ambient_dim() const { return ambient.structure.dim; }
  int codim() const { return ambient_dim() - n; }
};

/// Tangential/normal decomposition of the structure maps restricted to the
/// tangent space: psi_k e_i = sum_j (P_k)_{ji} e_j + sum_a (F_k)_{ai} e_a.
struct TangencyData {
  std::array<Matrix, 3> P;        ///< n x n, skew-symmetric
  std::array<Matrix, 3> F;        ///< codim x n
  std::array<double, 3> normP2;   ///< ||P_k||_F^2, in [0, n]

  double sumP2() const { return normP2[0] + normP2[1] + normP2[2]; }
};

struct PointDiagnostics {
  double frame_gram_residual = 0.0;  ///< max |G - I| over the combined frame
  double h_symmetry_residual = 0.0;
  double M_symmetry_residual = 0.0;
  bool dims_ok = false;
  bool pass = false;  ///< dims_ok and all residuals <= 1e-10
};

/// Modified Gram-Schmidt on the columns. Throws on rank deficiency
/// (pivot threshold 1e-10).
Matrix orthonormalize(const Matrix& vectors);

/// Deterministic orthonormal completion of an orthonormal tangent frame,
/// seeded from the canonical basis in index order.
Matrix complete_normal_frame(const QuaternionicStructure& Q, const Matrix& tangent_frame);

TangencyData tangency_decomposition(const SubmanifoldPoint& point);

PointDiagnostics validate_point(const SubmanifoldPoint& point);

/// Throws PreconditionError when validate_point fails.
void require_valid(const SubmanifoldPoint& point);

}  // namespace cclab
