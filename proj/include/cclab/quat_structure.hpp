#pragma once

#include <array>

#include "cclab/common.hpp"

namespace cclab {

/// A local almost-quaternionic structure on R^{4m}: three anticommuting
/// orthogonal complex structures J1, J2, J3 stored as dense matrices.
///
/// Required identities (see verify_structure):
///   J_k^2 = -I,  J1 J2 = J3 (cyclically),  J_i J_j = -J_j J_i (i != j),
///   J_k orthogonal and skew-symmetric.
struct QuaternionicStructure {
  int dim = 0;              ///< ambient dimension 4m
  std::array<Matrix, 3> J;  ///< the three structure matrices
};

/// Max-abs-entry residuals of the defining identities.
struct StructureDiagnostics {
  double j_squared = 0.0;      ///< max |J_k^2 + I|
  double cyclic = 0.0;         ///< max |J_i J_{i+1} - J_{i+2}|
  double anticommute = 0.0;    ///< max |J_i J_j + J_j J_i|, i != j
  double orthogonality = 0.0;  ///< max |J_k^T J_k - I|
  double skewness = 0.0;       ///< max |J_k + J_k^T|
  bool pass = false;           ///< all residuals <= 1e-12

  double max_residual() const;
};

/// The standard structure on R^{4m}: coordinates are grouped into quadruples
/// (a,b,c,d) identified with the quaternion a + bi + cj + dk, and J1, J2, J3
/// act blockwise as left multiplication by i, j, k. All entries lie in
/// {-1, 0, 1} and every identity holds exactly.
QuaternionicStructure build_standard(int m);

StructureDiagnostics verify_structure(const QuaternionicStructure& Q);

/// J_k v for k in {1,2,3}. Norm-preserving.
Vector apply(const QuaternionicStructure& Q, int k, const Vector& v);

}  // namespace cclab
