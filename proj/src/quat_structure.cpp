#include "cclab/quat_structure.hpp"

#include <algorithm>

namespace cclab {

double StructureDiagnostics::max_residual() const {
  return std::max({j_squared, cyclic, anticommute, orthogonality, skewness});
}

QuaternionicStructure build_standard(int m) {
  if (m < 1) {
    throw PreconditionError("build_standard: m must be >= 1, got " + std::to_string(m));
  }
  const int dim = 4 * m;

  // 4x4 blocks of left multiplication by i, j, k on column quaternions
  // (a,b,c,d): i*(a,b,c,d) = (-b,a,-d,c), j* = (-c,d,a,-b), k* = (-d,-c,b,a).
  Eigen::Matrix4d b1, b2, b3;
  b1 << 0, -1, 0, 0,
        1,  0, 0, 0,
        0,  0, 0, -1,
        0,  0, 1, 0;
  b2 << 0, 0, -1, 0,
        0, 0,  0, 1,
        1, 0,  0, 0,
        0, -1, 0, 0;
  b3 << 0, 0, 0, -1,
        0, 0, -1, 0,
        0, 1,  0, 0,
        1, 0,  0, 0;

  QuaternionicStructure Q;
  Q.dim = dim;
  const std::array<Eigen::Matrix4d, 3> blocks = {b1, b2, b3};
  for (int k = 0; k < 3; ++k) {
    Q.J[k] = Matrix::Zero(dim, dim);
    for (int b = 0; b < m; ++b) {
      Q.J[k].block<4, 4>(4 * b, 4 * b) = blocks[k];
    }
  }
  return Q;
}

StructureDiagnostics verify_structure(const QuaternionicStructure& Q) {
  const int dim = Q.dim;
  for (int k = 0; k < 3; ++k) {
    if (Q.J[k].rows() != dim || Q.J[k].cols() != dim) {
      throw PreconditionError("verify_structure: J matrices must be " +
                              std::to_string(dim) + "x" + std::to_string(dim));
    }
  }

  StructureDiagnostics d;
  const Matrix I = Matrix::Identity(dim, dim);
  for (int k = 0; k < 3; ++k) {
    d.j_squared = std::max(d.j_squared, max_abs(Q.J[k] * Q.J[k] + I));
    d.orthogonality = std::max(d.orthogonality, max_abs(Q.J[k].transpose() * Q.J[k] - I));
    d.skewness = std::max(d.skewness, max_abs(Q.J[k] + Q.J[k].transpose()));
  }
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int l = (i + 2) % 3;
    d.cyclic = std::max(d.cyclic, max_abs(Q.J[i] * Q.J[j] - Q.J[l]));
    d.anticommute = std::max(d.anticommute, max_abs(Q.J[i] * Q.J[j] + Q.J[j] * Q.J[i]));
  }
  d.pass = d.max_residual() <= 1e-12;
  return d;
}

Vector apply(const QuaternionicStructure& Q, int k, const Vector& v) {
  if (k < 1 || k > 3) {
    throw PreconditionError("apply: structure index must be in 1..3, got " + std::to_string(k));
  }
  if (v.size() != Q.dim) {
    throw PreconditionError("apply: vector has size " + std::to_string(v.size()) +
                            ", expected " + std::to_string(Q.dim));
  }
  return Q.J[k - 1] * v;
}

}  // namespace cclab
