#include "cclab/point_model.hpp"

#include <algorithm>
#include <cmath>

namespace cclab {

namespace {

constexpr double kPivotThreshold = 1e-10;

// One MGS sweep of v against the first `count` columns of basis.
void project_out(const Matrix& basis, int count, Vector& v) {
  for (int j = 0; j < count; ++j) {
    v -= basis.col(j).dot(v) * basis.col(j);
  }
}

}  // namespace

Matrix orthonormalize(const Matrix& vectors) {
  const int rows = static_cast<int>(vectors.rows());
  const int cols = static_cast<int>(vectors.cols());
  if (cols == 0 || rows == 0) {
    throw PreconditionError("orthonormalize: empty input");
  }
  Matrix out(rows, cols);
  for (int i = 0; i < cols; ++i) {
    Vector v = vectors.col(i);
    // Two projection passes keep the Gram residual near machine precision.
    project_out(out, i, v);
    project_out(out, i, v);
    const double norm = v.norm();
    if (norm <= kPivotThreshold) {
      throw PreconditionError("orthonormalize: degenerate frame, column " + std::to_string(i) +
                              " is linearly dependent (residual " + std::to_string(norm) + ")");
    }
    out.col(i) = v / norm;
  }
  return out;
}

Matrix complete_normal_frame(const QuaternionicStructure& Q, const Matrix& tangent_frame) {
  const int dim = Q.dim;
  const int n = static_cast<int>(tangent_frame.cols());
  if (tangent_frame.rows() != dim || n <= 0 || n >= dim) {
    throw PreconditionError("complete_normal_frame: tangent frame must be 4m x n with 0 < n < 4m");
  }
  if (max_abs(tangent_frame.transpose() * tangent_frame - Matrix::Identity(n, n)) > kPivotThreshold) {
    throw PreconditionError("complete_normal_frame: tangent frame is not orthonormal");
  }

  const int codim = dim - n;
  Matrix normal(dim, codim);
  int accepted = 0;
  // Sweep the canonical basis in index order; a vector survives when its
  // residual against span(tangent + accepted) exceeds the pivot threshold.
  for (int i = 0; i < dim && accepted < codim; ++i) {
    Vector v = Vector::Unit(dim, i);
    for (int pass = 0; pass < 2; ++pass) {
      v -= tangent_frame * (tangent_frame.transpose() * v);
      project_out(normal, accepted, v);
    }
    const double norm = v.norm();
    if (norm > kPivotThreshold) {
      normal.col(accepted++) = v / norm;
    }
  }
  if (accepted != codim) {
    throw PreconditionError("complete_normal_frame: canonical completion found only " +
                            std::to_string(accepted) + " of " + std::to_string(codim) +
                            " normal directions");
  }
  return normal;
}

TangencyData tangency_decomposition(const SubmanifoldPoint& point) {
  require_valid(point);
  TangencyData t;
  for (int k = 0; k < 3; ++k) {
    const Matrix JT = point.ambient.structure.J[k] * point.tangent_frame;
    t.P[k] = point.tangent_frame.transpose() * JT;  // (P_k)_{ji} = <psi_k e_i, e_j>
    t.F[k] = point.normal_frame.transpose() * JT;   // (F_k)_{ai} = <psi_k e_i, e_a>
    t.normP2[k] = t.P[k].squaredNorm();
  }
  return t;
}

PointDiagnostics validate_point(const SubmanifoldPoint& point) {
  PointDiagnostics d;
  const int dim = point.ambient_dim();
  const int n = point.n;
  const int codim = dim - n;

  d.dims_ok = dim > 0 && dim % 4 == 0 && n >= 2 && n < dim &&
              point.tangent_frame.rows() == dim && point.tangent_frame.cols() == n &&
              point.normal_frame.rows() == dim && point.normal_frame.cols() == codim &&
              static_cast<int>(point.h.size()) == codim &&
              point.M.rows() == n && point.M.cols() == n &&
              std::isfinite(point.ambient.c);
  if (d.dims_ok) {
    for (const Matrix& ha : point.h) {
      if (ha.rows() != n || ha.cols() != n) {
        d.dims_ok = false;
        break;
      }
    }
  }
  if (!d.dims_ok) {
    return d;
  }

  Matrix frame(dim, dim);
  frame << point.tangent_frame, point.normal_frame;
  d.frame_gram_residual = max_abs(frame.transpose() * frame - Matrix::Identity(dim, dim));
  for (const Matrix& ha : point.h) {
    d.h_symmetry_residual = std::max(d.h_symmetry_residual, max_abs(ha - ha.transpose()));
  }
  d.M_symmetry_residual = max_abs(point.M - point.M.transpose());

  d.pass = d.frame_gram_residual <= 1e-10 && d.h_symmetry_residual <= 1e-10 &&
           d.M_symmetry_residual <= 1e-10;
  return d;
}

void require_valid(const SubmanifoldPoint& point) {
  const PointDiagnostics d = validate_point(point);
  if (!d.pass) {
    std::string what = "invalid submanifold point:";
    if (!d.dims_ok) {
      what += " inconsistent dimensions";
    } else {
      what += " gram=" + std::to_string(d.frame_gram_residual) +
              " h_sym=" + std::to_string(d.h_symmetry_residual) +
              " M_sym=" + std::to_string(d.M_symmetry_residual);
    }
    throw PreconditionError(what);
  }
}

}  // namespace cclab
