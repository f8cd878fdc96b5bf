#include "cclab/curvature.hpp"

#include <cmath>

namespace cclab {

double ambient_R_star(const AmbientModel& ambient, const Vector& X, const Vector& Y,
                      const Vector& Z, const Vector& W) {
  const int dim = ambient.structure.dim;
  if (X.size() != dim || Y.size() != dim || Z.size() != dim || W.size() != dim) {
    throw PreconditionError("ambient_R_star: vectors must have ambient dimension " +
                            std::to_string(dim));
  }
  double acc = Y.dot(Z) * X.dot(W) - X.dot(Z) * Y.dot(W);
  for (int k = 0; k < 3; ++k) {
    const Vector JX = ambient.structure.J[k] * X;
    const Vector JY = ambient.structure.J[k] * Y;
    const Vector JZ = ambient.structure.J[k] * Z;
    acc += JY.dot(Z) * JX.dot(W) - JX.dot(Z) * JY.dot(W) - 2.0 * JX.dot(Y) * JZ.dot(W);
  }
  return ambient.c * acc;
}

InducedCurvature::InducedCurvature(const SubmanifoldPoint& point)
    : n_(point.n),
      codim_(point.codim()),
      c_(point.ambient.c),
      tangency_(tangency_decomposition(point)),  // validates the point
      h_(point.h),
      M_(point.M) {
  tau_prime_ = c_ * (static_cast<double>(n_) * (n_ - 1) + 3.0 * tangency_.sumP2());
  trace_M_ = M_.trace();
}

void InducedCurvature::check_index(int i) const {
  if (i < 0 || i >= n_) {
    throw PreconditionError("tangent frame index " + std::to_string(i) + " out of range 0.." +
                            std::to_string(n_ - 1));
  }
}

double InducedCurvature::R_star(const Vector& x, const Vector& y, const Vector& z,
                                const Vector& w) const {
  double acc = y.dot(z) * x.dot(w) - x.dot(z) * y.dot(w);
  for (int k = 0; k < 3; ++k) {
    const Vector Px = tangency_.P[k] * x;
    const Vector Py = tangency_.P[k] * y;
    const Vector Pz = tangency_.P[k] * z;
    acc += Py.dot(z) * Px.dot(w) - Px.dot(z) * Py.dot(w) - 2.0 * Px.dot(y) * Pz.dot(w);
  }
  return c_ * acc;
}

double InducedCurvature::R_dprime(int i, int j, int k, int l) const {
  check_index(i);
  check_index(j);
  check_index(k);
  check_index(l);
  const auto kron = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  double rstar = kron(j, k) * kron(i, l) - kron(i, k) * kron(j, l);
  for (int s = 0; s < 3; ++s) {
    const Matrix& P = tangency_.P[s];
    // (P_s)(row, col) = <psi_s e_col, e_row>
    rstar += P(k, j) * P(l, i) - P(k, i) * P(l, j) - 2.0 * P(j, i) * P(l, k);
  }
  rstar *= c_;
  const double corr = M_(j, k) * kron(i, l) - M_(i, k) * kron(j, l) +
                      kron(j, k) * M_(i, l) - kron(i, k) * M_(j, l);
  return rstar - (tau_prime_ / n_) * corr;
}

double InducedCurvature::R_dprime(const Vector& x, const Vector& y, const Vector& z,
                                  const Vector& w) const {
  const double corr = y.dot(M_ * z) * x.dot(w) - x.dot(M_ * z) * y.dot(w) +
                      y.dot(z) * x.dot(M_ * w) - x.dot(z) * y.dot(M_ * w);
  return R_star(x, y, z, w) - (tau_prime_ / n_) * corr;
}

double InducedCurvature::R(int i, int j, int k, int l) const {
  double gauss = 0.0;
  for (const Matrix& ha : h_) {
    gauss += ha(i, k) * ha(j, l) - ha(i, l) * ha(j, k);
  }
  return R_dprime(i, j, k, l) - gauss;
}

double InducedCurvature::R(const Vector& x, const Vector& y, const Vector& z,
                           const Vector& w) const {
  double gauss = 0.0;
  for (const Matrix& ha : h_) {
    gauss += x.dot(ha * z) * y.dot(ha * w) - x.dot(ha * w) * y.dot(ha * z);
  }
  return R_dprime(x, y, z, w) - gauss;
}

double InducedCurvature::K_orthonormal(const Vector& u, const Vector& w) const {
  double acc = 1.0;
  for (int s = 0; s < 3; ++s) {
    const double p = w.dot(tangency_.P[s] * u);
    acc += 3.0 * p * p;
  }
  acc *= c_;
  acc -= (tau_prime_ / n_) * (u.dot(M_ * u) + w.dot(M_ * w));
  for (const Matrix& ha : h_) {
    const double huw = u.dot(ha * w);
    acc += u.dot(ha * u) * w.dot(ha * w) - huw * huw;
  }
  return acc;
}

double InducedCurvature::sectional(const Vector& u, const Vector& v) const {
  if (u.size() != n_ || v.size() != n_) {
    throw PreconditionError("sectional: expected tangent-coordinate vectors of length " +
                            std::to_string(n_));
  }
  const double denom = u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
  if (denom < 1e-12) {
    throw PreconditionError("sectional: degenerate plane (denominator " +
                            std::to_string(denom) + ")");
  }
  return R(u, v, v, u) / denom;
}

double tau_prime(const SubmanifoldPoint& point) {
  const TangencyData t = tangency_decomposition(point);
  return point.ambient.c * (static_cast<double>(point.n) * (point.n - 1) + 3.0 * t.sumP2());
}

double tau_prime_contracted(const SubmanifoldPoint& point) {
  require_valid(point);
  double acc = 0.0;
  for (int i = 0; i < point.n; ++i) {
    for (int j = 0; j < point.n; ++j) {
      if (i == j) continue;
      acc += ambient_R_star(point.ambient, point.tangent_frame.col(i), point.tangent_frame.col(j),
                            point.tangent_frame.col(j), point.tangent_frame.col(i));
    }
  }
  return acc;
}

double connection_R_dprime(const SubmanifoldPoint& point, int i, int j, int k, int l) {
  return InducedCurvature(point).R_dprime(i, j, k, l);
}

double induced_R(const SubmanifoldPoint& point, int i, int j, int k, int l) {
  return InducedCurvature(point).R(i, j, k, l);
}

double sectional_K(const SubmanifoldPoint& point, const Vector& u, const Vector& v) {
  return InducedCurvature(point).sectional(u, v);
}

namespace {

double tau_from(const InducedCurvature& ic) {
  double tau = 0.0;
  const int n = ic.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      tau += ic.R(i, j, j, i);
    }
  }
  return tau;
}

// Unit tangent-coordinate representation of X; accepts tangent (length n) or
// ambient (length 4m) input.
Vector to_unit_tangent(const SubmanifoldPoint& point, const Vector& X) {
  Vector x;
  if (X.size() == point.n) {
    x = X;
  } else if (X.size() == point.ambient_dim()) {
    x = point.tangent_frame.transpose() * X;
    const double residual = (X - point.tangent_frame * x).norm();
    if (residual > 1e-10) {
      throw PreconditionError("vector is not tangent (projection residual " +
                              std::to_string(residual) + ")");
    }
  } else {
    throw PreconditionError("vector must have length n or 4m");
  }
  if (std::abs(x.norm() - 1.0) > 1e-10) {
    throw PreconditionError("vector must be unit (norm " + std::to_string(x.norm()) + ")");
  }
  return x;
}

}  // namespace

double scalar_tau(const SubmanifoldPoint& point) {
  return tau_from(InducedCurvature(point));
}

double normalized_rho(const SubmanifoldPoint& point) {
  const double n = point.n;
  return 2.0 * scalar_tau(point) / (n * (n - 1.0));
}

double ricci(const SubmanifoldPoint& point, const Vector& X) {
  const InducedCurvature ic(point);
  const Vector x = to_unit_tangent(point, X);
  const int n = point.n;
  // Deterministic completion: Gram-Schmidt over [x, e_1, ..., e_n].
  Matrix seed(n, n + 1);
  seed.col(0) = x;
  seed.block(0, 1, n, n) = Matrix::Identity(n, n);
  Matrix frame(n, n);
  frame.col(0) = x;
  int have = 1;
  for (int i = 1; i <= n && have < n; ++i) {
    Vector v = seed.col(i);
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < have; ++j) {
        v -= frame.col(j).dot(v) * frame.col(j);
      }
    }
    const double norm = v.norm();
    if (norm > 1e-10) {
      frame.col(have++) = v / norm;
    }
  }
  if (have != n) {
    throw PreconditionError("ricci: failed to complete a tangent frame");
  }
  double acc = 0.0;
  for (int j = 1; j < n; ++j) {
    acc += ic.R(x, frame.col(j), frame.col(j), x);
  }
  return acc;
}

double S_dprime(const SubmanifoldPoint& point, int i, int j) {
  const InducedCurvature ic(point);
  if (i < 0 || i >= point.n || j < 0 || j >= point.n) {
    throw PreconditionError("S_dprime: index out of range");
  }
  const double kron = (i == j) ? 1.0 : 0.0;
  const double m_M = ic.trace_M();
  return (ic.tau_prime() / point.n) *
         (kron - ((point.n - 2) * point.M(i, j) + m_M * kron));
}

double tau_dprime(const SubmanifoldPoint& point) {
  const InducedCurvature ic(point);
  const double n = point.n;
  return (ic.tau_prime() / n) * (n - 2.0 * ic.trace_M() * (n - 1.0));
}

CurvatureSummary curvature_summary(const SubmanifoldPoint& point) {
  const InducedCurvature ic(point);
  const int n = point.n;
  CurvatureSummary s;
  s.K = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double k = ic.R(i, j, j, i);
      s.K(i, j) = k;
      s.K(j, i) = k;
      s.tau += k;
    }
  }
  s.rho = 2.0 * s.tau / (static_cast<double>(n) * (n - 1));
  s.tau_prime = ic.tau_prime();
  s.tau_dprime = (ic.tau_prime() / n) * (n - 2.0 * ic.trace_M() * (n - 1.0));
  return s;
}

}  // namespace cclab
