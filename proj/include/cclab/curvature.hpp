#pragma once

#include "cclab/point_model.hpp"

namespace cclab {

/// Convention note: tau is the HALF sum over i < j of K_ij, while tau_prime
/// and tau_dprime are FULL double contractions over i != j (so a space form
/// restricted to an invariant frame has tau_prime = 2 tau when M = 0 and
/// h = 0). Both conventions are kept exactly as defined; do not mix them.
struct CurvatureSummary {
  double tau = 0.0;        ///< scalar curvature, sum over i < j of K_ij
  double rho = 0.0;        ///< 2 tau / (n(n-1))
  double tau_prime = 0.0;  ///< ambient scalar curvature (full i != j contraction)
  double tau_dprime = 0.0; ///< scalar curvature of the deformed connection
  Matrix K;                ///< n x n coordinate-plane sectional curvatures, diagonal zero
};

/// <R*(X,Y;Z), W> for the space-form curvature tensor, ambient coordinates.
double ambient_R_star(const AmbientModel& ambient, const Vector& X, const Vector& Y,
                      const Vector& Z, const Vector& W);

/// Curvature evaluator for a validated point. Precomputes the tangency data
/// and ambient scalar curvature once; all evaluations take tangent-coordinate
/// vectors (length n) or frame indices (0-based).
///
/// R is the induced curvature of the deformed connection: the tangential
/// restriction of the space-form tensor, corrected by the connection tensor M
/// and by the Gauss terms of the second fundamental form.
class InducedCurvature {
 public:
  explicit InducedCurvature(const SubmanifoldPoint& point);

  int n() const { return n_; }
  double c() const { return c_; }
  double tau_prime() const { return tau_prime_; }
  double trace_M() const { return trace_M_; }
  const TangencyData& tangency() const { return tangency_; }
  const std::vector<Matrix>& h() const { return h_; }
  const Matrix& M() const { return M_; }

  /// Tangential restriction of the ambient space-form tensor.
  double R_star(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const;

  /// Curvature of the ambient deformed connection, restricted to the tangent space.
  double R_dprime(int i, int j, int k, int l) const;
  double R_dprime(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const;

  /// Induced curvature (Gauss-corrected R_dprime).
  double R(int i, int j, int k, int l) const;
  double R(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const;

  /// Sectional curvature of the plane spanned by an orthonormal pair.
  double K_orthonormal(const Vector& u, const Vector& w) const;

  /// Sectional curvature of the plane spanned by two independent tangent
  /// vectors (denominator |u|^2 |v|^2 - <u,v>^2).
  double sectional(const Vector& u, const Vector& v) const;

 private:
  void check_index(int i) const;

  int n_ = 0;
  int codim_ = 0;
  double c_ = 0.0;
  double tau_prime_ = 0.0;
  double trace_M_ = 0.0;
  TangencyData tangency_;
  std::vector<Matrix> h_;
  Matrix M_;
};

/// Closed form c{n(n-1) + 3 sum_k ||P_k||^2}.
double tau_prime(const SubmanifoldPoint& point);

/// The same quantity by direct double contraction of the ambient tensor over
/// the tangent frame (the identity-check partner of tau_prime).
double tau_prime_contracted(const SubmanifoldPoint& point);

double connection_R_dprime(const SubmanifoldPoint& point, int i, int j, int k, int l);
double induced_R(const SubmanifoldPoint& point, int i, int j, int k, int l);

/// Sectional curvature of a plane given by two tangent-coordinate vectors.
double sectional_K(const SubmanifoldPoint& point, const Vector& u, const Vector& v);

double scalar_tau(const SubmanifoldPoint& point);
double normalized_rho(const SubmanifoldPoint& point);

/// Ricci curvature of a unit tangent vector X, via a deterministic
/// Gram-Schmidt frame completion seeded by the stored frame. X may be given
/// in tangent coordinates (length n) or ambient coordinates (length 4m, with
/// projection residual <= 1e-10).
double ricci(const SubmanifoldPoint& point, const Vector& X);

/// Ricci tensor of the deformed connection on frame indices, and its trace.
double S_dprime(const SubmanifoldPoint& point, int i, int j);
double tau_dprime(const SubmanifoldPoint& point);

CurvatureSummary curvature_summary(const SubmanifoldPoint& point);

}  // namespace cclab
