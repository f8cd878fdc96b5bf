#include "cclab/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace cclab {

namespace {

constexpr int kStarts = 64;
constexpr int kMaxIters = 600;
constexpr double kConvergence = 1e-12;

// Flip so the first non-negligible component is positive; used for
// deterministic tie-breaking between equal-value optima.
Vector canonical_sign(Vector u) {
  for (int i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) > 1e-12) {
      if (u[i] < 0) u = -u;
      break;
    }
  }
  return u;
}

bool lex_less(const Vector& a, const Vector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - 1e-15) return true;
    if (a[i] > b[i] + 1e-15) return false;
  }
  return false;
}

Vector random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector u(n);
  double norm = 0.0;
  while (norm < 1e-8) {
    for (int i = 0; i < n; ++i) u[i] = gauss(rng);
    norm = u.norm();
  }
  return u / norm;
}

// Objective for the hyperplane extremization: C of the hyperplane u-perp.
struct HyperplaneObjective {
  const std::vector<Matrix>* h;
  double h2;  // sum_a ||h^a||_F^2
  int n;

  double value(const Vector& u) const {
    double acc = h2;
    for (const Matrix& ha : *h) {
      const Vector hu = ha * u;
      const double uhu = u.dot(hu);
      acc += -2.0 * hu.squaredNorm() + uhu * uhu;
    }
    return acc / (n - 1);
  }

  Vector gradient(const Vector& u) const {
    Vector g = Vector::Zero(n);
    for (const Matrix& ha : *h) {
      const Vector hu = ha * u;
      g += -4.0 * (ha * hu) + 4.0 * u.dot(hu) * hu;
    }
    return g / (n - 1);
  }
};

// Projected gradient on the unit sphere with Armijo backtracking.
// sign = +1 minimizes, -1 maximizes.
std::pair<double, Vector> sphere_descent(const HyperplaneObjective& obj, Vector u, double sign) {
  double f = sign * obj.value(u);
  for (int iter = 0; iter < kMaxIters; ++iter) {
    Vector g = sign * obj.gradient(u);
    g -= g.dot(u) * u;
    const double gnorm2 = g.squaredNorm();
    if (gnorm2 < 1e-26) break;
    double t = 1.0;
    double f_new = f;
    Vector u_new = u;
    for (int bt = 0; bt < 60; ++bt) {
      u_new = (u - t * g).normalized();
      f_new = sign * obj.value(u_new);
      if (f_new <= f - 1e-4 * t * gnorm2) break;
      t *= 0.5;
    }
    if (f_new >= f) break;
    const bool done = (f - f_new) <= kConvergence;
    u = u_new;
    f = f_new;
    if (done) break;
  }
  return {sign * f, u};
}

struct PlaneObjective {
  const InducedCurvature* ic;
  double value(const Matrix& X) const { return ic->K_orthonormal(X.col(0), X.col(1)); }

  // Euclidean gradient of K(u, w) for orthonormal columns.
  Matrix gradient(const Matrix& X) const {
    const Vector u = X.col(0);
    const Vector w = X.col(1);
    const int n = ic->n();
    Vector gu = Vector::Zero(n);
    Vector gw = Vector::Zero(n);
    for (int s = 0; s < 3; ++s) {
      const Matrix& P = ic->tangency().P[s];
      const double p = w.dot(P * u);
      gu += 6.0 * ic->c() * p * (P.transpose() * w);
      gw += 6.0 * ic->c() * p * (P * u);
    }
    const double scale = ic->tau_prime() / ic->n();
    gu -= 2.0 * scale * (ic->M() * u);
    gw -= 2.0 * scale * (ic->M() * w);
    for (const Matrix& ha : ic->h()) {
      const Vector hu = ha * u;
      const Vector hw = ha * w;
      const double huu = u.dot(hu);
      const double hww = w.dot(hw);
      const double huw = u.dot(hw);
      gu += 2.0 * hww * hu - 2.0 * huw * hw;
      gw += 2.0 * huu * hw - 2.0 * huw * hu;
    }
    Matrix G(n, 2);
    G.col(0) = gu;
    G.col(1) = gw;
    return G;
  }
};

// Thin QR re-orthonormalization with positive pivots (deterministic).
Matrix retract(Matrix X) {
  X.col(0).normalize();
  X.col(1) -= X.col(0).dot(X.col(1)) * X.col(0);
  const double norm = X.col(1).norm();
  if (norm < 1e-14) {
    // Columns collapsed; nudge along the first coordinate not spanned.
    Vector w = Vector::Unit(X.rows(), 0);
    w -= X.col(0).dot(w) * X.col(0);
    if (w.norm() < 1e-14) {
      w = Vector::Unit(X.rows(), 1);
      w -= X.col(0).dot(w) * X.col(0);
    }
    X.col(1) = w.normalized();
  } else {
    X.col(1) /= norm;
  }
  return X;
}

// Riemannian descent on orthonormal 2-frames, minimizing K.
std::pair<double, Matrix> stiefel_descent(const PlaneObjective& obj, Matrix X) {
  double f = obj.value(X);
  for (int iter = 0; iter < kMaxIters; ++iter) {
    const Matrix G = obj.gradient(X);
    const Matrix XtG = X.transpose() * G;
    const Matrix Gt = G - X * (0.5 * (XtG + XtG.transpose()));
    const double gnorm2 = Gt.squaredNorm();
    if (gnorm2 < 1e-26) break;
    double t = 1.0;
    double f_new = f;
    Matrix X_new = X;
    for (int bt = 0; bt < 60; ++bt) {
      X_new = retract(X - t * Gt);
      f_new = obj.value(X_new);
      if (f_new <= f - 1e-4 * t * gnorm2) break;
      t *= 0.5;
    }
    if (f_new >= f) break;
    const bool done = (f - f_new) <= kConvergence;
    X = X_new;
    f = f_new;
    if (done) break;
  }
  return {f, X};
}

void require_orthonormal_columns(const Matrix& basis, const char* what) {
  const int r = static_cast<int>(basis.cols());
  const double residual = max_abs(basis.transpose() * basis - Matrix::Identity(r, r));
  if (residual > 1e-8) {
    throw PreconditionError(std::string(what) + ": basis is not orthonormal (residual " +
                            std::to_string(residual) + ")");
  }
}

}  // namespace

MeanCurvature mean_curvature(const SubmanifoldPoint& point) {
  require_valid(point);
  MeanCurvature mc;
  mc.H = Vector::Zero(point.codim());
  for (int a = 0; a < point.codim(); ++a) {
    mc.H[a] = point.h[a].trace() / point.n;
  }
  mc.norm2 = mc.H.squaredNorm();
  return mc;
}

double casorati_C(const SubmanifoldPoint& point) {
  require_valid(point);
  double acc = 0.0;
  for (const Matrix& ha : point.h) {
    acc += ha.squaredNorm();
  }
  return acc / point.n;
}

double casorati_CV(const SubmanifoldPoint& point, const Matrix& basis) {
  require_valid(point);
  const int r = static_cast<int>(basis.cols());
  if (basis.rows() != point.n || r < 2) {
    throw PreconditionError("casorati_CV: basis must be n x r with r >= 2");
  }
  require_orthonormal_columns(basis, "casorati_CV");
  double acc = 0.0;
  for (const Matrix& ha : point.h) {
    acc += (basis.transpose() * ha * basis).squaredNorm();
  }
  return acc / r;
}

double hyperplane_casorati(const SubmanifoldPoint& point, const Vector& u) {
  require_valid(point);
  if (u.size() != point.n || std::abs(u.norm() - 1.0) > 1e-8) {
    throw PreconditionError("hyperplane_casorati: u must be a unit tangent-coordinate vector");
  }
  double h2 = 0.0;
  for (const Matrix& ha : point.h) h2 += ha.squaredNorm();
  HyperplaneObjective obj{&point.h, h2, point.n};
  return obj.value(u);
}

CasoratiResult hyperplane_extrema(const SubmanifoldPoint& point, ExtremumMode mode,
                                  std::uint64_t seed) {
  require_valid(point);
  const int n = point.n;
  if (n < 3) {
    throw PreconditionError("hyperplane_extrema: requires n >= 3");
  }
  double h2 = 0.0;
  for (const Matrix& ha : point.h) h2 += ha.squaredNorm();
  HyperplaneObjective obj{&point.h, h2, n};
  const double sign = (mode == ExtremumMode::inf) ? 1.0 : -1.0;

  std::mt19937_64 rng(seed);
  double best = 0.0;
  Vector best_u;
  for (int start = 0; start < kStarts; ++start) {
    const Vector u0 = (start < n) ? Vector(Vector::Unit(n, start)) : random_unit(rng, n);
    auto [value, u] = sphere_descent(obj, u0, sign);
    u = canonical_sign(u);
    if (best_u.size() == 0 || sign * value < sign * best - 1e-14 ||
        (std::abs(value - best) <= 1e-14 && lex_less(u, best_u))) {
      best = value;
      best_u = u;
    }
  }

  CasoratiResult result;
  result.C = h2 / n;
  result.extremal_value = best;
  result.extremal_normal = best_u;
  result.mode = mode;
  return result;
}

DeltaC delta_C_generalized(const SubmanifoldPoint& point, double r, std::uint64_t seed) {
  if (!(r > 0.0)) {
    throw PreconditionError("delta_C_generalized: r must be positive");
  }
  const double n = point.n;
  const double boundary = n * n - n;
  const double C = casorati_C(point);
  DeltaC out;
  if (std::abs(r - boundary) <= 1e-12) {
    out.delta = r * C;
    out.variant = DeltaC::Variant::low;
    return out;
  }
  if (r < boundary) {
    const CasoratiResult ext = hyperplane_extrema(point, ExtremumMode::inf, seed);
    out.delta = r * C + ((n - 1) * (n + r) * (boundary - r)) / (r * n) * ext.extremal_value;
    out.variant = DeltaC::Variant::low;
  } else {
    const CasoratiResult ext = hyperplane_extrema(point, ExtremumMode::sup, seed);
    out.delta = r * C - ((n - 1) * (n + r) * (r - boundary)) / (r * n) * ext.extremal_value;
    out.variant = DeltaC::Variant::high;
  }
  return out;
}

CasoratiResult casorati_result(const SubmanifoldPoint& point, double r, std::uint64_t seed) {
  if (!(r > 0.0)) {
    throw PreconditionError("casorati_result: r must be positive");
  }
  const double n = point.n;
  const ExtremumMode mode = (r > n * n - n) ? ExtremumMode::sup : ExtremumMode::inf;
  CasoratiResult out = hyperplane_extrema(point, mode, seed);
  out.delta_value = delta_C_generalized(point, r, seed).delta;
  return out;
}

NormalizedDeltaC delta_C_normalized(const SubmanifoldPoint& point, std::uint64_t seed) {
  const double n = point.n;
  const double C = casorati_C(point);
  const CasoratiResult lo = hyperplane_extrema(point, ExtremumMode::inf, seed);
  const CasoratiResult hi = hyperplane_extrema(point, ExtremumMode::sup, seed);
  NormalizedDeltaC out;
  out.deltaC = 0.5 * C + (n + 1) / (2.0 * n) * lo.extremal_value;
  out.deltaC_hat = 2.0 * C - (2.0 * n - 1) / (2.0 * n) * hi.extremal_value;
  return out;
}

ChenDelta chen_delta(const SubmanifoldPoint& point, std::uint64_t seed) {
  const int n = point.n;
  if (n < 3) {
    throw PreconditionError("chen_delta: requires n >= 3");
  }
  const InducedCurvature ic(point);
  PlaneObjective obj{&ic};

  std::mt19937_64 rng(seed);
  std::vector<Matrix> starts;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Matrix X(n, 2);
      X.col(0) = Vector::Unit(n, i);
      X.col(1) = Vector::Unit(n, j);
      starts.push_back(X);
    }
  }
  while (static_cast<int>(starts.size()) < kStarts) {
    Matrix X(n, 2);
    X.col(0) = random_unit(rng, n);
    X.col(1) = random_unit(rng, n);
    starts.push_back(retract(X));
  }

  double best = 0.0;
  Matrix best_plane;
  for (const Matrix& X0 : starts) {
    auto [value, X] = stiefel_descent(obj, X0);
    X.col(0) = canonical_sign(X.col(0));
    X.col(1) = canonical_sign(X.col(1));
    if (best_plane.size() == 0 || value < best - 1e-14 ||
        (std::abs(value - best) <= 1e-14 && lex_less(X.col(0), best_plane.col(0)))) {
      best = value;
      best_plane = X;
    }
  }

  double tau = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      tau += ic.R(i, j, j, i);
    }
  }

  ChenDelta out;
  out.delta = tau - best;
  out.plane = best_plane;
  return out;
}

PlaneData plane_data(const SubmanifoldPoint& point, const Matrix& plane) {
  require_valid(point);
  if (plane.rows() != point.n || plane.cols() != 2) {
    throw PreconditionError("plane_data: plane must be n x 2");
  }
  require_orthonormal_columns(plane, "plane_data");
  const TangencyData t = tangency_decomposition(point);
  PlaneData pd;
  for (int k = 0; k < 3; ++k) {
    // Diagonal terms of the defining sum vanish by skewness of P_k; the
    // single off-diagonal square remains.
    const double p = plane.col(1).dot(t.P[k] * plane.col(0));
    pd.beta[k] = p * p;
  }
  const Matrix restricted = plane.transpose() * point.M * plane;
  pd.trace_m_perp = point.M.trace() - restricted.trace();
  return pd;
}

Lemma1Result lemma1_check(std::span<const double> a, int k) {
  const int n = static_cast<int>(a.size());
  if (!(n > k && k >= 2)) {
    throw PreconditionError("lemma1_check: requires n > k >= 2");
  }
  double sum = 0.0, sumsq = 0.0;
  for (double v : a) {
    sum += v;
    sumsq += v * v;
  }
  Lemma1Result r;
  r.a_star = sum * sum / (n - k + 1) - sumsq;
  double head = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      head += a[i] * a[j];
    }
  }
  r.lhs = 2.0 * head;
  r.holds = r.lhs >= r.a_star - 1e-12;

  double head_sum = 0.0;
  for (int i = 0; i < k; ++i) head_sum += a[i];
  bool tail_matches = true;
  for (int i = k; i < n; ++i) {
    if (std::abs(a[i] - head_sum) > 1e-10) {
      tail_matches = false;
      break;
    }
  }
  r.equality = std::abs(r.lhs - r.a_star) <= 1e-10 && tail_matches;
  return r;
}

Lemma2Result lemma2_bound(std::span<const double> x) {
  if (x.size() < 2) {
    throw PreconditionError("lemma2_bound: requires at least two values");
  }
  double sum = 0.0;
  for (double v : x) sum += v;
  const double mu = sum / 2.0;
  Lemma2Result r;
  r.zeta = x[0] * (sum - x[0]);
  r.bound = mu * mu;
  r.holds = r.zeta <= r.bound + 1e-12;
  r.equality = std::abs(x[0] - mu) <= 1e-10;
  return r;
}

}  // namespace cclab
