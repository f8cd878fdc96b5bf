#include "cclab/inequalities.hpp"

#include <algorithm>
#include <cmath>

namespace cclab {

namespace {

constexpr double kRelTol = 1e-8;

// Shared per-point quantities for the checkers.
struct Context {
  explicit Context(const SubmanifoldPoint& point)
      : p(point), ic(point), mc(mean_curvature(point)) {
    n = p.n;
    c = p.ambient.c;
    sumP2 = ic.tangency().sumP2();
    m_M = ic.trace_M();
    bracket = (n - 1.0) + 3.0 * sumP2 / n;  // tau_prime / (c n), kept explicit for c = 0
    tau_pp = c * bracket * (n - 2.0 * m_M * (n - 1.0));
    h2 = 0.0;
    for (const Matrix& ha : p.h) h2 += ha.squaredNorm();
    tau = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        tau += ic.R(i, j, j, i);
      }
    }
  }

  const SubmanifoldPoint& p;
  InducedCurvature ic;
  MeanCurvature mc;
  int n;
  double c, sumP2, m_M, bracket, tau_pp, h2, tau;
};

void finalize(InequalityReport& r, BoundKind kind = BoundKind::upper) {
  r.bound = kind;
  r.slack = (kind == BoundKind::upper) ? r.rhs_canonical - r.lhs : r.lhs - r.rhs_canonical;
  const double scale = std::max({std::abs(r.lhs), std::abs(r.rhs_canonical), 1.0});
  r.holds = r.slack >= -kRelTol * scale;
  r.equality = std::abs(r.slack) <= kRelTol * scale;
}

}  // namespace

std::string to_string(const EqualityClass& ec) {
  switch (ec.kind) {
    case EqualityCase::totally_geodesic:
      return "totally_geodesic";
    case EqualityCase::totally_umbilical:
      return "totally_umbilical";
    case EqualityCase::quasi_umbilical: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "quasi_umbilical(r=%g)", ec.r);
      return buf;
    }
    case EqualityCase::none:
      return "none";
  }
  return "none";
}

InequalityReport check_A1(const SubmanifoldPoint& point) {
  Context ctx(point);
  InequalityReport r;
  r.name = "A1";
  r.lhs = ctx.tau;
  const double n = ctx.n;
  r.rhs_canonical = ((n - 1.0) / 2.0) *
                    (n * ctx.mc.norm2 +
                     ctx.c * ctx.bracket * (n - 2.0 * ctx.m_M * (n - 1.0)) / (n - 1.0));
  finalize(r);
  r.equality_case = detect_equality_case(point);
  return r;
}

InequalityReport check_A2(const SubmanifoldPoint& point, const Vector& X) {
  Context ctx(point);
  const int n = ctx.n;

  Vector x;
  if (X.size() == n) {
    x = X;
  } else if (X.size() == point.ambient_dim()) {
    x = point.tangent_frame.transpose() * X;
    if ((X - point.tangent_frame * x).norm() > 1e-10) {
      throw PreconditionError("check_A2: X is not tangent");
    }
  } else {
    throw PreconditionError("check_A2: X must have length n or 4m");
  }
  if (std::abs(x.norm() - 1.0) > 1e-10) {
    throw PreconditionError("check_A2: X must be unit");
  }

  double sumPX2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    sumPX2 += (ctx.ic.tangency().P[k] * x).squaredNorm();
  }

  InequalityReport r;
  r.name = "A2";
  r.lhs = ricci(point, x);
  r.rhs_canonical = ctx.c * ((n - 1.0) + 3.0 * sumPX2) -
                    ctx.c * ctx.bracket * (ctx.m_M + (n - 2.0) * x.dot(point.M * x)) +
                    n * n * ctx.mc.norm2 / 4.0;
  finalize(r);
  r.equality_case = detect_equality_case(point);
  return r;
}

InequalityReport check_A3(const SubmanifoldPoint& point, const Matrix& plane) {
  Context ctx(point);
  const double n = ctx.n;
  if (ctx.n < 3) {
    throw PreconditionError("check_A3: requires n >= 3");
  }
  const PlaneData pd = plane_data(point, plane);  // validates the plane
  const double K = ctx.ic.K_orthonormal(plane.col(0), plane.col(1));
  const double sum_beta = pd.beta[0] + pd.beta[1] + pd.beta[2];
  const double H_term = n * n * (n - 2.0) / (2.0 * (n - 1.0)) * ctx.mc.norm2;

  InequalityReport r;
  r.name = "A3";
  r.lhs = ctx.tau - K;
  r.rhs_canonical = H_term + 0.5 * ctx.tau_pp - ctx.c * (1.0 + 3.0 * sum_beta) -
                    ctx.c * ctx.bracket * (pd.trace_m_perp - ctx.m_M);
  // Statement form: the M terms folded into one bracket.
  r.rhs_variant = H_term +
                  0.5 * ctx.c * ctx.bracket * (n + 2.0 * ctx.m_M * n - 2.0 * pd.trace_m_perp) -
                  ctx.c * (1.0 + 3.0 * sum_beta);
  finalize(r);
  r.equality_case = detect_equality_case(point);
  return r;
}

namespace {

InequalityReport chen_bound(const SubmanifoldPoint& point, const Matrix* plane_arg,
                            std::uint64_t seed, bool projective) {
  Context ctx(point);
  const double n = ctx.n;
  if (projective && !(ctx.c > 0.0)) {
    throw PreconditionError("check_A4: requires c > 0");
  }
  if (!projective && !(ctx.c < 0.0)) {
    throw PreconditionError("check_A5: requires c < 0");
  }
  if (ctx.n < 3) {
    throw PreconditionError("chen bound: requires n >= 3");
  }

  const ChenDelta cd = chen_delta(point, seed);
  const Matrix& plane = plane_arg ? *plane_arg : cd.plane;
  const PlaneData pd = plane_data(point, plane);
  const double factor = projective ? (n + 8.0) : (n - 1.0);
  const double H_term = n * n * (n - 2.0) / (2.0 * (n - 1.0)) * ctx.mc.norm2;

  InequalityReport r;
  r.name = projective ? "A4" : "A5";
  r.lhs = cd.delta;
  r.rhs_canonical =
      H_term +
      0.5 * ctx.c * factor * (n + 2.0 * ctx.m_M * n - 2.0 * pd.trace_m_perp) - ctx.c;
  // Proof-consistent bracket variant.
  r.rhs_variant = H_term + 0.5 * ctx.c * factor * (n - 2.0 * ctx.m_M * (n - 1.0)) - ctx.c;
  finalize(r);
  r.equality_case = detect_equality_case(point);

  const PlaneData pd_argmin = plane_data(point, cd.plane);
  bool proxy = true;
  for (int k = 0; k < 3; ++k) {
    const double target = projective ? n : 0.0;
    proxy = proxy && std::abs(ctx.ic.tangency().normP2[k] - target) <= 1e-8 &&
            pd_argmin.beta[k] <= 1e-8;
  }
  r.invariance_proxy = proxy;
  return r;
}

}  // namespace

InequalityReport check_A4(const SubmanifoldPoint& point, const Matrix& plane, std::uint64_t seed) {
  return chen_bound(point, &plane, seed, true);
}

InequalityReport check_A5(const SubmanifoldPoint& point, const Matrix& plane, std::uint64_t seed) {
  return chen_bound(point, &plane, seed, false);
}

InequalityReport check_A4(const SubmanifoldPoint& point, std::uint64_t seed) {
  return chen_bound(point, nullptr, seed, true);
}

InequalityReport check_A5(const SubmanifoldPoint& point, std::uint64_t seed) {
  return chen_bound(point, nullptr, seed, false);
}

InequalityReport check_B1(const SubmanifoldPoint& point, double r_param, std::uint64_t seed) {
  Context ctx(point);
  const double n = ctx.n;
  if (ctx.n < 3) {
    throw PreconditionError("check_B1: requires n >= 3");
  }
  const DeltaC dc = delta_C_generalized(point, r_param, seed);

  InequalityReport r;
  r.name = "B1";
  r.lhs = dc.delta;
  r.rhs_canonical = n * (n - 1.0) * (2.0 * ctx.tau / (n * (n - 1.0))) - ctx.tau_pp;
  finalize(r, BoundKind::lower);
  r.equality_case = detect_equality_case(point, r_param);
  return r;
}

std::pair<InequalityReport, InequalityReport> check_corollary_11(const SubmanifoldPoint& point,
                                                                 std::uint64_t seed) {
  Context ctx(point);
  const double n = ctx.n;
  if (ctx.n < 3) {
    throw PreconditionError("check_corollary_11: requires n >= 3");
  }
  const NormalizedDeltaC nd = delta_C_normalized(point, seed);
  const double rhs = 2.0 * ctx.tau / (n * (n - 1.0)) - ctx.tau_pp / (n * (n - 1.0));

  InequalityReport lo;
  lo.name = "COR";
  lo.lhs = nd.deltaC;
  lo.rhs_canonical = rhs;
  finalize(lo, BoundKind::lower);
  lo.equality_case = detect_equality_case(point, n * (n - 1.0) / 2.0);

  InequalityReport hi;
  hi.name = "COR_hat";
  hi.lhs = nd.deltaC_hat;
  hi.rhs_canonical = rhs;
  finalize(hi, BoundKind::lower);
  hi.equality_case = detect_equality_case(point, 2.0 * n * (n - 1.0));
  return {lo, hi};
}

double quadratic_T(const SubmanifoldPoint& point, double r, const Vector& u) {
  if (!(r > 0.0)) {
    throw PreconditionError("quadratic_T: r must be positive");
  }
  Context ctx(point);
  const double n = ctx.n;
  const double C = ctx.h2 / n;
  const double CL = hyperplane_casorati(point, u);
  return r * C + (n - 1.0) * (n + r) * (n * n - n - r) / (r * n) * CL - 2.0 * ctx.tau +
         ctx.tau_pp;
}

HessianSpectrum hessian_spectrum(int n, double r) {
  if (n < 3 || !(r > 0.0)) {
    throw PreconditionError("hessian_spectrum: requires n >= 3 and r > 0");
  }
  HessianSpectrum s;
  s.n = n;
  s.r = r;
  s.H1 = Matrix::Constant(n, n, -2.0);
  const double diag = 2.0 * (n - 1.0) * (n + r) / r - 2.0;
  for (int i = 0; i + 1 < n; ++i) {
    s.H1(i, i) = diag;
  }
  s.H1(n - 1, n - 1) = 2.0 * r / n;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(s.H1);
  s.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);

  s.paper_eigenvalues = {0.0, 2.0 * ((n - 1.0) * n * n + r * r) / (r * n)};
  for (int i = 0; i < n - 2; ++i) {
    s.paper_eigenvalues.push_back(2.0 * (n - 1.0) * (n + r) / r);
  }
  std::sort(s.paper_eigenvalues.begin(), s.paper_eigenvalues.end());

  const double scale = std::max(1.0, std::abs(s.eigenvalues.back()));
  s.psd = s.eigenvalues.front() >= -1e-10 * scale;
  s.zero_multiplicity = static_cast<int>(
      std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                    [scale](double v) { return std::abs(v) <= 1e-9 * scale; }));
  s.matches_paper = true;
  for (int i = 0; i < n; ++i) {
    if (std::abs(s.eigenvalues[i] - s.paper_eigenvalues[i]) > 1e-9 * scale) {
      s.matches_paper = false;
      break;
    }
  }
  return s;
}

EqualityClass detect_equality_case(const SubmanifoldPoint& point, std::optional<double> r) {
  require_valid(point);
  const int n = point.n;

  double h2 = 0.0;
  double max_norm = 0.0;
  int principal = -1;
  for (int a = 0; a < point.codim(); ++a) {
    const double norm = point.h[a].norm();
    h2 += norm * norm;
    if (norm > max_norm) {
      max_norm = norm;
      principal = a;
    }
  }
  if (std::sqrt(h2) <= 1e-10) {
    return {EqualityCase::totally_geodesic, 0.0};
  }

  const double scale = max_norm;
  double umbilical_residual = 0.0;
  for (const Matrix& ha : point.h) {
    const Matrix traceless = ha - (ha.trace() / n) * Matrix::Identity(n, n);
    umbilical_residual = std::max(umbilical_residual, traceless.norm());
  }
  if (umbilical_residual <= 1e-8 * scale) {
    return {EqualityCase::totally_umbilical, 0.0};
  }

  // Quasi-umbilical pattern: one shape operator with eigenvalues
  // {u x (n-1), n(n-1)/r * u}, every other shape operator zero.
  double rest = 0.0;
  for (int a = 0; a < point.codim(); ++a) {
    if (a != principal) rest += point.h[a].squaredNorm();
  }
  if (std::sqrt(rest) > 1e-8 * scale) {
    return {EqualityCase::none, 0.0};
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(point.h[principal]);
  const Vector eig = solver.eigenvalues();
  const double eig_scale = std::max(std::abs(eig[0]), std::abs(eig[n - 1]));
  for (int odd_pos : {0, n - 1}) {
    double lo = odd_pos == 0 ? eig[1] : eig[0];
    double hi = odd_pos == 0 ? eig[n - 1] : eig[n - 2];
    if (std::abs(hi - lo) > 1e-8 * eig_scale) continue;  // the n-1 block must be constant
    double u_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i != odd_pos) u_sum += eig[i];
    }
    const double u = u_sum / (n - 1);
    const double v = eig[odd_pos];
    if (std::abs(u) <= 1e-12 * std::max(1.0, eig_scale) || u * v <= 0.0) continue;
    const double r_implied = n * (n - 1.0) * u / v;
    if (r) {
      if (std::abs(v - n * (n - 1.0) / *r * u) <= 1e-8 * std::max(std::abs(v), 1e-300)) {
        return {EqualityCase::quasi_umbilical, *r};
      }
    } else {
      return {EqualityCase::quasi_umbilical, r_implied};
    }
  }
  return {EqualityCase::none, 0.0};
}

}  // namespace cclab
