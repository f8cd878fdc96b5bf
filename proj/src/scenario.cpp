#include "cclab/scenario.hpp"

#include <cmath>
#include <random>

namespace cclab {

namespace {

std::vector<Matrix> build_h(const HSpec& spec, int n, int codim, std::mt19937_64& rng) {
  std::vector<Matrix> h(codim, Matrix::Zero(n, n));
  switch (spec.kind) {
    case HSpec::Kind::zero:
      break;
    case HSpec::Kind::umbilical:
      for (int a = 0; a < codim && a < static_cast<int>(spec.lambda.size()); ++a) {
        h[a] = spec.lambda[a] * Matrix::Identity(n, n);
      }
      break;
    case HSpec::Kind::quasi_umbilical:
      return make_quasi_umbilical_h(n, codim, spec.u, spec.r);
    case HSpec::Kind::explicit_values: {
      if (static_cast<int>(spec.values.size()) != codim) {
        throw PreconditionError("explicit h: expected " + std::to_string(codim) +
                                " normal components, got " + std::to_string(spec.values.size()));
      }
      for (int a = 0; a < codim; ++a) {
        const Matrix& ha = spec.values[a];
        if (ha.rows() != n || ha.cols() != n) {
          throw PreconditionError("explicit h: component " + std::to_string(a) + " is not " +
                                  std::to_string(n) + "x" + std::to_string(n));
        }
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            if (ha(i, j) != ha(j, i)) {
              throw PreconditionError("explicit h: h[" + std::to_string(a) + "][" +
                                      std::to_string(i) + "][" + std::to_string(j) +
                                      "] != h[" + std::to_string(a) + "][" + std::to_string(j) +
                                      "][" + std::to_string(i) + "]");
            }
          }
        }
        h[a] = ha;
      }
      break;
    }
    case HSpec::Kind::random: {
      std::uniform_real_distribution<double> unif(-spec.scale, spec.scale);
      for (int a = 0; a < codim; ++a) {
        for (int i = 0; i < n; ++i) {
          for (int j = i; j < n; ++j) {
            const double v = unif(rng);
            h[a](i, j) = v;
            h[a](j, i) = v;
          }
        }
      }
      break;
    }
  }
  return h;
}

Matrix build_M(const MSpec& spec, int n, std::mt19937_64& rng) {
  switch (spec.kind) {
    case MSpec::Kind::zero:
      return Matrix::Zero(n, n);
    case MSpec::Kind::scaled_identity:
      return spec.s * Matrix::Identity(n, n);
    case MSpec::Kind::explicit_values: {
      if (spec.values.rows() != n || spec.values.cols() != n) {
        throw PreconditionError("explicit M: expected " + std::to_string(n) + "x" +
                                std::to_string(n));
      }
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (spec.values(i, j) != spec.values(j, i)) {
            throw PreconditionError("explicit M: M[" + std::to_string(i) + "][" +
                                    std::to_string(j) + "] != M[" + std::to_string(j) + "][" +
                                    std::to_string(i) + "]");
          }
        }
      }
      return spec.values;
    }
    case MSpec::Kind::random: {
      std::uniform_real_distribution<double> unif(-spec.scale, spec.scale);
      Matrix M(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          const double v = unif(rng);
          M(i, j) = v;
          M(j, i) = v;
        }
      }
      return M;
    }
  }
  return Matrix::Zero(n, n);
}

SubmanifoldPoint assemble(const ScenarioSpec& spec, Matrix tangent) {
  SubmanifoldPoint p;
  p.ambient.structure = build_standard(spec.m);
  p.ambient.c = spec.c;
  p.n = spec.n;
  p.tangent_frame = std::move(tangent);
  p.normal_frame = complete_normal_frame(p.ambient.structure, p.tangent_frame);
  std::mt19937_64 rng(spec.seed);
  p.h = build_h(spec.h, spec.n, p.codim(), rng);
  p.M = build_M(spec.M, spec.n, rng);
  return p;
}

void check_tangency_norm(const SubmanifoldPoint& p, double expected) {
  const TangencyData t = tangency_decomposition(p);
  for (int k = 0; k < 3; ++k) {
    if (std::abs(t.normP2[k] - expected) > 1e-10) {
      throw PreconditionError("structured frame failed its ||P_k||^2 postcondition");
    }
  }
}

}  // namespace

std::vector<Matrix> make_quasi_umbilical_h(int n, int codim, double u, double r) {
  if (!(r > 0.0) || codim < 1) {
    throw PreconditionError("make_quasi_umbilical_h: requires r > 0 and codim >= 1");
  }
  std::vector<Matrix> h(codim, Matrix::Zero(n, n));
  h[0] = u * Matrix::Identity(n, n);
  h[0](n - 1, n - 1) = n * (n - 1.0) / r * u;
  return h;
}

SubmanifoldPoint make_invariant_point(const ScenarioSpec& spec) {
  if (spec.n % 4 != 0 || spec.n < 4) {
    throw PreconditionError("make_invariant_point: n must be a positive multiple of 4, got " +
                            std::to_string(spec.n));
  }
  if (spec.m < 1 || spec.n > 4 * spec.m) {
    throw PreconditionError("make_invariant_point: requires n <= 4m");
  }
  const int dim = 4 * spec.m;
  // Whole quaternionic blocks: for the standard structure the block of
  // e_{4b} is exactly {e_{4b}, e_{4b+1}, e_{4b+2}, e_{4b+3}}.
  Matrix tangent = Matrix::Zero(dim, spec.n);
  for (int i = 0; i < spec.n; ++i) {
    tangent(i, i) = 1.0;
  }
  if (spec.n == dim) {
    throw PreconditionError("make_invariant_point: n must be < 4m for a nonempty normal space");
  }
  SubmanifoldPoint p = assemble(spec, std::move(tangent));
  check_tangency_norm(p, spec.n);
  return p;
}

SubmanifoldPoint make_anti_invariant_point(const ScenarioSpec& spec) {
  if (spec.n < 2 || spec.n > spec.m) {
    throw PreconditionError("make_anti_invariant_point: requires 2 <= n <= m, got n=" +
                            std::to_string(spec.n) + " m=" + std::to_string(spec.m));
  }
  const int dim = 4 * spec.m;
  Matrix tangent = Matrix::Zero(dim, spec.n);
  for (int b = 0; b < spec.n; ++b) {
    tangent(4 * b, b) = 1.0;  // real axis of block b
  }
  SubmanifoldPoint p = assemble(spec, std::move(tangent));
  check_tangency_norm(p, 0.0);
  return p;
}

SubmanifoldPoint make_random_point(const ScenarioSpec& spec) {
  const int dim = 4 * spec.m;
  if (spec.n < 2 || spec.n >= dim) {
    throw PreconditionError("make_random_point: requires 2 <= n < 4m");
  }
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix raw(dim, spec.n);
  for (int j = 0; j < spec.n; ++j) {
    for (int i = 0; i < dim; ++i) {
      raw(i, j) = gauss(rng);
    }
  }
  SubmanifoldPoint p;
  p.ambient.structure = build_standard(spec.m);
  p.ambient.c = spec.c;
  p.n = spec.n;
  p.tangent_frame = orthonormalize(raw);
  p.normal_frame = complete_normal_frame(p.ambient.structure, p.tangent_frame);
  p.h = build_h(spec.h, spec.n, p.codim(), rng);
  p.M = build_M(spec.M, spec.n, rng);
  return p;
}

SubmanifoldPoint make_point(const ScenarioSpec& spec) {
  switch (spec.kind) {
    case ScenarioSpec::Kind::invariant:
      return make_invariant_point(spec);
    case ScenarioSpec::Kind::anti_invariant:
      return make_anti_invariant_point(spec);
    case ScenarioSpec::Kind::random:
      return make_random_point(spec);
    case ScenarioSpec::Kind::fixture:
      return fixture(spec.fixture_name);
  }
  throw PreconditionError("make_point: unknown scenario kind");
}

ScenarioSpec fixture_spec(const std::string& name) {
  ScenarioSpec s;
  s.kind = ScenarioSpec::Kind::invariant;
  s.id = name;
  s.n = 4;
  s.m = 2;
  s.c = 1.0;
  s.seed = 0;
  if (name == "S0") {
    return s;
  }
  if (name == "S1") {
    s.h.kind = HSpec::Kind::umbilical;
    s.h.lambda = {1.0};
    return s;
  }
  if (name == "S2") {
    s.M.kind = MSpec::Kind::scaled_identity;
    s.M.s = 0.1;
    return s;
  }
  throw PreconditionError("unknown fixture '" + name + "'");
}

SubmanifoldPoint fixture(const std::string& name) {
  return make_point(fixture_spec(name));
}

std::vector<std::string> fixture_names() {
  return {"S0", "S1", "S2"};
}

}  // namespace cclab
