#include <doctest.h>

#include <random>

#include "cclab/point_model.hpp"
#include "cclab/scenario.hpp"
#include "test_helpers.hpp"

using namespace cclab;

TEST_SUITE("point_model") {

TEST_CASE("orthonormalize leaves the standard basis unchanged") {
  const Matrix I = Matrix::Identity(4, 4);
  CHECK(max_abs(orthonormalize(I) - I) == 0.0);
}

TEST_CASE("orthonormalize produces an orthonormal span") {
  Matrix v(4, 2);
  v.col(0) << 1, 1, 0, 0;
  v.col(1) << 0, 1, 0, 0;
  const Matrix q = orthonormalize(v);
  CHECK(max_abs(q.transpose() * q - Matrix::Identity(2, 2)) <= 1e-12);
  // same span: original columns reconstruct from q
  CHECK((v - q * (q.transpose() * v)).norm() <= 1e-12);
}

TEST_CASE("orthonormalize rejects dependent vectors") {
  Matrix v(4, 3);
  v.col(0) << 1, 0, 0, 0;
  v.col(1) << 0, 1, 0, 0;
  v.col(2) = v.col(0) + v.col(1);
  CHECK_THROWS_AS(orthonormalize(v), PreconditionError);
}

TEST_CASE("complete_normal_frame canonical completion") {
  const QuaternionicStructure Q = build_standard(2);
  Matrix tangent = Matrix::Identity(8, 8).leftCols(4);
  const Matrix normal = complete_normal_frame(Q, tangent);
  CHECK(max_abs(normal - Matrix::Identity(8, 8).rightCols(4)) == 0.0);

  // determinism
  CHECK(max_abs(normal - complete_normal_frame(Q, tangent)) == 0.0);

  Matrix frame(8, 8);
  frame << tangent, normal;
  CHECK(max_abs(frame.transpose() * frame - Matrix::Identity(8, 8)) <= 1e-12);
}

TEST_CASE("complete_normal_frame on random frames") {
  const QuaternionicStructure Q = build_standard(3);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix raw(12, 5);
  for (int i = 0; i < raw.size(); ++i) raw.data()[i] = gauss(rng);
  const Matrix tangent = orthonormalize(raw);
  const Matrix normal = complete_normal_frame(Q, tangent);
  CHECK(normal.cols() == 7);
  Matrix frame(12, 12);
  frame << tangent, normal;
  CHECK(max_abs(frame.transpose() * frame - Matrix::Identity(12, 12)) <= 1e-12);
}

TEST_CASE("tangency of the invariant fixture") {
  const SubmanifoldPoint p = fixture("S0");
  const TangencyData t = tangency_decomposition(p);
  for (int k = 0; k < 3; ++k) {
    CHECK(t.normP2[k] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(max_abs(t.P[k] + t.P[k].transpose()) <= 1e-12);  // skew
  }
}

TEST_CASE("tangency of an anti-invariant point") {
  ScenarioSpec spec;
  spec.kind = ScenarioSpec::Kind::anti_invariant;
  spec.n = 2;
  spec.m = 2;
  spec.c = 1.0;
  const SubmanifoldPoint p = make_point(spec);
  const TangencyData t = tangency_decomposition(p);
  for (int k = 0; k < 3; ++k) {
    CHECK(t.normP2[k] <= 1e-12);
  }
}

TEST_CASE("tangency reconstruction and column norms") {
  const SubmanifoldPoint p = make_point(testutil::random_spec(3));
  const TangencyData t = tangency_decomposition(p);
  for (int k = 0; k < 3; ++k) {
    // psi_k e_i = T (P_k col i) + N (F_k col i)
    const Matrix lhs = p.ambient.structure.J[k] * p.tangent_frame;
    const Matrix rhs = p.tangent_frame * t.P[k] + p.normal_frame * t.F[k];
    CHECK(max_abs(lhs - rhs) <= 1e-10);
    // P^T P + F^T F = I columnwise
    const Matrix gram = t.P[k].transpose() * t.P[k] + t.F[k].transpose() * t.F[k];
    CHECK(max_abs(gram - Matrix::Identity(p.n, p.n)) <= 1e-10);
    CHECK(t.normP2[k] >= 0.0);
    CHECK(t.normP2[k] <= p.n + 1e-10);
  }
}

TEST_CASE("sum of structure norms is bounded by 3n with equality when invariant") {
  for (int i = 0; i < 20; ++i) {
    const SubmanifoldPoint p = make_point(testutil::random_spec(100 + i));
    const TangencyData t = tangency_decomposition(p);
    CHECK(t.sumP2() <= 3.0 * p.n + 1e-9);
  }
  const TangencyData invariant = tangency_decomposition(fixture("S0"));
  CHECK(invariant.sumP2() == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("structure norms are invariant under tangent re-framing") {
  std::mt19937_64 rng(99);
  SubmanifoldPoint p = make_point(testutil::random_spec(7));
  const TangencyData before = tangency_decomposition(p);
  const Matrix rot = testutil::random_rotation(rng, p.n);
  SubmanifoldPoint q = p;
  q.tangent_frame = p.tangent_frame * rot;
  for (int a = 0; a < q.codim(); ++a) {
    q.h[a] = rot.transpose() * p.h[a] * rot;
  }
  q.M = rot.transpose() * p.M * rot;
  const TangencyData after = tangency_decomposition(q);
  for (int k = 0; k < 3; ++k) {
    CHECK(after.normP2[k] == doctest::Approx(before.normP2[k]).epsilon(1e-10));
  }
}

TEST_CASE("validate_point diagnostics") {
  SUBCASE("fixture passes") {
    CHECK(validate_point(fixture("S0")).pass);
  }
  SUBCASE("asymmetric h is reported with the perturbation size") {
    SubmanifoldPoint p = fixture("S1");
    p.h[0](0, 1) += 0.25;
    const PointDiagnostics d = validate_point(p);
    CHECK_FALSE(d.pass);
    CHECK(d.h_symmetry_residual == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("scaled frame fails with gram residual 3") {
    SubmanifoldPoint p = fixture("S0");
    p.tangent_frame *= 2.0;
    p.normal_frame *= 2.0;
    const PointDiagnostics d = validate_point(p);
    CHECK_FALSE(d.pass);
    CHECK(d.frame_gram_residual == doctest::Approx(3.0).epsilon(1e-12));
  }
}

}  // TEST_SUITE
