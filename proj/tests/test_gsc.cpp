#include <doctest.h>

#include "gscbeam/array_model.hpp"
#include "gscbeam/gsc.hpp"
#include "gscbeam/rng.hpp"

using namespace gscbeam;

namespace {

CVec random_cvec(Eigen::Index n, Rng& rng) {
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.circular_gaussian(1.0);
  return v;
}

void check_blocking_invariants(const CVec& a0, const CMat& b) {
  const Eigen::Index m = a0.size();
  REQUIRE(b.rows() == m);
  REQUIRE(b.cols() == m - 1);
  CHECK((b.adjoint() * a0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((b.adjoint() * b - CMat::Identity(m - 1, m - 1)).cwiseAbs().maxCoeff() < 1e-12);
}

}  // namespace

TEST_CASE("two-sensor blocking vector is the orthogonal direction") {
  CVec a0(2);
  a0 << cplx(1.0 / std::sqrt(2.0), 0.0), cplx(1.0 / std::sqrt(2.0), 0.0);
  const CMat b = blocking_matrix(a0);
  check_blocking_invariants(a0, b);
  // proportional to [1, -1]/sqrt(2) up to a unit phase
  const cplx ratio = b(0, 0) / b(1, 0);
  CHECK(std::abs(ratio + 1.0) < 1e-12);
  CHECK(std::abs(std::abs(b(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("blocking invariants hold across directions and sizes") {
  Rng rng(5);
  for (int m : {3, 8, 16}) {
    for (int t = 0; t < 10; ++t) {
      const CVec a0 = steering_vector({m, 0.5}, rng.uniform(1.0, 179.0));
      check_blocking_invariants(a0, blocking_matrix(a0));
    }
  }
  check_blocking_invariants(steering_vector({16, 0.5}, 73.2),
                            blocking_matrix(steering_vector({16, 0.5}, 73.2)));
}

TEST_CASE("blocking matrix is deterministic for a given steering vector") {
  const CVec a0 = steering_vector({16, 0.5}, 118.4);
  const CMat b1 = blocking_matrix(a0);
  const CMat b2 = blocking_matrix(a0);
  CHECK((b1 - b2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("householder variant spans the same complement") {
  Rng rng(9);
  const CVec a0 = steering_vector({12, 0.5}, rng.uniform(1.0, 179.0));
  const CMat b = blocking_matrix_householder(a0);
  check_blocking_invariants(a0, b);
  // same column space as the pivoted construction
  const CMat bc = blocking_matrix(a0);
  const CMat cross = bc.adjoint() * b;
  CHECK(std::abs(std::abs(cross.determinant()) - 1.0) < 1e-10);
}

TEST_CASE("blocking matrix rejects degenerate input") {
  CHECK_THROWS_AS(blocking_matrix(CVec::Ones(1)), std::invalid_argument);
  CHECK_THROWS_AS(blocking_matrix(CVec::Zero(4)), std::invalid_argument);
}

TEST_CASE("effective weight") {
  const CVec a0 = steering_vector({8, 0.5}, 64.0);
  const CMat b = blocking_matrix(a0);
  Rng rng(31);

  SUBCASE("zero adaptive branch leaves the quiescent weight") {
    const GscWeights w = make_gsc_weights(1.5, a0, CVec::Zero(7));
    CHECK((effective_weight(w, b) - 1.5 * a0).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("response toward the protected direction stays v") {
    for (int t = 0; t < 20; ++t) {
      const GscWeights w = make_gsc_weights(1.0, a0, random_cvec(7, rng));
      const CVec w_eff = effective_weight(w, b);
      CHECK(std::abs(w_eff.dot(a0) - cplx(1.0, 0.0)) < 1e-12);
    }
  }
  SUBCASE("orthonormal columns give the norm split") {
    for (int t = 0; t < 20; ++t) {
      const double v = rng.uniform(0.5, 2.0);
      const CVec adaptive = random_cvec(7, rng);
      const GscWeights w = make_gsc_weights(v, a0, adaptive);
      const CVec w_eff = effective_weight(w, b);
      CHECK(w_eff.squaredNorm() ==
            doctest::Approx(v * v + adaptive.squaredNorm()).epsilon(1e-10));
    }
  }
  SUBCASE("dimension mismatch is rejected") {
    const GscWeights w = make_gsc_weights(1.0, a0, CVec::Zero(5));
    CHECK_THROWS_AS(effective_weight(w, b), std::invalid_argument);
  }
}

TEST_CASE("gsc output") {
  const CVec a0 = steering_vector({8, 0.5}, 64.0);
  const CMat b = blocking_matrix(a0);
  Rng rng(37);

  SUBCASE("constraint pins the response to the protected direction") {
    const GscWeights w = make_gsc_weights(1.0, a0, random_cvec(7, rng));
    const CVec w_eff = effective_weight(w, b);
    CHECK(std::abs(gsc_output(w_eff, a0) - cplx(1.0, 0.0)) < 1e-12);
  }
  SUBCASE("zero input gives zero output") {
    CHECK(gsc_output(random_cvec(8, rng), CVec::Zero(8)) == cplx(0.0, 0.0));
  }
  SUBCASE("matches an elementwise inner-product oracle") {
    for (int t = 0; t < 20; ++t) {
      const CVec w_eff = random_cvec(8, rng);
      const CVec r = random_cvec(8, rng);
      cplx expect = 0.0;
      for (int i = 0; i < 8; ++i) expect += std::conj(w_eff(i)) * r(i);
      CHECK(std::abs(gsc_output(w_eff, r) - expect) < 1e-12);
    }
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(gsc_output(CVec::Zero(8), CVec::Zero(7)), std::invalid_argument);
  }
}
