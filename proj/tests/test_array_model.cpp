#include <doctest.h>

#include <cstring>

#include "gscbeam/array_model.hpp"

using namespace gscbeam;

namespace {

// independent phase oracle: accumulate the inter-element phasor by repeated
// multiplication instead of evaluating the closed form per entry
CVec steering_by_rotation(int m, double spacing, double theta_deg) {
  const double phase = -2.0 * kPi * spacing * std::cos(theta_deg * kPi / 180.0);
  const cplx rot = std::polar(1.0, phase);
  CVec a(m);
  cplx cur = 1.0 / std::sqrt(static_cast<double>(m));
  for (int i = 0; i < m; ++i) {
    a(i) = cur;
    cur *= rot;
  }
  return a;
}

}  // namespace

TEST_CASE("steering vector at broadside collapses all phases") {
  const CVec a = steering_vector({4, 0.5}, 90.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(a(i).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a(i).imag() == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("steering vector near endfire alternates sign for half-wave spacing") {
  const CVec a = steering_vector({2, 0.5}, 1e-9);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(a(0) - cplx(s, 0.0)) < 1e-6);
  CHECK(std::abs(a(1) - cplx(-s, 0.0)) < 1e-6);
}

TEST_CASE("steering vector entries match the rotation oracle") {
  const ArrayGeometry geometry{16, 0.5};
  const CVec a = steering_vector(geometry, 60.0);
  CHECK(std::abs(a.norm() - 1.0) < 1e-12);
  // cos 60 = 1/2 so entry m carries phase -pi m / 2; entry 2 is -1/4
  CHECK(std::abs(a(2) - cplx(-0.25, 0.0)) < 1e-12);
  const CVec oracle = steering_by_rotation(16, 0.5, 60.0);
  CHECK((a - oracle).cwiseAbs().maxCoeff() < 1e-12);

  Rng rng(3);
  for (int t = 0; t < 25; ++t) {
    const double theta = rng.uniform(0.5, 179.5);
    const CVec v = steering_vector(geometry, theta);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    CHECK((v - steering_by_rotation(16, 0.5, theta)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("steering vector rejects out-of-range directions") {
  CHECK_THROWS_AS(steering_vector({8, 0.5}, 0.0), std::domain_error);
  CHECK_THROWS_AS(steering_vector({8, 0.5}, 180.0), std::domain_error);
  CHECK_THROWS_AS(steering_vector({8, 0.5}, -10.0), std::domain_error);
}

TEST_CASE("steering matrix stacks unit-norm columns") {
  const ArrayGeometry geometry{8, 0.5};
  SUBCASE("single user") {
    const CMat a = steering_matrix(geometry, {42.0});
    CHECK(a.cols() == 1);
    CHECK((a.col(0) - steering_vector(geometry, 42.0)).norm() == 0.0);
  }
  SUBCASE("unit diagonal of the Gram matrix") {
    Rng rng(7);
    const auto doas = draw_doas(5, 2.0, rng);
    const CMat a = steering_matrix(geometry, doas);
    const CMat gram = a.adjoint() * a;
    for (int k = 0; k < 5; ++k) CHECK(std::abs(gram(k, k) - 1.0) < 1e-12);
  }
}

TEST_CASE("noise variance from snr") {
  CHECK(noise_variance_from_snr(0.0) == doctest::Approx(1.0));
  CHECK(noise_variance_from_snr(15.0) == doctest::Approx(0.0316227766).epsilon(1e-9));
  CHECK(noise_variance_from_snr(20.0) == doctest::Approx(0.01));
}

TEST_CASE("snapshot assembly is exact and deterministic") {
  const ArrayGeometry geometry{6, 0.5};
  Scenario scn{geometry, {75.0, 30.0, 120.0}, 0.2};
  const CMat a = steering_matrix(geometry, scn.doas_deg);

  SUBCASE("received equals steering * symbols + noise") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
      const Snapshot snap = generate_snapshot(scn, a, rng);
      CVec expect = snap.noise;
      for (int k = 0; k < 3; ++k) expect += snap.symbols(k) * a.col(k);
      CHECK((snap.received - expect).cwiseAbs().maxCoeff() == 0.0);
      for (int k = 0; k < 3; ++k) CHECK(std::abs(snap.symbols(k)) == 1.0);
    }
  }
  SUBCASE("noiseless single user reproduces the steering vector") {
    Scenario clean{geometry, {75.0}, 0.0};
    const CMat a1 = steering_matrix(geometry, clean.doas_deg);
    Rng rng(13);
    for (int t = 0; t < 8; ++t) {
      const Snapshot snap = generate_snapshot(clean, a1, rng);
      if (snap.symbols(0) > 0) {
        CHECK((snap.received - a1.col(0)).cwiseAbs().maxCoeff() < 1e-15);
        return;
      }
    }
    FAIL("no positive symbol drawn in 8 tries");
  }
  SUBCASE("same seed replays byte-identical snapshots") {
    Rng r1(99), r2(99);
    for (int t = 0; t < 20; ++t) {
      const Snapshot s1 = generate_snapshot(scn, a, r1);
      const Snapshot s2 = generate_snapshot(scn, a, r2);
      CHECK(std::memcmp(s1.received.data(), s2.received.data(), sizeof(cplx) * 6) == 0);
      CHECK(std::memcmp(s1.noise.data(), s2.noise.data(), sizeof(cplx) * 6) == 0);
      CHECK(s1.symbols == s2.symbols);
    }
  }
}

TEST_CASE("noise sample covariance approaches sigma^2 I") {
  const ArrayGeometry geometry{4, 0.5};
  Scenario scn{geometry, {60.0}, 1.0};
  const CMat a = steering_matrix(geometry, scn.doas_deg);
  Rng rng(17);
  CMat cov = CMat::Zero(4, 4);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const Snapshot snap = generate_snapshot(scn, a, rng);
    cov += snap.noise * snap.noise.adjoint();
  }
  cov /= n;
  const CMat target = scn.noise_variance * CMat::Identity(4, 4);
  CHECK(((cov - target).cwiseAbs().maxCoeff()) < 0.05 * scn.noise_variance);
}

TEST_CASE("analytic covariance") {
  const ArrayGeometry geometry{5, 0.5};
  SUBCASE("no users degenerates to the noise floor") {
    const CMat r = analytic_covariance(CMat(5, 0), 0.3, 5);
    CHECK((r - 0.3 * CMat::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("single noiseless user is rank one") {
    Scenario scn{geometry, {110.0}, 0.0};
    const CMat r = analytic_covariance(scn);
    Eigen::SelfAdjointEigenSolver<CMat> eig(r);
    CHECK(eig.eigenvalues()(4) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(eig.eigenvalues()(i)) < 1e-12);
  }
  SUBCASE("hermitian with noise-floor eigenvalues") {
    Scenario scn{{16, 0.5}, {40.0, 80.0, 100.0, 140.0, 20.0}, 0.05};
    const CMat r = analytic_covariance(scn);
    CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    Eigen::SelfAdjointEigenSolver<CMat> eig(r);
    CHECK(eig.eigenvalues().minCoeff() >= scn.noise_variance - 1e-12);
  }
}

TEST_CASE("sample covariance converges to the analytic covariance") {
  const ArrayGeometry geometry{16, 0.5};
  Scenario scn{geometry, {70.0, 25.0, 55.0, 110.0, 150.0}, 0.0316227766};
  const CMat a = steering_matrix(geometry, scn.doas_deg);
  const CMat target = analytic_covariance(scn);
  Rng rng(23);
  CMat cov = CMat::Zero(16, 16);
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const Snapshot snap = generate_snapshot(scn, a, rng);
    cov += snap.received * snap.received.adjoint();
  }
  cov /= n;
  CHECK((cov - target).norm() / target.norm() < 0.02);
}

TEST_CASE("scenario validation names bad input") {
  CHECK_THROWS_AS(validate(Scenario{{1, 0.5}, {90.0}, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Scenario{{4, 0.5}, {}, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Scenario{{4, 0.5}, {190.0}, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Scenario{{4, 0.5}, {50.0, 51.0}, 0.1}, 2.0), std::invalid_argument);
  CHECK_NOTHROW(validate(Scenario{{4, 0.5}, {50.0, 53.0}, 0.1}, 2.0));
}

TEST_CASE("drawn directions respect the separation rule") {
  Rng rng(29);
  for (int t = 0; t < 40; ++t) {
    const auto doas = draw_doas(5, 2.0, rng);
    REQUIRE(doas.size() == 5);
    for (std::size_t i = 0; i < doas.size(); ++i) {
      CHECK(doas[i] > 0.0);
      CHECK(doas[i] < 180.0);
      for (std::size_t j = i + 1; j < doas.size(); ++j)
        CHECK(std::abs(doas[i] - doas[j]) >= 2.0);
    }
  }
}
