#include <cmath>

#include "doctest.h"
#include "edgesync/error.h"
#include "edgesync/lorenz_design.h"
#include "edgesync/metric.h"
#include "edgesync/models.h"
#include "edgesync/riccati.h"

using namespace edgesync;

namespace {

const Matrix kA{{0, 1}, {0, 0}};
const Matrix kB{{0}, {1}};

}  // namespace

TEST_CASE("certificate construction") {
  const auto c = MakeCertificate(Matrix{{2, 0}, {0, 5}}, 1.0, 0.5);
  CHECK(c.p_lower == doctest::Approx(2.0));
  CHECK(c.p_upper == doctest::Approx(5.0));
  CHECK_FALSE(c.approximate);
  CHECK_THROWS_AS(MakeCertificate(Matrix{{1, 0}, {0, -1}}, 1.0, 0.5), Error);
  CHECK_THROWS_AS(MakeCertificate(Matrix{{1, 1}, {0, 1}}, 1.0, 0.5), Error);
  CHECK_THROWS_AS(MakeCertificate(Matrix{{1}}, -1.0, 0.5), Error);
  CHECK_THROWS_AS(MakeCertificate(Matrix{{1}}, 1.0, 0.0), Error);
}

TEST_CASE("scalar equality cases give zero margin") {
  const std::vector<Vector> samples{{-3.0}, {0.0}, {2.5}};
  SUBCASE("stable scalar, rho = 0") {
    const auto model = LinearModel(Matrix{{-1}}, Matrix{{1}}, Matrix{{1}});
    const auto cert = MakeCertificate(Matrix{{1}}, 0.0, 1.0);
    CHECK(std::abs(VerifyAriSampled(cert, model, samples)) <= 1e-15);
  }
  SUBCASE("integrator on the boundary solution") {
    const double mu = 0.7, rho = 1.4;
    const auto model = LinearModel(Matrix{{0}}, Matrix{{1}}, Matrix{{1}});
    const auto cert = MakeCertificate(Matrix{{2 * mu / rho}}, rho, mu);
    CHECK(std::abs(VerifyAriSampled(cert, model, samples)) <= 1e-15);
  }
}

TEST_CASE("riccati certificate passes the sampled ARI") {
  const auto design = SolveAri(kA, kB, 1.0, 0.5);
  const auto model = LinearModel(kA, kB, design.gain);
  const auto samples = SampleBall(Vector{0, 0}, 10.0, 50, 3);
  CHECK(VerifyAriSampled(design.certificate, model, samples) >= -1e-8);
  const auto r = VerifyKillingIntegrability(design.certificate, model, samples);
  CHECK(r.killing <= 1e-12);
  CHECK(r.integrability <= 1e-6);
}

TEST_CASE("shipped tanh certificate on a 1000-point ball") {
  const double gamma = 0.05;
  const auto design = SolveAri(kA, kB, 1.0, 0.5);
  // Margin of the unperturbed ARI is 1 from the +I shift; the perturbation
  // costs at most 2γp̄.
  REQUIRE(2 * gamma * design.certificate.p_upper <= 1.0);
  const auto model = TanhPerturbedModel(kA, kB, gamma, design.gain);
  const auto samples = SampleBall(Vector{0, 0}, 10.0, 1000, 1);
  CHECK(VerifyAriSampled(design.certificate, model, samples) >= 0.0);
  const auto r = VerifyKillingIntegrability(design.certificate, model, samples);
  CHECK(r.killing <= 1e-12);
  CHECK(r.integrability <= 1e-6);
}

TEST_CASE("spectral bounds match a fresh decomposition") {
  const auto design = SolveAri(kA, kB, 2.0, 0.3);
  const auto eig = SymEig(design.certificate.p).eigenvalues;
  CHECK(std::abs(eig.front() - design.certificate.p_lower) <= 1e-10);
  CHECK(std::abs(eig.back() - design.certificate.p_upper) <= 1e-10);
}

TEST_CASE("Lorenz linearization certificate is not integrable") {
  const auto params = LorenzParameters::Chaotic();
  const auto lorenz = DesignLorenzFeedback(params, 10.0, 0.5);
  const auto model = LorenzModel(params, lorenz.alpha);
  const auto samples = SampleBall(Vector{0, 0, 0}, 5.0, 10, 7);
  const auto r =
      VerifyKillingIntegrability(lorenz.design.certificate, model, samples);
  CHECK(r.integrability > 1e-3);
  CHECK(r.killing > 0.0);
  CHECK(lorenz.design.certificate.approximate);
}

TEST_CASE("sample_ball stays inside the ball and is reproducible") {
  const Vector center{1.0, -2.0, 0.5};
  const auto a = SampleBall(center, 3.0, 500, 9);
  const auto b = SampleBall(center, 3.0, 500, 9);
  CHECK(a == b);
  Vector mean(3, 0.0);
  double max_r = 0.0;
  for (const Vector& x : a) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      r2 += (x[i] - center[i]) * (x[i] - center[i]);
      mean[i] += (x[i] - center[i]) / 500.0;
    }
    CHECK(std::sqrt(r2) <= 3.0 + 1e-12);
    max_r = std::max(max_r, std::sqrt(r2));
  }
  CHECK(max_r > 2.5);
  for (double m : mean) CHECK(std::abs(m) < 0.3);
  CHECK(SampleBall(center, 3.0, 5, 10) != SampleBall(center, 3.0, 5, 9));
}
