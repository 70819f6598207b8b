#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "urn/error.hpp"
#include "urn/params.hpp"
#include "urn/rng.hpp"
#include "urn/sampling.hpp"
#include "urn/special.hpp"

using namespace urn;

using test::error_kind;

TEST_CASE("derive_params examples") {
  const Params one = derive_params(1.0);
  CHECK(one.beta() == 1.0);
  CHECK(one.gamma() == 0.0);

  const Params q = derive_params(0.75);
  CHECK(q.beta() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(q.gamma() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const Params fig = derive_params(0.6);
  CHECK(fig.beta() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fig.gamma() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("derive_params rejects p <= 1/2 and p > 1") {
  CHECK(error_kind([] { derive_params(0.5); }) == ErrorKind::ParamDomain);
  CHECK(error_kind([] { derive_params(0.2); }) == ErrorKind::ParamDomain);
  CHECK(error_kind([] { derive_params(1.01); }) == ErrorKind::ParamDomain);
  const Params sub = Params::simulation(0.3);
  CHECK(error_kind([&] { (void)sub.beta(); }) == ErrorKind::ParamDomain);
  CHECK(error_kind([&] { (void)sub.gamma(); }) == ErrorKind::ParamDomain);
  CHECK(Params::simulation(0.5).gamma() == 1.0);
  CHECK(error_kind([] { Params::simulation(-0.1); }) == ErrorKind::ParamDomain);
}

TEST_CASE("derived constant identities on a p grid") {
  for (double p = 0.501; p <= 1.0; p += 0.007) {
    const Params params = derive_params(p);
    CAPTURE(p);
    CHECK(std::fabs(params.beta() * (2 * p - 1) - p) < 1e-12);
    CHECK(std::fabs(params.gamma() * p - (1 - p)) < 1e-12);
    CHECK(std::fabs((1 - params.gamma()) - 1 / params.beta()) < 1e-12);
    const double beta = params.beta();
    CHECK(std::fabs(beta / (2 * beta - 1) - p) < 1e-12);
  }
}

TEST_CASE("reg_inc_beta examples") {
  CHECK(reg_inc_beta(0.5, 1, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(reg_inc_beta(0.5, 3, 1) == doctest::Approx(0.125).epsilon(1e-15));
  // Oracle: quadrature of 12 x (1 - x)^2 over [0, 1/2].
  const double oracle = test::simpson([](double x) { return 12 * x * (1 - x) * (1 - x); }, 0.0, 0.5);
  CHECK(oracle == doctest::Approx(0.6875).epsilon(1e-12));
  CHECK(std::fabs(reg_inc_beta(0.5, 2, 3) - oracle) < 1e-12);
  CHECK(reg_inc_beta(0.0, 4, 2) == 0.0);
  CHECK(reg_inc_beta(1.0, 4, 2) == 1.0);
}

TEST_CASE("reg_inc_beta matches density quadrature") {
  RngStream rng(11, 0);
  for (int i = 0; i < 60; ++i) {
    const int a = 1 + static_cast<int>(rng.below(8));
    const int b = 1 + static_cast<int>(rng.below(8));
    const double x = rng.uniform();
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(x);
    CHECK(std::fabs(reg_inc_beta(x, a, b) - test::beta_cdf_quadrature(x, a, b)) < 1e-9);
  }
}

TEST_CASE("reg_inc_beta reflection identity") {
  RngStream rng(12, 0);
  for (int i = 0; i < 400; ++i) {
    const std::uint64_t a = 1 + rng.below(i < 300 ? 60 : 3000);
    const std::uint64_t b = 1 + rng.below(i < 300 ? 60 : 3000);
    const double x = rng.uniform();
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(x);
    CHECK(std::fabs(reg_inc_beta(x, a, b) + reg_inc_beta(1 - x, b, a) - 1.0) < 1e-12);
  }
}

TEST_CASE("reg_inc_beta domain errors") {
  CHECK(error_kind([] { reg_inc_beta(-0.1, 1, 1); }) == ErrorKind::Domain);
  CHECK(error_kind([] { reg_inc_beta(1.1, 1, 1); }) == ErrorKind::Domain);
  CHECK(error_kind([] { reg_inc_beta(0.5, 0, 1); }) == ErrorKind::Domain);
  CHECK(error_kind([] { reg_inc_beta(0.5, 1, 0); }) == ErrorKind::Domain);
}

TEST_CASE("binom_pmf examples and normalization") {
  CHECK(binom_pmf(0, 7, 0.0) == 1.0);
  CHECK(binom_pmf(1, 2, 2.0 / 3.0) == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
  CHECK(binom_pmf(3, 3, 1.0) == 1.0);
  for (std::uint64_t n : {1ull, 2ull, 17ull, 400ull, 10'000ull}) {
    for (double q : {0.001, 0.3, 0.5, 2.0 / 3.0, 0.999}) {
      double total = 0.0;
      for (std::uint64_t k = 0; k <= n; ++k) total += binom_pmf(k, n, q);
      CAPTURE(n);
      CAPTURE(q);
      CHECK(std::fabs(total - 1.0) < 1e-12);
    }
  }
  // Small-n agreement with the direct product formula.
  for (int n = 1; n <= 20; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double direct = test::choose(n, k) * std::pow(0.37, k) * std::pow(0.63, n - k);
      CHECK(binom_pmf(k, n, 0.37) == doctest::Approx(direct).epsilon(1e-13));
    }
  }
  CHECK(error_kind([] { binom_pmf(3, 2, 0.5); }) == ErrorKind::Domain);
  CHECK(error_kind([] { binom_pmf(1, 2, 1.5); }) == ErrorKind::Domain);
}

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(99, 3);
  RngStream b(99, 3);
  RngStream c(99, 4);
  RngStream d(100, 3);
  int same_c = 0;
  int same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    same_c += x == c.next_u64();
    same_d += x == d.next_u64();
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("adjacent streams are uncorrelated") {
  // Pearson correlation of paired uniforms from streams i and i + 1.
  constexpr int kPairs = 200'000;
  RngStream s0(5, 0);
  RngStream s1(5, 1);
  double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < kPairs; ++i) {
    const double x = s0.uniform();
    const double y = s1.uniform();
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  const double n = kPairs;
  const double r = (sxy - sx * sy / n) / std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n));
  CHECK(std::fabs(r) < 4.0 / std::sqrt(n));
}

TEST_CASE("below is unbiased on a small range") {
  RngStream rng(8, 0);
  std::vector<int> hits(7, 0);
  constexpr int kDraws = 700'000;
  for (int i = 0; i < kDraws; ++i) ++hits[rng.below(7)];
  for (int h : hits) CHECK(std::fabs(h - kDraws / 7.0) < 5 * std::sqrt(kDraws / 7.0));
}

TEST_CASE("sample examples") {
  RngStream rng(1, 0);
  CHECK(sample(Bernoulli{1.0}, rng) == 1.0);
  CHECK(sample(Bernoulli{0.0}, rng) == 0.0);

  double sum = 0.0;
  for (int i = 0; i < 1'000'000; ++i) sum += sample(Exponential{2.0}, rng);
  CHECK(std::fabs(sum / 1e6 - 0.5) < 0.002);

  sum = 0.0;
  for (int i = 0; i < 1'000'000; ++i) sum += sample(GammaInt{3, 2.0}, rng);
  CHECK(std::fabs(sum / 1e6 - 1.5) < 0.005);

  for (int i = 0; i < 1000; ++i) {
    const double u = sample(Uniform01{}, rng);
    CHECK((u >= 0.0 && u < 1.0));
  }
}

TEST_CASE("samplers are reproducible") {
  const std::vector<DistSpec> specs{Exponential{0.7}, Bernoulli{0.3}, GammaInt{4, 1.5}, Uniform01{}};
  RngStream a(2024, 9);
  RngStream b(2024, 9);
  for (int i = 0; i < 400; ++i) {
    const DistSpec& spec = specs[i % specs.size()];
    CHECK(sample(spec, a) == sample(spec, b));
  }
}

TEST_CASE("sample domain errors") {
  RngStream rng(1, 0);
  CHECK(error_kind([&] { sample(Exponential{0.0}, rng); }) == ErrorKind::Domain);
  CHECK(error_kind([&] { sample(Exponential{-1.0}, rng); }) == ErrorKind::Domain);
  CHECK(error_kind([&] { sample(GammaInt{2, 0.0}, rng); }) == ErrorKind::Domain);
  CHECK(error_kind([&] { sample(GammaInt{0, 1.0}, rng); }) == ErrorKind::Domain);
  CHECK(error_kind([&] { sample(Bernoulli{1.2}, rng); }) == ErrorKind::Domain);
}
