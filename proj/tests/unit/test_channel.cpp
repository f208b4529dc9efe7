#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <swidopt/channel.hpp>
#include <swidopt/numerics.hpp>
#include <vector>

using namespace swidopt;

TEST_CASE("snr_pdf closed form") {
  CHECK(snr_pdf({FadingFamily::RayleighSISO, 1.0}, 0.0) == doctest::Approx(1.0));
  CHECK(snr_pdf({FadingFamily::RayleighSISO, 10.0}, 10.0) ==
        doctest::Approx(0.1 * std::exp(-1.0)).epsilon(1e-14));
  ChannelModel model{FadingFamily::RayleighSISO, 3.7};
  const double mass =
      integrate([&](double g) { return snr_pdf(model, g); }, 0.0, kInf);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("rate/snr mapping") {
  CHECK(rate_from_snr(0.0) == 0.0);
  CHECK(rate_from_snr(std::exp(1.0) - 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  for (double g : {0.0, 0.3, 1.0, 17.5, 2000.0}) {
    CHECK(snr_from_rate(rate_from_snr(g)) == doctest::Approx(g).epsilon(1e-12));
  }
}

TEST_CASE("rate pdf normalizes and matches the density at the origin") {
  RateDistribution unit({FadingFamily::RayleighSISO, 1.0});
  CHECK(unit.pdf(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  const double mass =
      integrate([&](double r) { return unit.pdf(r); }, 0.0, kInf);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(unit.pdf(kInf) == 0.0);
  CHECK(unit.pdf(-1.0) == 0.0);
}

TEST_CASE("rate cdf equals the snr cdf through the rate map") {
  RateDistribution dist({FadingFamily::RayleighSISO, 7.3});
  for (int k = 1; k <= 20; ++k) {
    const double r = 0.25 * k;
    CAPTURE(r);
    CHECK(dist.cdf(r) ==
          doctest::Approx(snr_cdf(dist.model(), std::expm1(r))).epsilon(1e-13));
  }
  CHECK(dist.cdf(0.0) == 0.0);
}

TEST_CASE("mean rate closed form") {
  RateDistribution unit({FadingFamily::RayleighSISO, 1.0});
  CHECK(unit.mean_rate() == doctest::Approx(0.59634736232319463).epsilon(1e-13));
  const double quad = integrate([&](double r) { return r * unit.pdf(r); }, 0.0, kInf);
  CHECK(unit.mean_rate() == doctest::Approx(quad).epsilon(1e-9));
}

TEST_CASE("sampler matches the analytic distribution") {
  RateDistribution unit({FadingFamily::RayleighSISO, 1.0});
  const int n = 1000000;
  RngStream rng = RngStream::substream(1234, 0, 0);
  double sum = 0.0, sumsq = 0.0;
  int below_one = 0;
  for (int i = 0; i < n; ++i) {
    const double r = sample_rate(unit, rng);
    sum += r;
    sumsq += r * r;
    if (r <= 1.0) ++below_one;
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sumsq / n - mean * mean) / n);
  CHECK(std::abs(mean - 0.59634736232319463) < 3.0 * sd);

  const double p = static_cast<double>(below_one) / n;
  const double f1 = unit.cdf(1.0);
  const double se = std::sqrt(f1 * (1.0 - f1) / n);
  CHECK(std::abs(p - f1) < 3.0 * se);
}

TEST_CASE("sampler passes a Kolmogorov-Smirnov check") {
  RateDistribution dist({FadingFamily::RayleighSISO, 5.0});
  const int n = 100000;
  RngStream rng = RngStream::substream(77, 3, 1);
  std::vector<double> draws(n);
  for (double& d : draws) d = sample_rate(dist, rng);
  std::sort(draws.begin(), draws.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = dist.cdf(draws[i]);
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f));
  }
  CHECK(ks < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("same substream gives an identical sequence") {
  RateDistribution dist({FadingFamily::RayleighSISO, 2.0});
  RngStream a = RngStream::substream(42, 5, 2);
  RngStream b = RngStream::substream(42, 5, 2);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_rate(dist, a) == sample_rate(dist, b));
  }
  RngStream c = RngStream::substream(42, 5, 3);
  bool all_equal = true;
  RngStream a2 = RngStream::substream(42, 5, 2);
  for (int i = 0; i < 100; ++i) {
    if (sample_rate(dist, a2) != sample_rate(dist, c)) all_equal = false;
  }
  CHECK_FALSE(all_equal);
}

TEST_CASE("network mean-snr profiles") {
  NetworkSpec one{1, NetworkModelKind::Model1, 1.0, 100.0};
  auto mid = build_network(one);
  REQUIRE(mid.size() == 1);
  CHECK(mid[0].mean_snr == doctest::Approx(50.5).epsilon(1e-14));

  NetworkSpec ten{10, NetworkModelKind::Model1, 1.0, 100.0};
  auto linear = build_network(ten);
  REQUIRE(linear.size() == 10);
  CHECK(linear[0].mean_snr == doctest::Approx(5.95).epsilon(1e-14));
  CHECK(linear[9].mean_snr == doctest::Approx(95.05).epsilon(1e-14));

  NetworkSpec sqrt2{2, NetworkModelKind::Model2, 1.0, 100.0};
  auto quadratic = build_network(sqrt2);
  REQUIRE(quadratic.size() == 2);
  CHECK(quadratic[0].mean_snr == doctest::Approx(10.5625).epsilon(1e-14));

  NetworkSpec same{3, NetworkModelKind::Identical, 1.0, 100.0};
  for (const auto& ch : build_network(same)) {
    CHECK(ch.mean_snr == 100.0);
  }
}
