#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "uavplan/link.hpp"

using namespace uavplan;
using Catch::Approx;

TEST_CASE("noise power from PSD and bandwidth") {
  RadioParams r;
  // -169 dBm/Hz over 2 MHz, assembled the long way round
  const double psd_w_per_hz = std::pow(10.0, -169.0 / 10.0) / 1000.0;
  REQUIRE(noise_power_w(r) == Approx(psd_w_per_hz * 2e6).epsilon(1e-12));
  REQUIRE(noise_power_w(r) == Approx(2.5178508235883326e-14).epsilon(1e-14));
}

TEST_CASE("gap-adjusted Shannon rate") {
  RadioParams r;
  const double gain = -120.199486990607;  // 500 m on-axis at 5 GHz
  REQUIRE(achievable_rate_bps(r, 5.0, gain, 3.0) == Approx(12010003.3107384).epsilon(1e-9));
  REQUIRE(achievable_rate_bps(r, 5.0, gain, 1.0) == Approx(15149819.6411762).epsilon(1e-9));
  REQUIRE(achievable_rate_bps(r, 0.0, gain, 3.0) == 0.0);

  // monotone in power, antitone in gap
  double prev = 0.0;
  for (double p = 0.5; p <= 5.0; p += 0.5) {
    const double rate = achievable_rate_bps(r, p, gain, 3.0);
    REQUIRE(rate > prev);
    prev = rate;
  }
  REQUIRE(achievable_rate_bps(r, 5.0, gain, 1.5) > achievable_rate_bps(r, 5.0, gain, 2.5));

  // spot check against a direct SNR computation
  const double snr = 5.0 * std::pow(10.0, gain / 10.0) / (3.0 * noise_power_w(r));
  REQUIRE(achievable_rate_bps(r, 5.0, gain, 3.0) ==
          Approx(2e6 * std::log2(1.0 + snr)).epsilon(1e-12));

  REQUIRE_THROWS_AS(achievable_rate_bps(r, -1.0, gain, 3.0), std::invalid_argument);
  REQUIRE_THROWS_AS(achievable_rate_bps(r, 1.0, gain, 0.5), std::invalid_argument);
}

TEST_CASE("transmission phase bookkeeping") {
  RadioParams r;
  const double gain = -110.0;

  const TransmissionPhase empty = transmission_phase(r, 0.0, 2.0, gain, 3.0);
  REQUIRE(empty.duration_s == 0.0);
  REQUIRE(empty.energy_j == 0.0);

  const TransmissionPhase tx = transmission_phase(r, 1e7, 2.0, gain, 3.0);
  const double rate = achievable_rate_bps(r, 2.0, gain, 3.0);
  REQUIRE(tx.rate_bps == rate);
  REQUIRE(tx.duration_s == 1e7 / rate);
  REQUIRE(tx.energy_j == 2.0 * tx.duration_s);

  // zero power with bits pending: dead link, infinite duration
  const TransmissionPhase dead = transmission_phase(r, 1e7, 0.0, gain, 3.0);
  REQUIRE(dead.rate_bps == 0.0);
  REQUIRE(std::isinf(dead.duration_s));
  REQUIRE(std::isinf(dead.energy_j));

  REQUIRE_THROWS_AS(transmission_phase(r, -1.0, 2.0, gain, 3.0), std::invalid_argument);
}

TEST_CASE("radio validation") {
  RadioParams r;
  r.bandwidth_hz = 0.0;
  REQUIRE_THROWS_AS(r.validate(), std::invalid_argument);
  r = RadioParams{};
  r.max_tx_power_w = -2.0;
  REQUIRE_THROWS_AS(r.validate(), std::invalid_argument);
}
