#include "cvlink/noise_budget.hpp"

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "support/simpson.hpp"

using namespace cvlink;

namespace {

SystemParams ideal_detection() {
  SystemParams p;
  // validate() wants a positive modulation variance; 1e-300 is exact zero
  // for every double-precision sum it enters.
  p.v_a = 1e-300;
  p.eta = 1.0;
  p.nu_el = 0.0;
  p.length_km = 0.0;
  return p;
}

}  // namespace

TEST_CASE("ber_bpsk reference points") {
  SystemParams p;

  SUBCASE("zero displacement is a coin flip") {
    CHECK(ber_bpsk(0.0, p) == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("pure shot noise, alpha = 3") {
    // erfc(3 / sqrt(2 * 0.25)) / 2 = erfc(3 sqrt(2)) / 2 = 9.86587645038e-10
    const SystemParams q = ideal_detection();
    CHECK(ber_bpsk(3.0, q) ==
          doctest::Approx(9.86587645038e-10).epsilon(1e-9));
  }

  SUBCASE("strictly decreasing in alpha") {
    double prev = ber_bpsk(0.0, p);
    for (int i = 1; i <= 40; ++i) {
      const double b = ber_bpsk(0.25 * i, p);
      CHECK(b < prev);
      prev = b;
    }
  }

  SUBCASE("increasing in modulation variance and electronic noise") {
    SystemParams lo = p, hi = p;
    hi.v_a = 8.0;
    CHECK(ber_bpsk(7.465, hi) > ber_bpsk(7.465, lo));
    hi = p;
    hi.nu_el = 0.5;
    CHECK(ber_bpsk(7.465, hi) > ber_bpsk(7.465, lo));
  }

  SUBCASE("rejects negative alpha") {
    CHECK_THROWS_AS(ber_bpsk(-1.0, p), std::invalid_argument);
  }
}

TEST_CASE("required_displacement meets the BER target") {
  SystemParams p;

  SUBCASE("reference operating point") {
    CHECK(required_displacement(p) ==
          doctest::Approx(7.46529034934).epsilon(1e-10));
    CHECK(std::abs(required_displacement(p) - 7.465) <= 1e-3);
  }

  SUBCASE("50 km") {
    p.length_km = 50.0;
    CHECK(required_displacement(p) ==
          doctest::Approx(15.287537408).epsilon(1e-9));
    CHECK(std::abs(required_displacement(p) - 15.29) <= 1e-2);
  }

  SUBCASE("round trip lands near the target across the length grid") {
    for (int l = 0; l <= 50; l += 5) {
      p.length_km = static_cast<double>(l);
      const double ber = ber_bpsk(required_displacement(p), p);
      CHECK(ber > 0.8e-9);
      CHECK(ber < 1.2e-9);
    }
  }

  SUBCASE("about nine photons per bit with ideal detection") {
    const SystemParams q = ideal_detection();
    const double alpha = required_displacement(q);
    CHECK(alpha * alpha == doctest::Approx(8.9888).epsilon(1e-6));
    const double ber = ber_bpsk(alpha, q);
    CHECK(ber > 0.8e-9);
    CHECK(ber < 1.2e-9);
  }

  SUBCASE("exact constant closes the round trip tightly") {
    const double alpha = required_displacement(p, true);
    const double ber = ber_bpsk(alpha, p);
    CHECK(ber == doctest::Approx(1e-9).epsilon(1e-9));
  }
}

TEST_CASE("clipping_noise closed form") {
  SUBCASE("huge range: effectively zero") {
    CHECK(clipping_noise(0.0, 0.25, 40.0) >= 0.0);
    CHECK(clipping_noise(0.0, 0.25, 40.0) < 1e-15);
  }

  SUBCASE("zero range: everything clips, eps_c = v_b / N0") {
    CHECK(clipping_noise(0.0, 0.25, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(clipping_noise(0.0, 0.75, 0.0) == doctest::Approx(3.0).epsilon(1e-12));
  }

  SUBCASE("reference operating point vs frozen quadrature value") {
    const double eps_c = clipping_noise(5.279, 0.75, 10.0);
    CHECK(eps_c == doctest::Approx(4.3595476267e-9).epsilon(1e-6));
    // Same order as the canonical ~4.4e-9 figure.
    CHECK(eps_c > 2.2e-9);
    CHECK(eps_c < 8.8e-9);
  }

  SUBCASE("monotone: growing range helps, growing displacement hurts") {
    double prev = clipping_noise(5.0, 0.75, 6.0);
    for (double x_m = 7.0; x_m <= 12.0; x_m += 1.0) {
      const double e = clipping_noise(5.0, 0.75, x_m);
      CHECK(e < prev);
      prev = e;
    }
    prev = clipping_noise(0.0, 0.75, 10.0);
    for (double a = 1.0; a <= 8.0; a += 1.0) {
      const double e = clipping_noise(a, 0.75, 10.0);
      CHECK(e > prev);
      prev = e;
    }
  }

  SUBCASE("matches the quadrature oracle on a small grid") {
    for (double a : {0.0, 2.0, 5.279}) {
      for (double v : {0.25, 0.75, 1.5}) {
        const double closed = clipping_noise(a, v, 8.0);
        const double quad = testsupport::clipping_noise_quad(a, v, 8.0,
                                                             kShotNoiseN0);
        CHECK(closed == doctest::Approx(quad).epsilon(1e-7));
      }
    }
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(clipping_noise(-1.0, 0.25, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(clipping_noise(0.0, 0.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(clipping_noise(0.0, 0.25, -1.0), std::invalid_argument);
  }
}

TEST_CASE("quantization_noise") {
  CHECK(quantization_noise(10.0, 10) ==
        doctest::Approx(3.81469726562e-4).epsilon(1e-10));
  CHECK(quantization_noise(1.0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(quantization_noise(10.0, 20) ==
        doctest::Approx(3.63797880709e-10).epsilon(1e-9));
  // Each extra bit buys a factor 4.
  CHECK(quantization_noise(10.0, 11) * 4.0 ==
        doctest::Approx(quantization_noise(10.0, 10)).epsilon(1e-12));
  CHECK_THROWS_AS(quantization_noise(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(quantization_noise(10.0, 0), std::invalid_argument);
}

TEST_CASE("phase_excess_noise") {
  CHECK(phase_excess_noise(7.465, 1e-4) ==
        doctest::Approx(7.465 * 7.465 * 1e-4 / 0.25).epsilon(1e-12));
  CHECK(phase_excess_noise(0.0, 1e-3) == 0.0);
  CHECK(phase_excess_noise(5.0, 0.0) == 0.0);
  CHECK_THROWS_AS(phase_excess_noise(-1.0, 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(phase_excess_noise(1.0, -1e-4), std::invalid_argument);
}

TEST_CASE("total_excess_noise composes the budget") {
  SystemParams p;
  p.sigma_phi = 1e-4;
  const double alpha = 7.465;
  const double base = p.eps0 + phase_excess_noise(alpha, p.sigma_phi);
  CHECK(total_excess_noise(p, alpha) == doctest::Approx(base).epsilon(1e-12));

  // Strict mode folds in clipping + quantization exactly.
  const double t_eta = overall_transmittance(p);
  const double v_b = (t_eta * p.v_a + 1.0) * kShotNoiseN0;
  const double strict_extra =
      clipping_noise(std::sqrt(t_eta) * alpha, v_b, p.x_m) +
      quantization_noise(p.x_m, p.adc_bits);
  CHECK(total_excess_noise(p, alpha, true) ==
        doctest::Approx(base + strict_extra).epsilon(1e-12));
}

TEST_CASE("compute_noise_budget is self-consistent") {
  SystemParams p;
  const NoiseBudget b = compute_noise_budget(p);
  const double t_eta = overall_transmittance(p);
  CHECK(b.alpha == doctest::Approx(required_displacement(p)).epsilon(1e-12));
  CHECK(b.alpha_prime == doctest::Approx(std::sqrt(t_eta) * b.alpha).epsilon(1e-12));
  CHECK(b.v_b == doctest::Approx((t_eta * p.v_a + 1.0) * kShotNoiseN0).epsilon(1e-12));
  CHECK(b.ber == doctest::Approx(ber_bpsk(b.alpha, p)).epsilon(1e-12));
  CHECK(b.eps_total == doctest::Approx(p.eps0 + b.eps_p).epsilon(1e-12));

  const NoiseBudget strict = compute_noise_budget(p, true);
  CHECK(strict.eps_total ==
        doctest::Approx(p.eps0 + strict.eps_p + strict.eps_c + strict.eps_d)
            .epsilon(1e-12));

  const NoiseBudget at = compute_noise_budget_at(p, 3.0);
  CHECK(at.alpha == 3.0);
  CHECK(at.ber == doctest::Approx(ber_bpsk(3.0, p)).epsilon(1e-12));
}
