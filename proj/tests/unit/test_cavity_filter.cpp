#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "photon_shaper/cavity_filter.hpp"
#include "support/oracles.hpp"

using namespace photon_shaper;

TEST_CASE("cavity parameters are validated")
{
    CHECK_THROWS_AS(CavityParams(0.0), ValidationError);
    CHECK_THROWS_AS(CavityParams(-1.0), ValidationError);
    CHECK_THROWS_AS(CavityParams(1.0, std::nan("")), ValidationError);
    CHECK_THROWS_AS(CavityParams(std::numeric_limits<double>::infinity()), ValidationError);
    CHECK_NOTHROW(CavityParams(1.0, -3.0));
}

TEST_CASE("transfer function values")
{
    CHECK(transfer_function(CavityParams(1.3, 0.4), 0.4) == Complex(1.0, 0.0));
    // (1 + i) / (1 - i) = i
    const Complex h = transfer_function(CavityParams(2.0, 0.0), 1.0);
    CHECK(std::abs(h - Complex(0.0, 1.0)) < 1e-15);
    // far from resonance H -> -1
    const Complex far = transfer_function(CavityParams(1.0, 0.5), 1e8);
    CHECK(std::abs(far + 1.0) < 1e-7);
    const Complex far_below = transfer_function(CavityParams(1.0, 0.5), -1e8);
    CHECK(std::abs(far_below + 1.0) < 1e-7);
}

TEST_CASE("transfer function is unimodular at random frequencies")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> gamma(0.01, 100.0), delta(-50.0, 50.0), omega(-1000.0, 1000.0);
    for (int i = 0; i < 1000; ++i)
    {
        const CavityParams p(gamma(rng), delta(rng));
        const Complex h = transfer_function(p, omega(rng));
        CHECK(std::abs((h * std::conj(h)).real() - 1.0) < 1e-14);
        CHECK(std::abs(std::abs(h) - 1.0) < 1e-14);
        const double w = omega(rng);
        CHECK(std::abs(transfer_function(p, w) - oracle::reflection(p.gamma(), p.delta(), w)) < 1e-15);
    }
}

TEST_CASE("group delay against finite differences of the phase")
{
    SUBCASE("at resonance, gamma = 1")
    {
        const CavityParams p(1.0, 0.0);
        CHECK(group_delay(p, 0.0) == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(oracle::fd_group_delay(1.0, 0.0, 0.0, 1e-5) == doctest::Approx(4.0).epsilon(1e-8));
    }
    SUBCASE("half a linewidth away gives 2/gamma")
    {
        for (double gamma : {0.5, 1.0, 3.0})
        {
            const CavityParams p(gamma, 0.7);
            const double w = 0.7 + gamma / 2.0;
            CHECK(group_delay(p, w) == doctest::Approx(2.0 / gamma).epsilon(1e-14));
            CHECK(oracle::fd_group_delay(gamma, 0.7, w, 1e-5 * gamma) == doctest::Approx(2.0 / gamma).epsilon(1e-8));
        }
    }
    SUBCASE("vanishes far from resonance")
    {
        CHECK(group_delay(CavityParams(1.0), 1e6) < 1e-11);
    }
    SUBCASE("random points: 0 < tau <= 4/gamma, matches the finite-difference oracle")
    {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> gamma(0.1, 10.0), offset(-20.0, 20.0);
        for (int i = 0; i < 200; ++i)
        {
            const double g = gamma(rng);
            const CavityParams p(g, 1.0);
            const double w = 1.0 + offset(rng) * g;
            const double tau = group_delay(p, w);
            CHECK(tau > 0.0);
            CHECK(tau <= 4.0 / g);
            CHECK(tau == doctest::Approx(oracle::fd_group_delay(g, 1.0, w, 1e-5 * g)).epsilon(1e-6));
        }
    }
}

TEST_CASE("apply preserves the norm of random amplitudes")
{
    const SampledGrid grid(4096, 0.01);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> gamma(0.05, 5.0), delta(-2.0, 2.0);
    for (int i = 0; i < 50; ++i)
    {
        const auto nu = normalize(SpectralAmplitude(grid, oracle::random_bandlimited(grid, rng)));
        const CavityParams p(gamma(rng), delta(rng));
        CHECK(std::abs(norm(apply(p, nu)) - 1.0) <= 1e-12);
    }
}

TEST_CASE("narrowband pulse is delayed by 4/gamma and broadened")
{
    for (double gamma : {1.0, 2.5})
    {
        const double sigma = gamma / 100.0;
        const SampledGrid grid(16384, 0.0015 * gamma);
        const SinglePhotonState in(gaussian_amplitude(grid, sigma));
        const CavityParams p(gamma, 0.0);
        const auto before = pulse_stats(count_rate(in));
        const auto after = pulse_stats(count_rate(apply(p, in)));
        const double delay = after.mean_time - before.mean_time;
        CHECK(delay == doctest::Approx(4.0 / gamma).epsilon(0.05));
        // The mean delay of an all-pass filter is the spectrum-weighted group delay.
        double weighted = 0.0;
        const auto spectrum = intensity_spectrum(in);
        for (std::size_t j = 0; j < grid.n_points(); ++j)
            weighted += spectrum[j] * group_delay(p, grid.omega(j)) * grid.delta_omega();
        CHECK(delay == doctest::Approx(weighted).epsilon(1e-6));
        CHECK(after.rms_width > before.rms_width);
    }
}

TEST_CASE("broadband pulse is reflected as -nu away from resonance")
{
    const double gamma = 0.01;
    const SampledGrid grid(4096, 0.01);
    // Flat-topped spectrum much wider than gamma.
    std::vector<Complex> v(grid.n_points());
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = std::exp(-std::pow(grid.omega(j) / 8.0, 8.0));
    const auto nu = normalize(SpectralAmplitude(grid, v));
    const CavityParams p(gamma, 0.0);
    const auto out = apply(p, nu);
    for (std::size_t j = 0; j < grid.n_points(); ++j)
    {
        const double detuning = std::abs(grid.omega(j));
        if (detuning > 100.0 * gamma)
            CHECK(std::abs(out[j] + nu[j]) <= (gamma / detuning) * std::abs(nu[j]) * (1.0 + 1e-9) + 1e-300);
    }
    CHECK(std::abs(out[grid.n_points() / 2] - nu[grid.n_points() / 2]) < 1e-15);
}

TEST_CASE("pulse statistics")
{
    const SampledGrid grid(2048, 0.05);
    SUBCASE("Gaussian count rate")
    {
        const double t0 = 3.0;
        const double width = 2.0;
        std::vector<double> n(grid.n_points());
        for (std::size_t j = 0; j < n.size(); ++j)
        {
            const double x = (grid.time(j) - t0) / width;
            n[j] = std::exp(-0.5 * x * x);
        }
        const auto s = pulse_stats(CountRate(grid, n));
        CHECK(s.mean_time == doctest::Approx(t0).epsilon(1e-12));
        CHECK(s.rms_width == doctest::Approx(width).epsilon(1e-10));
    }
    SUBCASE("single bin")
    {
        std::vector<double> n(grid.n_points(), 0.0);
        n[100] = 0.25;
        const auto s = pulse_stats(CountRate(grid, n));
        CHECK(s.mean_time == grid.time(100));
        CHECK(s.rms_width == 0.0);
    }
    SUBCASE("zero mass")
    {
        CHECK_THROWS_AS(pulse_stats(CountRate(grid, std::vector<double>(grid.n_points(), 0.0))), ValidationError);
    }
}

TEST_CASE("delay is non-negative for narrowband pulses centred on resonance")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> gamma(0.2, 5.0), ratio(0.01, 0.1), detune(-1.0, 1.0);
    for (int i = 0; i < 20; ++i)
    {
        const double g = gamma(rng);
        const double delta = detune(rng) * g;
        const double sigma = ratio(rng) * g;
        // Time span ~ 20 pulse widths plus the delay, frequency span ~ 40 widths.
        const double dw = 2.0 * kPi / (40.0 / sigma + 40.0 / g);
        const SampledGrid grid(8192, dw);
        const SinglePhotonState in(gaussian_amplitude(grid, sigma, delta));
        const CavityParams p(g, delta);
        const auto before = pulse_stats(count_rate(in));
        const auto after = pulse_stats(count_rate(apply(p, in)));
        CHECK(after.mean_time >= before.mean_time);
    }
}
