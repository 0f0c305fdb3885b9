#include "doctest.h"

#include <cmath>
#include <random>

#include "photon_shaper/photon_states.hpp"
#include "support/oracles.hpp"

using namespace photon_shaper;

TEST_CASE("single-photon states must be normalized")
{
    const SampledGrid grid(512, 0.05);
    const auto nu = gaussian_amplitude(grid, 1.0);
    CHECK_NOTHROW(SinglePhotonState{nu});
    CHECK_THROWS_AS(SinglePhotonState{nu.scaled(1.1)}, ValidationError);
    CHECK_THROWS_AS(SinglePhotonState{SpectralAmplitude::zeros(grid)}, ValidationError);
    CHECK(norm_squared(SinglePhotonState::from_unnormalized(nu.scaled(5.0)).amplitude()) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(SinglePhotonState::from_unnormalized(SpectralAmplitude::zeros(grid)), ValidationError);
}

TEST_CASE("mean field")
{
    const SampledGrid grid(1024, 0.05);
    const auto nu = gaussian_amplitude(grid, 1.0);

    SUBCASE("single photon has zero mean field")
    {
        const auto field = mean_field(SinglePhotonState(nu));
        for (const auto &v : field.values())
            CHECK(v == Complex(0.0, 0.0));
    }
    SUBCASE("coherent Gaussian displacement gives the Gaussian time amplitude")
    {
        const double amplitude = 3.0;
        const auto field = mean_field(CoherentState(nu.scaled(amplitude)));
        double worst = 0.0;
        for (std::size_t j = 0; j < grid.n_points(); ++j)
            worst = std::max(worst, std::abs(field[j] - amplitude * oracle::gaussian_time(1.0, grid.time(j))));
        CHECK(worst < 1e-11);
    }
    SUBCASE("vacuum")
    {
        const auto field = mean_field(CoherentState::vacuum(grid));
        for (const auto &v : field.values())
            CHECK(v == Complex(0.0, 0.0));
    }
}

TEST_CASE("count rate of a Gaussian single photon")
{
    for (double sigma : {1.0, 2.0})
    {
        const SampledGrid grid(1024, 0.05 * sigma);
        const auto n = count_rate(SinglePhotonState(gaussian_amplitude(grid, sigma)));
        double worst = 0.0;
        for (std::size_t j = 0; j < grid.n_points(); ++j)
        {
            const double t = grid.time(j);
            const double expected = std::sqrt(sigma * sigma / kPi) * std::exp(-sigma * sigma * t * t);
            worst = std::max(worst, std::abs(n[j] - expected));
        }
        CHECK(worst < 1e-12);
        CHECK(n.integral() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("coherent state with alpha = nu has the single-photon count rate")
{
    const SampledGrid grid(1024, 0.05);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial)
    {
        const auto nu = normalize(SpectralAmplitude(grid, oracle::random_smooth_pulse(grid, rng, 1.0)));
        const auto a = count_rate(SinglePhotonState(nu));
        const auto b = count_rate(CoherentState(nu));
        for (std::size_t j = 0; j < grid.n_points(); ++j)
            CHECK(std::abs(a[j] - b[j]) <= 1e-12);
    }
    const auto vac = count_rate(CoherentState::vacuum(grid));
    for (double v : vac.values())
        CHECK(v == 0.0);
}

TEST_CASE("intensity spectrum")
{
    const SampledGrid grid(1024, 0.05);
    const auto nu = gaussian_amplitude(grid, 1.0);
    CHECK(intensity_spectrum(SinglePhotonState(nu)).integral() == doctest::Approx(1.0).epsilon(1e-12));
    const CoherentState coh(nu.scaled(2.5));
    CHECK(intensity_spectrum(coh).integral() == doctest::Approx(6.25).epsilon(1e-12));
    CHECK(coh.mean_photon_number() == doctest::Approx(6.25).epsilon(1e-12));
    CHECK(intensity_spectrum(CoherentState::vacuum(grid)).integral() == 0.0);
}

TEST_CASE("state properties over random amplitudes")
{
    const SampledGrid grid(2048, 0.02);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> amp(0.1, 10.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        const auto raw = SpectralAmplitude(grid, oracle::random_smooth_pulse(grid, rng, 0.7));

        const CoherentState coh(raw.scaled(amp(rng)));
        const auto field = mean_field(coh);
        const auto n = count_rate(coh);
        for (std::size_t j = 0; j < grid.n_points(); ++j)
            CHECK(std::abs(n[j] - std::norm(field[j])) <= 1e-12 * std::max(1.0, n[j]));
        CHECK(std::abs(n.integral() - intensity_spectrum(coh).integral()) <= 1e-10 * std::max(1.0, n.integral()));

        const SinglePhotonState photon = SinglePhotonState::from_unnormalized(raw);
        const auto photon_field = mean_field(photon);
        for (const auto &v : photon_field.values())
            CHECK(v == Complex(0.0, 0.0));
        CHECK(std::abs(count_rate(photon).integral() - 1.0) <= 1e-9);
    }
}
