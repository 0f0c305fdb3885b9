// Desk-scale acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any selected criterion fails.
//
//     acceptance            run all criteria
//     acceptance 4 7        run criteria 4 and 7 only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "photon_shaper/cavity_filter.hpp"
#include "photon_shaper/fm_modulation.hpp"
#include "photon_shaper/photon_states.hpp"
#include "photon_shaper/pulse_codes.hpp"
#include "photon_shaper/specgrid.hpp"

namespace fs = std::filesystem;
using namespace photon_shaper;

namespace
{
constexpr std::size_t kPoints = 16384;

struct Outcome
{
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what)
    {
        if (!ok)
            pass = false;
        detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
    }
};

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::vector<Complex> random_spectrum(const SampledGrid &grid, std::mt19937_64 &rng, double width)
{
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> shift(-0.1 * grid.time_span(), 0.1 * grid.time_span());
    const double t0 = shift(rng);
    std::vector<Complex> v(grid.n_points());
    for (std::size_t j = 0; j < v.size(); ++j)
    {
        const double x = grid.omega(j) / width;
        v[j] = Complex(normal(rng), normal(rng)) * std::exp(-0.5 * x * x) * std::polar(1.0, grid.omega(j) * t0);
    }
    return v;
}

// The default modulation working point: gamma = 1, sigma = 0.02, Omega = 0.3.
struct FmPoint
{
    SampledGrid grid{kPoints, 0.003};
    CavityParams cavity{1.0, 0.0};
    SpectralAmplitude nu = gaussian_amplitude(grid, 0.02);
    double big_omega = 0.3;

    OracleResult oracle(double epsilon) const
    {
        const ModulationParams m(epsilon, big_omega);
        return oracle_simulate(cavity, m, nu, OracleConfig::automatic(grid, cavity, m));
    }
};

Outcome transform_fidelity()
{
    Outcome o;
    const SampledGrid grid(kPoints, 0.02);
    const auto nu = gaussian_amplitude(grid, 1.0, 0.5, 3.0);
    const double roundtrip = relative_l2_distance(to_freq(to_time(nu)), nu);
    o.require(roundtrip <= 1e-12, "round trip " + sci(roundtrip));

    std::mt19937_64 rng(1);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial)
    {
        const SpectralAmplitude r(grid, random_spectrum(grid, rng, 2.0));
        worst = std::max(worst, std::abs(norm_squared(to_time(r)) - norm_squared(r)) / norm_squared(r));
    }
    o.require(worst <= 1e-10, "Parseval " + sci(worst));
    return o;
}

Outcome single_photon_contrast()
{
    Outcome o;
    const SampledGrid grid(kPoints, 0.02);
    std::mt19937_64 rng(2);
    bool field_zero = true;
    double mass_err = 0.0;
    double rate_err = 0.0;
    for (int trial = 0; trial < 20; ++trial)
    {
        const auto nu = normalize(SpectralAmplitude(grid, random_spectrum(grid, rng, 1.0)));
        const SinglePhotonState photon(nu);
        const auto field = mean_field(photon);
        for (const auto &v : field.values())
            field_zero = field_zero && v == Complex(0.0, 0.0);
        const auto n = count_rate(photon);
        mass_err = std::max(mass_err, std::abs(n.integral() - 1.0));
        const auto coherent = count_rate(CoherentState(nu));
        for (std::size_t j = 0; j < grid.n_points(); ++j)
            rate_err = std::max(rate_err, std::abs(n[j] - coherent[j]));
    }
    o.require(field_zero, "mean field exactly zero");
    o.require(mass_err <= 1e-9, "|int n dt - 1| " + sci(mass_err));
    o.require(rate_err <= 1e-12, "coherent vs single-photon n(t) " + sci(rate_err));
    return o;
}

Outcome all_pass_cavity()
{
    Outcome o;
    const SampledGrid grid(kPoints, 0.01);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> gamma(0.05, 5.0), delta(-3.0, 3.0), omega(-100.0, 100.0);
    double norm_err = 0.0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto nu = normalize(SpectralAmplitude(grid, random_spectrum(grid, rng, 3.0)));
        norm_err = std::max(norm_err, std::abs(norm(apply(CavityParams(gamma(rng), delta(rng)), nu)) - 1.0));
    }
    o.require(norm_err <= 1e-12, "norm error " + sci(norm_err));

    double resonance_err = 0.0;
    double modulus_err = 0.0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        const CavityParams p(gamma(rng), delta(rng));
        resonance_err = std::max(resonance_err, std::abs(transfer_function(p, p.delta()) - 1.0));
        modulus_err = std::max(modulus_err, std::abs(std::abs(transfer_function(p, omega(rng))) - 1.0));
    }
    o.require(resonance_err <= 1e-14, "|H(delta) - 1| " + sci(resonance_err));
    o.require(modulus_err <= 1e-14, "||H| - 1| " + sci(modulus_err));
    return o;
}

Outcome delay_and_broadening()
{
    Outcome o;
    for (double gamma : {1.0, 4.0})
    {
        const SampledGrid grid(kPoints, 0.0015 * gamma);
        const SinglePhotonState in(gaussian_amplitude(grid, gamma / 100.0));
        const CavityParams p(gamma, 0.0);
        const auto before = pulse_stats(count_rate(in));
        const auto after = pulse_stats(count_rate(apply(p, in)));
        const double delay = after.mean_time - before.mean_time;
        const double rel = std::abs(delay - 4.0 / gamma) / (4.0 / gamma);
        o.require(rel <= 0.05, "gamma " + sci(gamma) + ": delay " + sci(delay) + " vs " + sci(4.0 / gamma));
        o.require(after.rms_width > before.rms_width,
                  "width " + std::to_string(before.rms_width) + " -> " + std::to_string(after.rms_width));
    }
    return o;
}

Outcome oracle_reduction()
{
    Outcome o;
    const FmPoint fm;
    const ModulationParams off(0.0, fm.big_omega);
    const auto cfg = OracleConfig::automatic(fm.grid, fm.cavity, off);
    const auto static_out = oracle_simulate(fm.cavity, off, fm.nu, cfg);
    const double reduction = relative_l2_distance(static_out.nu_out, apply(fm.cavity, fm.nu));
    o.require(reduction <= 1e-4, "eps=0 vs apply " + sci(reduction));

    for (double epsilon : {0.0, 0.05})
    {
        const ModulationParams m(epsilon, fm.big_omega);
        OracleConfig coarse = OracleConfig::automatic(fm.grid, fm.cavity, m);
        OracleConfig fine = coarse;
        fine.dt = coarse.dt / 2.0;
        const double change = relative_l2_distance(oracle_simulate(fm.cavity, m, fm.nu, fine).nu_out,
                                                   oracle_simulate(fm.cavity, m, fm.nu, coarse).nu_out);
        o.require(change <= 1e-5, "step halving at eps=" + sci(epsilon) + ": " + sci(change));
    }
    return o;
}

Outcome oracle_conservation()
{
    Outcome o;
    const FmPoint fm;
    const auto r = fm.oracle(0.05);
    const double drift = std::abs(r.output_norm_squared - 1.0);
    o.require(drift <= 1e-6, "| ||nu_out||^2 - 1 | " + sci(drift));
    return o;
}

Outcome sideband_law()
{
    Outcome o;
    const FmPoint fm;
    const std::vector<double> epsilons{0.01, 0.02, 0.04};
    std::vector<SidebandReport> oracle, two, paper;
    for (double eps : epsilons)
    {
        const ModulationParams m(eps, fm.big_omega);
        oracle.push_back(sideband_report(power(fm.oracle(eps).nu_out), m));
        two.push_back(sideband_report(perturbative_spectrum_two_sideband(fm.cavity, m, fm.nu), m));
        paper.push_back(sideband_report(perturbative_spectrum_paper(fm.cavity, m, fm.nu), m));
    }

    double worst_scaling = 0.0;
    for (std::size_t i = 0; i + 1 < epsilons.size(); ++i)
        for (double ratio : {oracle[i + 1].upper_mass / oracle[i].upper_mass,
                             oracle[i + 1].lower_mass / oracle[i].lower_mass})
            worst_scaling = std::max(worst_scaling, std::abs(ratio / 4.0 - 1.0));
    o.require(worst_scaling <= 0.05, "mass(2 eps)/mass(eps) within " + sci(100.0 * worst_scaling) + "% of 4");

    double worst_two = 0.0;
    for (std::size_t i = 0; i < epsilons.size(); ++i)
    {
        worst_two = std::max(worst_two, std::abs(two[i].upper_mass / oracle[i].upper_mass - 1.0));
        worst_two = std::max(worst_two, std::abs(two[i].lower_mass / oracle[i].lower_mass - 1.0));
    }
    o.require(worst_two <= 0.10, "two-sideband vs oracle within " + sci(100.0 * worst_two) + "%");

    double lo = INFINITY;
    double hi = 0.0;
    for (std::size_t i = 0; i < epsilons.size(); ++i)
    {
        const double ratio = paper[i].upper_mass / oracle[i].upper_mass;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    o.require(lo >= 3.2 && hi <= 4.8, "printed/oracle sideband ratio " + sci(lo) + ".." + sci(hi) + " (target 4 +- 20%)");
    return o;
}

Outcome codes()
{
    Outcome o;
    const SampledGrid grid(kPoints, 0.01);
    std::mt19937_64 rng(8);
    double worst_gram = 0.0;
    double worst_overlap = 0.0;
    std::size_t vectors = 0;
    std::size_t failures = 0;

    auto exercise = [&](const CodeBook &book) {
        const std::size_t k = book.size();
        const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        worst_gram = std::max(worst_gram, (book.gram() - eye).cwiseAbs().maxCoeff());
        for (unsigned long v = 1; v < (1UL << k); ++v)
        {
            const auto s = SymbolVector::from_index(v, k);
            ++vectors;
            if (!(decode(book, encode(book, s).amplitude()).bits == s))
                ++failures;
        }
        for (int trial = 0; trial < 3; ++trial)
        {
            const auto nu = normalize(SpectralAmplitude(grid, random_spectrum(grid, rng, 2.0)));
            const auto freq = decode(book, nu).overlaps;
            const auto time = time_domain_overlaps(book, nu);
            for (std::size_t i = 0; i < k; ++i)
                worst_overlap = std::max(worst_overlap, std::abs(freq[i] - time[i]));
        }
    };

    for (std::size_t k = 1; k <= 10; ++k)
    {
        exercise(make_timebin_codebook(grid, k, 20.0));

        // Overlapping Gaussian pulses, orthonormalized.
        std::vector<SpectralAmplitude> raw;
        for (std::size_t i = 0; i < k; ++i)
            raw.push_back(gaussian_amplitude(grid, 0.5, 0.0, 3.0 * (static_cast<double>(i) - k / 2.0)));
        exercise(orthonormalize(raw));
    }
    o.require(failures == 0, std::to_string(vectors - failures) + "/" + std::to_string(vectors) + " symbol vectors round-trip");
    o.require(worst_gram <= 1e-10, "max |G - I| " + sci(worst_gram));
    o.require(worst_overlap <= 1e-10, "time vs frequency overlaps " + sci(worst_overlap));
    return o;
}

int run_cli(const std::string &args, const fs::path &log)
{
    const std::string cmd = std::string("\"") + PHOTON_SHAPER_EXE + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool same_tree(const fs::path &a, const fs::path &b)
{
    std::size_t files = 0;
    for (const auto &entry : fs::recursive_directory_iterator(a))
    {
        if (!entry.is_regular_file())
            continue;
        const fs::path other = b / fs::relative(entry.path(), a);
        if (!fs::exists(other))
            return false;
        std::ifstream x(entry.path(), std::ios::binary);
        std::ifstream y(other, std::ios::binary);
        const std::string sx((std::istreambuf_iterator<char>(x)), std::istreambuf_iterator<char>());
        const std::string sy((std::istreambuf_iterator<char>(y)), std::istreambuf_iterator<char>());
        if (sx != sy)
            return false;
        ++files;
    }
    return files > 0;
}

Outcome cli_contract()
{
    Outcome o;
    const fs::path work = fs::temp_directory_path() / "photon_shaper_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);
    const fs::path configs = CLI_CONFIG_DIR;
    const fs::path log = work / "log.txt";
    auto cfg = [&](const char *name) { return "--config \"" + (configs / name).string() + "\""; };
    auto out = [&](const char *name) { return "--out \"" + (work / name).string() + "\""; };

    bool deterministic = true;
    const std::vector<std::pair<std::string, std::string>> runs{
        {"pulse " + cfg("pulse.json"), "pulse"},
        {"cavity " + cfg("cavity.json"), "cavity"},
        {"fm " + cfg("fm.json") + " --method oracle", "fm"},
        {"code " + cfg("code.json") + " --action encode", "code"},
    };
    for (const auto &[args, name] : runs)
    {
        const int a = run_cli(args + " " + out((name + "_a").c_str()), log);
        const int b = run_cli(args + " " + out((name + "_b").c_str()), log);
        deterministic = deterministic && a == 0 && b == 0 && same_tree(work / (name + "_a"), work / (name + "_b"));
    }
    o.require(deterministic, "byte-identical reruns");

    const int invalid = run_cli("pulse " + cfg("unknown_key.json") + " " + out("bad"), log);
    const int zero = run_cli("pulse " + cfg("zero_pulse.json") + " " + out("zero"), log);
    const int numerical = run_cli("fm " + cfg("fm.json") + " --set checks.oracle_tolerance=1e-15 " + out("num"), log);
    o.require(invalid == 2 && zero == 2, "invalid config exits 2");
    o.require(numerical == 3, "numerical failure exits 3");
    fs::remove_all(work);
    return o;
}

struct Criterion
{
    int id;
    const char *name;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char **argv)
{
    const std::vector<Criterion> criteria{
        {1, "transform fidelity", transform_fidelity},
        {2, "single-photon contrast", single_photon_contrast},
        {3, "all-pass cavity", all_pass_cavity},
        {4, "delay and broadening", delay_and_broadening},
        {5, "oracle reduction", oracle_reduction},
        {6, "oracle conservation", oracle_conservation},
        {7, "sideband law", sideband_law},
        {8, "pulse codes", codes},
        {9, "CLI contract", cli_contract},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto &c : criteria)
    {
        if (!selected.empty() && !selected.contains(c.id))
            continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > 10.0)
            o.require(false, "runtime over 10 s");
        std::printf("[%s] criterion %d (%s): %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.str().c_str(), seconds);
        if (!o.pass)
            ++failed;
    }
    return failed == 0 ? 0 : 1;
}
