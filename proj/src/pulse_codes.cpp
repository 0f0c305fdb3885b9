#include "photon_shaper/pulse_codes.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace photon_shaper
{
namespace
{
Eigen::MatrixXcd gram_of(const std::vector<SpectralAmplitude> &signals)
{
    const auto k = static_cast<Eigen::Index>(signals.size());
    Eigen::MatrixXcd g(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b)
            g(a, b) = inner_product(signals[static_cast<std::size_t>(a)], signals[static_cast<std::size_t>(b)]);
    return g;
}

double identity_deviation(const Eigen::MatrixXcd &g)
{
    return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

} // namespace

CodeBook::CodeBook(std::vector<SpectralAmplitude> signals) : signals_(std::move(signals))
{
    if (signals_.empty())
        throw ValidationError("a codebook needs at least one signal");
    for (const auto &s : signals_)
        require_same_grid(signals_.front().grid(), s.grid(), "codebook");
    const double dev = identity_deviation(gram());
    if (!(dev <= kGramTolerance))
    {
        std::ostringstream os;
        os << "codebook signals are not orthonormal, max |G - I| = " << dev;
        throw ValidationError(os.str());
    }
}

Eigen::MatrixXcd CodeBook::gram() const
{
    return gram_of(signals_);
}

SymbolVector::SymbolVector(std::vector<bool> bits) : bits_(std::move(bits))
{
    if (bits_.empty())
        throw ValidationError("symbol vector must have at least one position");
}

SymbolVector SymbolVector::from_string(const std::string &bits)
{
    std::vector<bool> out;
    out.reserve(bits.size());
    for (char c : bits)
    {
        if (c != '0' && c != '1')
            throw ValidationError("symbol string may only contain '0' and '1': \"" + bits + "\"");
        out.push_back(c == '1');
    }
    return SymbolVector(std::move(out));
}

SymbolVector SymbolVector::from_index(unsigned long value, std::size_t length)
{
    std::vector<bool> out(length);
    for (std::size_t k = 0; k < length; ++k)
        out[k] = ((value >> k) & 1UL) != 0;
    return SymbolVector(std::move(out));
}

std::size_t SymbolVector::set_count() const
{
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<double> SymbolVector::amplitudes() const
{
    const std::size_t n = set_count();
    std::vector<double> out(bits_.size(), 0.0);
    if (n == 0)
        return out;
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < bits_.size(); ++k)
        out[k] = bits_[k] ? a : 0.0;
    return out;
}

std::string SymbolVector::to_string() const
{
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_)
        s.push_back(b ? '1' : '0');
    return s;
}

double snapped_bin_width(const SampledGrid &grid, double bin_width)
{
    if (!std::isfinite(bin_width) || bin_width <= 0.0)
        throw ValidationError("time-bin width must be positive");
    const double samples = std::round(bin_width / grid.delta_t());
    if (samples < 1.0)
        throw ValidationError("time-bin width is shorter than one grid sample");
    return samples * grid.delta_t();
}

CodeBook make_timebin_codebook(const SampledGrid &grid, std::size_t count, double bin_width)
{
    if (count == 0)
        throw ValidationError("time-bin codebook needs K >= 1");
    const auto per_bin = static_cast<std::size_t>(std::llround(snapped_bin_width(grid, bin_width) / grid.delta_t()));
    const std::size_t n = grid.n_points();
    if (per_bin * count > n)
        throw ValidationError("K * bin_width exceeds the grid time span");

    const std::size_t first = (n - per_bin * count) / 2;
    const double height = 1.0 / std::sqrt(static_cast<double>(per_bin) * grid.delta_t());
    std::vector<SpectralAmplitude> signals;
    signals.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
    {
        std::vector<Complex> values(n);
        const std::size_t begin = first + k * per_bin;
        for (std::size_t j = begin; j < begin + per_bin; ++j)
            values[j] = height;
        signals.push_back(to_freq(TimeAmplitude(grid, std::move(values))));
    }
    return CodeBook(std::move(signals));
}

CodeBook orthonormalize(const std::vector<SpectralAmplitude> &raw)
{
    if (raw.empty())
        throw ValidationError("orthonormalize needs at least one signal");
    for (const auto &s : raw)
        require_same_grid(raw.front().grid(), s.grid(), "orthonormalize");

    // Scale-invariant rank test on the Gram matrix of the unit-normalized inputs.
    std::vector<SpectralAmplitude> unit;
    unit.reserve(raw.size());
    for (const auto &s : raw)
        unit.push_back(normalize(s));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram_of(unit), Eigen::EigenvaluesOnly);
    const double smallest = solver.eigenvalues().minCoeff();
    if (!(smallest > 1e-8))
    {
        std::ostringstream os;
        os << "input signals are (numerically) linearly dependent, smallest Gram eigenvalue " << smallest;
        throw ValidationError(os.str());
    }

    std::vector<SpectralAmplitude> basis;
    basis.reserve(unit.size());
    for (const auto &v : unit)
    {
        SpectralAmplitude w = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto &q : basis)
                w = w - q.scaled(inner_product(q, w));
        w = normalize(w);

        const auto values = w.values();
        double peak = 0.0;
        for (const auto &x : values)
            peak = std::max(peak, std::abs(x));
        const auto lead = std::find_if(values.begin(), values.end(),
                                       [&](const Complex &x) { return std::abs(x) > 1e-8 * peak; });
        w = w.scaled(std::conj(*lead) / std::abs(*lead));
        basis.push_back(std::move(w));
    }
    return CodeBook(std::move(basis));
}

SinglePhotonState encode(const CodeBook &book, const SymbolVector &symbols)
{
    if (symbols.size() != book.size())
        throw ValidationError("symbol vector length " + std::to_string(symbols.size()) + " does not match K = " +
                              std::to_string(book.size()));
    if (symbols.set_count() == 0)
        throw ValidationError("cannot encode the all-zero symbol vector (no photon)");

    const auto amps = symbols.amplitudes();
    std::vector<Complex> values(book.grid().n_points());
    for (std::size_t k = 0; k < book.size(); ++k)
    {
        if (amps[k] == 0.0)
            continue;
        const auto sig = book.signal(k).values();
        for (std::size_t j = 0; j < values.size(); ++j)
            values[j] += amps[k] * sig[j];
    }
    return SinglePhotonState(SpectralAmplitude(book.grid(), std::move(values)));
}

DecodeResult decode(const CodeBook &book, const SpectralAmplitude &nu, double threshold)
{
    if (!(threshold > 0.0 && threshold < 1.0))
        throw ValidationError("decode threshold must lie in (0, 1)");
    require_same_grid(book.grid(), nu.grid(), "decode");

    std::vector<Complex> overlaps(book.size());
    double peak = 0.0;
    for (std::size_t k = 0; k < book.size(); ++k)
    {
        overlaps[k] = inner_product(book.signal(k), nu);
        peak = std::max(peak, std::norm(overlaps[k]));
    }
    std::vector<bool> bits(book.size(), false);
    if (peak > 0.0)
        for (std::size_t k = 0; k < book.size(); ++k)
            bits[k] = std::norm(overlaps[k]) >= threshold * peak;
    return DecodeResult{std::move(overlaps), SymbolVector(std::move(bits))};
}

std::vector<Complex> time_domain_overlaps(const CodeBook &book, const SpectralAmplitude &nu)
{
    require_same_grid(book.grid(), nu.grid(), "time_domain_overlaps");
    const TimeAmplitude nu_t = to_time(nu);
    std::vector<Complex> out(book.size());
    for (std::size_t k = 0; k < book.size(); ++k)
        out[k] = inner_product(to_time(book.signal(k)), nu_t);
    return out;
}

CrosstalkReport crosstalk_matrix(const CodeBook &book, const CavityParams &p)
{
    const auto k = static_cast<Eigen::Index>(book.size());
    CrosstalkReport r;
    r.matrix.resize(k, k);
    for (Eigen::Index l = 0; l < k; ++l)
    {
        const auto filtered = apply(p, book.signal(static_cast<std::size_t>(l)));
        r.channel_norms.push_back(norm(filtered));
        for (Eigen::Index a = 0; a < k; ++a)
            r.matrix(a, l) = inner_product(book.signal(static_cast<std::size_t>(a)), filtered);
        const double col = r.matrix.col(l).norm();
        r.column_norms.push_back(col);
        r.leakage.push_back(1.0 - col * col);
    }
    return r;
}

} // namespace photon_shaper
