#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace photon_shaper::detail
{
namespace
{
// FFTW's planner is not thread safe; execution with fftw_execute_dft is.
class PlanCache
{
public:
    ~PlanCache()
    {
        for (auto &[key, plan] : plans_)
            fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int direction)
    {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, direction);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;

        auto *in = fftw_alloc_complex(n);
        auto *out = fftw_alloc_complex(n);
        // ESTIMATE keeps plan selection (and therefore round-off) deterministic.
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, direction, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
        if (plan == nullptr)
            throw std::runtime_error("FFTW plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache &plan_cache()
{
    static PlanCache cache;
    return cache;
}

} // namespace

std::vector<std::complex<double>> centered_dft(std::span<const std::complex<double>> in, Sign sign)
{
    const std::size_t m = in.size();
    if (m % 2 != 0)
        throw std::invalid_argument("centered_dft requires an even length");

    // exp(s i 2 pi (k - c)(j - c) / M) = exp(s i pi M / 2) (-1)^j (-1)^k exp(s i 2 pi k j / M), c = M/2.
    std::vector<std::complex<double>> buffer(in.begin(), in.end());
    for (std::size_t k = 1; k < m; k += 2)
        buffer[k] = -buffer[k];

    std::vector<std::complex<double>> out(m);
    const int direction = sign == Sign::Negative ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = plan_cache().get(m, direction);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex *>(buffer.data()), reinterpret_cast<fftw_complex *>(out.data()));

    const double global = (m % 4 == 0) ? 1.0 : -1.0;
    for (std::size_t j = 0; j < m; ++j)
        out[j] *= (j % 2 == 0) ? global : -global;
    return out;
}

} // namespace photon_shaper::detail
