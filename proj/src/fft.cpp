#include "lmpred/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <new>

namespace lmpred
{
namespace
{
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

fftw_plan inplace_plan(std::size_t n, fftw_complex* data)
{
    static std::map<std::size_t, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto it = plans.find(n);
    if (it != plans.end())
        return it->second;
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), data, data,
                                   FFTW_FORWARD, FFTW_ESTIMATE);
    plans.emplace(n, p);
    return p;
}
}  // namespace

template<class T>
T* FftAllocator<T>::allocate(std::size_t n)
{
    void* p = fftw_malloc(n * sizeof(T));
    if (!p)
        throw std::bad_alloc();
    return static_cast<T*>(p);
}

template<class T>
void FftAllocator<T>::deallocate(T* p, std::size_t) noexcept
{
    fftw_free(p);
}

template struct FftAllocator<double>;
template struct FftAllocator<std::complex<double>>;

void fft_forward(ComplexVec& data)
{
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan p = inplace_plan(data.size(), ptr);
    fftw_execute_dft(p, ptr, ptr);
}

std::vector<std::complex<double>> fft_real(std::vector<double> const& x)
{
    std::size_t n = x.size();
    RealVec in(x.begin(), x.end());
    ComplexVec out(n / 2 + 1);
    fftw_plan p;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                 reinterpret_cast<fftw_complex*>(out.data()),
                                 FFTW_ESTIMATE);
    }
    fftw_execute(p);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(p);
    }
    return {out.begin(), out.end()};
}

}  // namespace lmpred
