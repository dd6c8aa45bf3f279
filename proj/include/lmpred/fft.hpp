#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace lmpred
{
// Allocator returning SIMD-aligned storage suitable for FFTW.
template<class T>
struct FftAllocator
{
    using value_type = T;
    FftAllocator() = default;
    template<class U>
    FftAllocator(FftAllocator<U> const&)
    {
    }
    T* allocate(std::size_t n);
    void deallocate(T* p, std::size_t) noexcept;
    template<class U>
    bool operator==(FftAllocator<U> const&) const
    {
        return true;
    }
};

using ComplexVec = std::vector<std::complex<double>, FftAllocator<std::complex<double>>>;
using RealVec = std::vector<double, FftAllocator<double>>;

// In-place forward DFT: x_k <- sum_j x_j exp(-2 pi i j k / n).
void fft_forward(ComplexVec& data);

// One-sided DFT of a real sequence: n/2 + 1 coefficients.
std::vector<std::complex<double>> fft_real(std::vector<double> const& x);

}  // namespace lmpred
