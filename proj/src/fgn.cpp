#include "lmpred/fgn.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>
#include <sstream>
#include <tuple>

#include "lmpred/error.hpp"

namespace lmpred
{
namespace
{
// 0.5 * [(1+e)^a + (1-e)^a - 2] = sum_{k>=1} C(a,2k) e^{2k}
double even_binomial_tail(double a, double eps)
{
    double coef = a;  // C(a, 1)
    double pw = eps;
    double sum = 0;
    for (int j = 1; j < 400; ++j)
    {
        coef *= (a - j) / (j + 1);  // C(a, j+1)
        pw *= eps;
        if ((j + 1) % 2 == 0)
        {
            double term = coef * pw;
            sum += term;
            if (std::fabs(term) <= 1e-18 * std::fabs(sum))
                break;
        }
    }
    return sum;
}
}  // namespace

void validate_covariance(double c, double d)
{
    require(std::isfinite(c) && c > 0, "c must be positive");
    require(std::isfinite(d) && d >= 0 && d < 0.5, "d must lie in [0, 1/2)");
}

double gamma_z(double r, double c, double d)
{
    double x = std::fabs(c * r);
    if (d == 0)
        return x < 1 ? 1 - x : 0.0;
    double a = 2 * d + 1;
    if (x > 2)
        return std::pow(x, a) * even_binomial_tail(a, 1 / x);
    return 0.5
           * (std::pow(x + 1, a) - 2 * std::pow(x, a)
              + std::pow(std::fabs(x - 1), a));
}

bool is_power_of_two(std::size_t n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

std::size_t next_power_of_two(std::size_t n)
{
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

CirculantEmbedding::CirculantEmbedding(std::size_t n, double step, double c,
                                       double d)
    : n_(n), step_(step)
{
    validate_covariance(c, d);
    require(is_power_of_two(n), "fGn length must be a power of two");
    require(std::isfinite(step) && step > 0, "grid step must be positive");
    // The minimal embedding can be slightly indefinite for a fine grid;
    // larger circulants still reproduce the first n lags exactly.
    std::size_t big = n;
    for (;;)
    {
        std::vector<double> cov(big + 1);
        for (std::size_t j = 0; j <= big; ++j)
            cov[j] = gamma_z(static_cast<double>(j) * step, c, d);
        if (factor(cov) || big >= std::max(max_padding * n, min_padded_size))
            break;
        big *= 2;
    }
    check();
}

CirculantEmbedding::CirculantEmbedding(std::vector<double> const& cov)
    : n_(cov.size() - 1), step_(1)
{
    require(cov.size() >= 2 && is_power_of_two(cov.size() - 1),
            "covariance row must have 2^k + 1 entries");
    factor(cov);
    check();
}

bool CirculantEmbedding::factor(std::vector<double> const& cov)
{
    std::size_t n = cov.size() - 1;
    std::size_t big = 2 * n;
    ComplexVec row(big);
    for (std::size_t j = 0; j <= n; ++j)
    {
        row[j] = cov[j];
        if (j > 0 && j < n)
            row[big - j] = cov[j];
    }
    fft_forward(row);

    max_eig_ = 0;
    min_eig_ = row[0].real();
    for (auto const& v : row)
    {
        max_eig_ = std::max(max_eig_, v.real());
        min_eig_ = std::min(min_eig_, v.real());
    }
    scale_.resize(big);
    double inv = 1.0 / static_cast<double>(big);
    for (std::size_t k = 0; k < big; ++k)
        scale_[k] = std::sqrt(std::max(row[k].real(), 0.0) * inv);
    return min_eig_ >= -1e-10 * max_eig_;
}

void CirculantEmbedding::check() const
{
    double tol = 1e-10 * max_eig_;
    if (min_eig_ < -tol)
    {
        std::ostringstream os;
        os << "circulant eigenvalue " << min_eig_ << " below tolerance -"
           << tol << " (n=" << n_ << ", embedding=" << scale_.size()
           << ", step=" << step_ << ")";
        throw EmbeddingFailure(os.str());
    }
}

void CirculantEmbedding::sample_pair(RandomStream& rng,
                                     std::vector<double>& first,
                                     std::vector<double>& second) const
{
    std::size_t big = scale_.size();
    ComplexVec w(big);
    for (std::size_t k = 0; k < big; ++k)
    {
        double re = rng.normal();
        double im = rng.normal();
        w[k] = {scale_[k] * re, scale_[k] * im};
    }
    fft_forward(w);
    first.resize(n_);
    second.resize(n_);
    for (std::size_t j = 0; j < n_; ++j)
    {
        first[j] = w[j].real();
        second[j] = w[j].imag();
    }
}

std::shared_ptr<CirculantEmbedding const>
cached_embedding(std::size_t n, double step, double c, double d)
{
    using Key = std::tuple<std::size_t, double, double, double>;
    static std::mutex mtx;
    static std::deque<std::pair<Key, std::shared_ptr<CirculantEmbedding const>>>
        cache;
    constexpr std::size_t capacity = 3;

    Key key{n, step, c, d};
    {
        std::lock_guard<std::mutex> lock(mtx);
        for (auto const& [k, v] : cache)
            if (k == key)
                return v;
    }
    auto emb = std::make_shared<CirculantEmbedding const>(n, step, c, d);
    std::lock_guard<std::mutex> lock(mtx);
    for (auto const& [k, v] : cache)
        if (k == key)
            return v;
    cache.emplace_back(key, emb);
    if (cache.size() > capacity)
        cache.pop_front();
    return emb;
}

FgnGenerator::FgnGenerator(std::size_t n, double step, double c, double d,
                           std::uint64_t seed)
    : FgnGenerator(cached_embedding(n, step, c, d), seed)
{
}

FgnGenerator::FgnGenerator(std::shared_ptr<CirculantEmbedding const> emb,
                           std::uint64_t seed)
    : emb_(std::move(emb)), rng_(seed, Substream::fgn)
{
}

std::vector<double> FgnGenerator::next()
{
    if (have_pending_)
    {
        have_pending_ = false;
        return std::move(pending_);
    }
    std::vector<double> out;
    emb_->sample_pair(rng_, out, pending_);
    have_pending_ = true;
    return out;
}

void FgnGenerator::next_pair(std::vector<double>& first,
                             std::vector<double>& second)
{
    if (have_pending_)
    {
        first = std::move(pending_);
        have_pending_ = false;
        second = next();
        return;
    }
    emb_->sample_pair(rng_, first, second);
}

std::vector<double> simulate_fgn(std::size_t n, double step, double c,
                                 double d, std::uint64_t seed)
{
    return FgnGenerator(n, step, c, d, seed).next();
}

}  // namespace lmpred
