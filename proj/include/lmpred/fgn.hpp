#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "lmpred/fft.hpp"
#include "lmpred/rng.hpp"

namespace lmpred
{
// Autocovariance of the scaled fractional Gaussian noise driving the
// intensity: 0.5 (|cr+1|^{2H} - 2|cr|^{2H} + |cr-1|^{2H}) with H = d + 1/2.
double gamma_z(double r, double c, double d);

// Throws InvalidParameter unless c > 0 and 0 <= d < 1/2.
void validate_covariance(double c, double d);

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

//---------------------------------------------------------------------------//
/*!
 * Davis-Harte circulant embedding of gamma_z sampled on a grid r_j = j*step.
 *
 * Small negative eigenvalues (above -1e-10 times the largest) are clamped
 * to zero; anything more negative raises EmbeddingFailure.
 */
class CirculantEmbedding
{
  public:
    // The circulant is doubled until its eigenvalues pass the tolerance,
    // up to half-size max(max_padding * n, min_padded_size).
    static constexpr std::size_t max_padding = 16;
    static constexpr std::size_t min_padded_size = std::size_t(1) << 20;

    CirculantEmbedding(std::size_t n, double step, double c, double d);
    // Embedding of an arbitrary covariance sequence cov[0..n].
    explicit CirculantEmbedding(std::vector<double> const& cov);

    std::size_t size() const { return n_; }
    double step() const { return step_; }
    double min_eigenvalue() const { return min_eig_; }
    double max_eigenvalue() const { return max_eig_; }
    std::size_t embedding_size() const { return scale_.size(); }

    // One FFT yields two independent sequences of length n.
    void sample_pair(RandomStream& rng, std::vector<double>& first,
                     std::vector<double>& second) const;

  private:
    std::size_t n_;
    double step_;
    double min_eig_ = 0;
    double max_eig_ = 0;
    std::vector<double> scale_;  // sqrt(eig_k / size)

    bool factor(std::vector<double> const& cov);
    void check() const;
};

// Shared embeddings keyed on (n, step, c, d); eigenvalues are reused across
// paths with the same covariance.
std::shared_ptr<CirculantEmbedding const>
cached_embedding(std::size_t n, double step, double c, double d);

//---------------------------------------------------------------------------//
/*!
 * Stream of fGn sequences. Each FFT produces a pair; the second member is
 * returned by the following call before a new FFT is drawn.
 */
class FgnGenerator
{
  public:
    FgnGenerator(std::size_t n, double step, double c, double d,
                 std::uint64_t seed);
    FgnGenerator(std::shared_ptr<CirculantEmbedding const> emb,
                 std::uint64_t seed);

    std::vector<double> next();
    void next_pair(std::vector<double>& first, std::vector<double>& second);

  private:
    std::shared_ptr<CirculantEmbedding const> emb_;
    RandomStream rng_;
    std::vector<double> pending_;
    bool have_pending_ = false;
};

std::vector<double> simulate_fgn(std::size_t n, double step, double c,
                                 double d, std::uint64_t seed);

}  // namespace lmpred
