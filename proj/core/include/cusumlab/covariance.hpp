#pragma once

#include <span>
#include <vector>

#include "cusumlab/errors.hpp"
#include "cusumlab/rng.hpp"

namespace cusumlab {

// Parameters of the dependent-Gaussian noise row: length n and decay base
// sigma > 1.  Entry (i, j), with 1-based indices, is
//   i/n + i sigma^(-n-i) / (sigma - 1)   on the diagonal,
//   -sigma^(-n-i-j)                      off the diagonal.
// The off-diagonal pattern is the canonical reading of the four corner
// entries; all off-diagonals are nonpositive, which is what makes each row
// negatively associated.
struct CovarianceSpec {
    int n;
    double sigma;
};

void validate(const CovarianceSpec& spec);

// Dense symmetric matrix, row-major.
class SquareMatrix {
public:
    explicit SquareMatrix(int dim);

    int dim() const noexcept { return dim_; }
    double operator()(int i, int j) const { return a_[flat(i, j)]; }
    double& operator()(int i, int j) { return a_[flat(i, j)]; }
    const std::vector<double>& data() const noexcept { return a_; }

private:
    std::size_t flat(int i, int j) const {
        return static_cast<std::size_t>(i) * dim_ + j;
    }
    int dim_;
    std::vector<double> a_;
};

// Lower-triangular Cholesky factor, packed row-major (row i holds i+1
// entries).  Produced only by cholesky_factor, so L L^T reproduces the
// factored matrix up to roundoff.
class CholeskyFactor {
public:
    int dim() const noexcept { return dim_; }
    double entry(int i, int j) const;

    // L z for a vector z of length dim().
    std::vector<double> apply(std::span<const double> z) const;

    std::span<const double> row(int i) const;

private:
    friend CholeskyFactor cholesky_factor(const SquareMatrix& cov);
    CholeskyFactor(int dim, std::vector<double> packed);

    int dim_;
    std::vector<double> packed_;
};

SquareMatrix build_sigma(const CovarianceSpec& spec);

// Variance of coordinate j (1-based): j/n + j sigma^(-n-j) / (sigma - 1).
// Evaluates the same expression as the build_sigma diagonal.
double marginal_variance(const CovarianceSpec& spec, int j);

// Checks the covariance invariants on an already-built matrix: symmetry,
// positive diagonal, nonpositive off-diagonal.  Positive definiteness is
// established by cholesky_factor succeeding, not here.
void validate_covariance(const SquareMatrix& m);

// Throws FactorizationError on a nonpositive pivot and InvalidInputError if
// the input is asymmetric beyond 1e-12.
CholeskyFactor cholesky_factor(const SquareMatrix& cov);

// One noise row: L z with z i.i.d. standard normal from the stream.
std::vector<double> sample_row(const CholeskyFactor& factor, StreamRng& rng);

// ||L L^T - cov||_F / ||cov||_F.
double relative_reconstruction_error(const CholeskyFactor& factor,
                                     const SquareMatrix& cov);

} // namespace cusumlab
