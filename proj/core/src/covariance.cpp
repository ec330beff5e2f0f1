#include "cusumlab/covariance.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

namespace cusumlab {

namespace {

// sigma^(-e) as exp(-e log sigma); underflows quietly to 0 for large e,
// which just makes the matrix numerically diagonal.
inline double neg_power(double sigma, double exponent) {
    return std::exp(-exponent * std::log(sigma));
}

} // namespace

void validate(const CovarianceSpec& spec) {
    if (spec.n < 1) {
        throw InvalidInputError("covariance spec: n must be >= 1");
    }
    if (!(spec.sigma > 1.0) || !std::isfinite(spec.sigma)) {
        throw InvalidInputError("covariance spec: sigma must be finite and > 1");
    }
}

SquareMatrix::SquareMatrix(int dim)
    : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0.0) {
    if (dim < 1) {
        throw InvalidInputError("SquareMatrix: dim must be >= 1");
    }
}

double marginal_variance(const CovarianceSpec& spec, int j) {
    validate(spec);
    if (j < 1 || j > spec.n) {
        throw InvalidInputError("marginal_variance: index out of range");
    }
    const double n = spec.n;
    return j / n + j * neg_power(spec.sigma, n + j) / (spec.sigma - 1.0);
}

SquareMatrix build_sigma(const CovarianceSpec& spec) {
    validate(spec);
    const int n = spec.n;
    SquareMatrix m(n);
    for (int i = 1; i <= n; ++i) {
        m(i - 1, i - 1) = marginal_variance(spec, i);
        for (int j = i + 1; j <= n; ++j) {
            const double v = -neg_power(spec.sigma, static_cast<double>(n) + i + j);
            m(i - 1, j - 1) = v;
            m(j - 1, i - 1) = v;
        }
    }
    return m;
}

void validate_covariance(const SquareMatrix& m) {
    const int n = m.dim();
    for (int i = 0; i < n; ++i) {
        if (!(m(i, i) > 0.0)) {
            throw InvalidInputError("covariance: nonpositive diagonal entry");
        }
        for (int j = 0; j < i; ++j) {
            if (m(i, j) != m(j, i)) {
                throw InvalidInputError("covariance: asymmetric entries");
            }
            if (m(i, j) > 0.0) {
                throw InvalidInputError("covariance: positive off-diagonal entry");
            }
        }
    }
}

CholeskyFactor::CholeskyFactor(int dim, std::vector<double> packed)
    : dim_(dim), packed_(std::move(packed)) {}

double CholeskyFactor::entry(int i, int j) const {
    if (i < 0 || i >= dim_ || j < 0 || j >= dim_) {
        throw InvalidInputError("CholeskyFactor::entry: index out of range");
    }
    if (j > i) {
        return 0.0;
    }
    return packed_[static_cast<std::size_t>(i) * (i + 1) / 2 + j];
}

std::span<const double> CholeskyFactor::row(int i) const {
    return {packed_.data() + static_cast<std::size_t>(i) * (i + 1) / 2,
            static_cast<std::size_t>(i) + 1};
}

std::vector<double> CholeskyFactor::apply(std::span<const double> z) const {
    if (static_cast<int>(z.size()) != dim_) {
        throw InvalidInputError("CholeskyFactor::apply: length mismatch");
    }
    std::vector<double> out(dim_);
    const double* l = packed_.data();
    for (int i = 0; i < dim_; ++i) {
        double acc = 0.0;
        for (int j = 0; j <= i; ++j) {
            acc += l[j] * z[j];
        }
        out[i] = acc;
        l += i + 1;
    }
    return out;
}

CholeskyFactor cholesky_factor(const SquareMatrix& cov) {
    const int n = cov.dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            if (std::abs(cov(i, j) - cov(j, i)) > 1e-12) {
                throw InvalidInputError("cholesky_factor: input not symmetric");
            }
        }
    }
    std::vector<double> packed(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i) {
        double* row_i = packed.data() + static_cast<std::size_t>(i) * (i + 1) / 2;
        for (int j = 0; j <= i; ++j) {
            const double* row_j =
                packed.data() + static_cast<std::size_t>(j) * (j + 1) / 2;
            double acc = cov(i, j);
            for (int k = 0; k < j; ++k) {
                acc -= row_i[k] * row_j[k];
            }
            if (j == i) {
                if (!(acc > 0.0)) {
                    throw FactorizationError(i, acc);
                }
                row_i[j] = std::sqrt(acc);
            } else {
                row_i[j] = acc / row_j[j];
            }
        }
    }
    return CholeskyFactor(n, std::move(packed));
}

std::vector<double> sample_row(const CholeskyFactor& factor, StreamRng& rng) {
    const int n = factor.dim();
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) {
        z[i] = rng.next_normal();
    }
    return factor.apply(z);
}

double relative_reconstruction_error(const CholeskyFactor& factor,
                                     const SquareMatrix& cov) {
    if (factor.dim() != cov.dim()) {
        throw InvalidInputError(
            "relative_reconstruction_error: dimension mismatch");
    }
    const int n = cov.dim();
    double err2 = 0.0;
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto row_i = factor.row(i);
        for (int j = 0; j <= i; ++j) {
            const auto row_j = factor.row(j);
            double acc = 0.0;
            for (int k = 0; k <= j; ++k) {
                acc += row_i[k] * row_j[k];
            }
            const double d = acc - cov(i, j);
            const double w = (i == j) ? 1.0 : 2.0; // off-diagonals count twice
            err2 += w * d * d;
            norm2 += w * cov(i, j) * cov(i, j);
        }
    }
    return std::sqrt(err2 / norm2);
}

} // namespace cusumlab
