#include "cusumlab/special_functions.hpp"

#include <cmath>

#include "cusumlab/errors.hpp"

namespace cusumlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_gamma(double z) {
    // valid for z >= 0.5
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        acc += kLanczos[i] / (z - 1.0 + i);
    }
    const double t = z + kLanczosG - 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z - 0.5) * std::exp(-t) * acc;
}

} // namespace

double gamma_fn(double z) {
    if (!(z > 0.0)) {
        throw InvalidInputError("gamma_fn: argument must be > 0");
    }
    if (z < 0.5) {
        // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        return kPi / (std::sin(kPi * z) * lanczos_gamma(1.0 - z));
    }
    return lanczos_gamma(z);
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw InvalidInputError("normal_quantile: p must lie in (0, 1)");
    }
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        const double den =
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
        value = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        value = num / den;
    }
    return (q < 0.0) ? -value : value;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double abs_normal_moment(double r, double variance) {
    if (!(r > 0.0)) {
        throw InvalidInputError("abs_normal_moment: order must be > 0");
    }
    if (!(variance >= 0.0)) {
        throw InvalidInputError("abs_normal_moment: variance must be >= 0");
    }
    if (r == 2.0) {
        return variance;
    }
    return std::pow(2.0, 0.5 * r) / kSqrtPi * gamma_fn(0.5 * (r + 1.0)) *
           std::pow(variance, 0.5 * r);
}

} // namespace cusumlab
