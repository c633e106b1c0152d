#pragma once

namespace dfgof {

// Regularized incomplete beta function I_x(a, b), a, b > 0, x in [0, 1].
// Continued-fraction evaluation, absolute accuracy around 1e-14.
double regularized_incomplete_beta(double a, double b, double x);

// CDF of the Beta(a, b) distribution at x.
inline double beta_cdf(double a, double b, double x) {
    return regularized_incomplete_beta(a, b, x);
}

}  // namespace dfgof
