#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dfgof/errors.hpp"

namespace dfgof {

using Vec = std::vector<double>;

inline void check_same_dim(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("vector dimensions differ: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
}

inline double dot(const Vec& a, const Vec& b) {
    check_same_dim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// y += c * x
inline void axpy(double c, const Vec& x, Vec& y) {
    check_same_dim(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline Vec scaled(const Vec& x, double c) {
    Vec y(x);
    for (double& v : y) v *= c;
    return y;
}

inline Vec subtract(const Vec& a, const Vec& b) {
    check_same_dim(a, b);
    Vec y(a);
    for (std::size_t i = 0; i < b.size(); ++i) y[i] -= b[i];
    return y;
}

inline Vec normalized(const Vec& x) {
    const double nrm = norm(x);
    if (nrm <= 0.0) throw DegenerateGeometry("cannot normalize a zero vector");
    return scaled(x, 1.0 / nrm);
}

}  // namespace dfgof
