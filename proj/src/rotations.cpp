#include "dfgof/rotations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dfgof/errors.hpp"

namespace dfgof {

namespace {

constexpr double kDegenerateTol = 1e-12;
constexpr double kConditioningTol = 1e-8;
constexpr double kOrthogonalityTol = 1e-8;
constexpr double kSpanTol = 1e-8;

double distance(const UnitVector& a, const UnitVector& b) {
    return norm(subtract(a.coords(), b.coords()));
}

// Smallest eigenvalue of a small symmetric matrix by cyclic Jacobi sweeps.
double smallest_eigenvalue_sym(std::vector<Vec> a) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    double lo = a[0][0];
    for (std::size_t i = 1; i < n; ++i) lo = std::min(lo, a[i][i]);
    return lo;
}

Vec residual(const Vec& x, const std::vector<const Vec*>& basis) {
    Vec y(x);
    for (const Vec* b : basis) axpy(-dot(*b, y), *b, y);
    return y;
}

}  // namespace

UnitVector::UnitVector(Vec coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw DimensionMismatch("unit vectors need dimension >= 2");
    const double nrm = norm(coords_);
    if (std::fabs(nrm - 1.0) > 1e-12)
        throw DegenerateGeometry("vector norm " + std::to_string(nrm) + " is not 1");
}

RotationOp RotationOp::identity(std::size_t dim) {
    return RotationOp(dim, RotationForm::identity, {});
}

RotationOp::RotationOp(std::size_t dim, RotationForm form, std::vector<Stage> stages,
                       bool conditioning_warning)
    : dim_(dim), form_(form), stages_(std::move(stages)),
      conditioning_warning_(conditioning_warning) {}

Vec RotationOp::apply(const Vec& x) const {
    if (x.size() != dim_) throw DimensionMismatch("operator/vector dimension mismatch");
    Vec y(x);
    for (const Stage& stage : stages_) {
        // All inner products of a stage are taken against the same input.
        std::vector<double> coeffs;
        coeffs.reserve(stage.size());
        for (const RankOneUpdate& f : stage) coeffs.push_back(dot(f.v, y));
        for (std::size_t k = 0; k < stage.size(); ++k) axpy(coeffs[k], stage[k].u, y);
    }
    return y;
}

Vec RotationOp::apply_transpose(const Vec& x) const {
    return transpose().apply(x);
}

RotationOp RotationOp::transpose() const {
    std::vector<Stage> rev;
    rev.reserve(stages_.size());
    for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) {
        Stage s;
        s.reserve(it->size());
        for (const RankOneUpdate& f : *it) s.push_back({f.v, f.u});
        rev.push_back(std::move(s));
    }
    return RotationOp(dim_, form_, std::move(rev), conditioning_warning_);
}

std::vector<Vec> RotationOp::materialize() const {
    std::vector<Vec> cols(dim_);
    Vec e(dim_, 0.0);
    for (std::size_t j = 0; j < dim_; ++j) {
        e[j] = 1.0;
        cols[j] = apply(e);
        e[j] = 0.0;
    }
    return cols;
}

std::pair<Vec, double> orthogonal_part(const UnitVector& q, const UnitVector& r) {
    check_same_dim(q.coords(), r.coords());
    Vec part(q.coords());
    axpy(-dot(q.coords(), r.coords()), r.coords(), part);
    return {part, norm(part)};
}

RotationOp build_rotation_2d(const UnitVector& q, const UnitVector& r) {
    check_same_dim(q.coords(), r.coords());
    const std::size_t m = q.dim();
    const double dist = distance(q, r);
    if (dist <= kDegenerateTol) return RotationOp::identity(m);

    const double c = dot(q.coords(), r.coords());
    const double mu2 = 1.0 - c * c;
    if (mu2 <= kDegenerateTol * kDegenerateTol)
        throw DegenerateGeometry("q and r are antipodal; the two-subspace rotation is undefined");

    // I_{L*} + U  =  I + (r - q) q^T - ((1+c)/mu^2) (r - q) r_perp_q^T
    Vec diff = subtract(r.coords(), q.coords());
    Vec r_perp_q(r.coords());
    axpy(-c, q.coords(), r_perp_q);

    RotationOp::Stage stage;
    stage.push_back({diff, q.coords()});
    stage.push_back({scaled(diff, -(1.0 + c) / mu2), std::move(r_perp_q)});

    const bool warn = (1.0 - c) < kConditioningTol;
    return RotationOp(m, RotationForm::two_subspace, {std::move(stage)}, warn);
}

RotationOp householder_map(const UnitVector& q, const UnitVector& r) {
    check_same_dim(q.coords(), r.coords());
    const std::size_t m = q.dim();
    Vec v = subtract(r.coords(), q.coords());
    const double v2 = dot(v, v);
    if (std::sqrt(v2) <= kDegenerateTol) return RotationOp::identity(m);

    const double hellinger2 = 2.0 * (1.0 - dot(q.coords(), r.coords()));
    if (std::fabs(v2 - hellinger2) > 1e-12 * std::max(1.0, v2))
        throw DegenerateGeometry("||r-q||^2 and 2(1-<q,r>) disagree; inputs are not unit vectors");

    RotationOp::Stage stage;
    stage.push_back({scaled(v, -2.0 / v2), v});
    return RotationOp(m, RotationForm::householder, {std::move(stage)});
}

GeometryBundle build_bases(const UnitVector& q, const UnitVector& qhat, const UnitVector& r,
                           const UnitVector& rhat, BasisMode mode) {
    check_same_dim(q.coords(), r.coords());
    check_same_dim(q.coords(), qhat.coords());
    check_same_dim(r.coords(), rhat.coords());
    if (q.dim() < 4) throw DegenerateGeometry("four-subspace construction needs m >= 4");

    if (std::fabs(dot(q.coords(), qhat.coords())) > kOrthogonalityTol)
        throw NonOrthogonalInputs("q and qhat are not orthogonal");
    if (std::fabs(dot(r.coords(), rhat.coords())) > kOrthogonalityTol)
        throw NonOrthogonalInputs("r and rhat are not orthogonal");

    const std::vector<const Vec*> span = {&q.coords(), &qhat.coords(), &r.coords(),
                                          &rhat.coords()};
    std::vector<Vec> gram(4, Vec(4, 0.0));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) gram[i][j] = dot(*span[i], *span[j]);
    if (smallest_eigenvalue_sym(gram) <= kSpanTol)
        throw DegenerateGeometry("span{q, qhat, r, rhat} is not four-dimensional");

    double rho = 0.0;
    Vec a3, a4;
    if (mode == BasisMode::gram_schmidt) {
        a3 = normalized(residual(r.coords(), {&q.coords(), &qhat.coords()}));
        a4 = normalized(residual(rhat.coords(), {&q.coords(), &qhat.coords(), &a3}));
    } else {
        Vec u = normalized(residual(r.coords(), {&q.coords(), &qhat.coords()}));
        Vec v = normalized(residual(rhat.coords(), {&q.coords(), &qhat.coords()}));
        rho = dot(u, v);
        if (!(std::fabs(rho) < 1.0 - kDegenerateTol))
            throw DegenerateGeometry("residual directions are collinear (|rho| ~ 1)");
        Vec sum(u), dif(u);
        axpy(1.0, v, sum);
        axpy(-1.0, v, dif);
        a3 = scaled(sum, 1.0 / std::sqrt(2.0 * (1.0 + rho)));
        a4 = scaled(dif, 1.0 / std::sqrt(2.0 * (1.0 - rho)));
    }

    Vec b3 = normalized(residual(q.coords(), {&r.coords(), &rhat.coords()}));
    Vec b4 = normalized(residual(qhat.coords(), {&r.coords(), &rhat.coords(), &b3}));

    return GeometryBundle{q,
                          qhat,
                          r,
                          rhat,
                          UnitVector(std::move(a3)),
                          UnitVector(std::move(a4)),
                          UnitVector(std::move(b3)),
                          UnitVector(std::move(b4)),
                          rho,
                          mode};
}

RotationOp build_rotation_4d(const GeometryBundle& bundle) {
    const std::size_t m = bundle.q.dim();
    // Ihat + Uhat = I + (r-q)q^T + (rhat-qhat)qhat^T + (b3-a3)a3^T + (b4-a4)a4^T,
    // valid because {q, qhat, a3, a4} is an orthonormal basis of the span.
    RotationOp::Stage stage;
    stage.push_back({subtract(bundle.r.coords(), bundle.q.coords()), bundle.q.coords()});
    stage.push_back({subtract(bundle.rhat.coords(), bundle.qhat.coords()), bundle.qhat.coords()});
    stage.push_back({subtract(bundle.b3.coords(), bundle.a3.coords()), bundle.a3.coords()});
    stage.push_back({subtract(bundle.b4.coords(), bundle.a4.coords()), bundle.a4.coords()});
    return RotationOp(m, RotationForm::four_subspace, {std::move(stage)});
}

RotationOp compose(const RotationOp& first, const RotationOp& second) {
    if (first.dim() != second.dim())
        throw DimensionMismatch("cannot compose operators of different dimension");
    // Stages run left to right, so concatenation applies `first` then `second`.
    std::vector<RotationOp::Stage> stages(first.stages_);
    stages.insert(stages.end(), second.stages_.begin(), second.stages_.end());
    return RotationOp(first.dim(), RotationForm::composed, std::move(stages),
                      first.conditioning_warning() || second.conditioning_warning());
}

}  // namespace dfgof
