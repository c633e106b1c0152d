#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dfgof/vecmath.hpp"

namespace dfgof {

// A vector of unit Euclidean length in R^m, m >= 2.
class UnitVector {
public:
    explicit UnitVector(Vec coords);

    const Vec& coords() const { return coords_; }
    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }

private:
    Vec coords_;
};

enum class RotationForm { identity, two_subspace, four_subspace, householder, composed };

// An orthogonal operator on R^m stored as a product of stages, each stage a
// rank-one perturbation of the identity: x -> x + sum_k u_k <v_k, x>.
// Application costs O(m) per stored factor; no dense matrix is kept.
class RotationOp {
public:
    struct RankOneUpdate {
        Vec u;
        Vec v;
    };
    using Stage = std::vector<RankOneUpdate>;

    static RotationOp identity(std::size_t dim);
    RotationOp(std::size_t dim, RotationForm form, std::vector<Stage> stages,
               bool conditioning_warning = false);

    Vec apply(const Vec& x) const;
    Vec apply_transpose(const Vec& x) const;
    RotationOp transpose() const;

    // Dense column-major materialization; intended for tests only.
    std::vector<Vec> materialize() const;

    std::size_t dim() const { return dim_; }
    RotationForm form() const { return form_; }
    bool conditioning_warning() const { return conditioning_warning_; }

    friend RotationOp compose(const RotationOp& first, const RotationOp& second);

private:
    std::size_t dim_;
    RotationForm form_;
    std::vector<Stage> stages_;
    bool conditioning_warning_;
};

enum class BasisMode { gram_schmidt, symmetric };

// The two pinned directions on each side of the four-subspace rotation plus
// the orthonormal completions of their spans.
struct GeometryBundle {
    UnitVector q;
    UnitVector qhat;
    UnitVector r;
    UnitVector rhat;
    UnitVector a3;
    UnitVector a4;
    UnitVector b3;
    UnitVector b4;
    double rho;  // correlation of the two residual directions (symmetric mode)
    BasisMode mode;
};

// q - <q,r> r and its norm mu.
std::pair<Vec, double> orthogonal_part(const UnitVector& q, const UnitVector& r);

// The operator that rotates q onto r inside span{q,r} and fixes its
// orthocomplement. Returns the identity when q and r coincide.
RotationOp build_rotation_2d(const UnitVector& q, const UnitVector& r);

// Reflection swapping q and r, identity on span{q,r}-orthocomplement.
RotationOp householder_map(const UnitVector& q, const UnitVector& r);

GeometryBundle build_bases(const UnitVector& q, const UnitVector& qhat, const UnitVector& r,
                           const UnitVector& rhat, BasisMode mode);

// Maps q->r, qhat->rhat, a3->b3, a4->b4 and fixes the orthocomplement of the
// four-dimensional span.
RotationOp build_rotation_4d(const GeometryBundle& bundle);

// Applying the result equals applying `first`, then `second`.
RotationOp compose(const RotationOp& first, const RotationOp& second);

}  // namespace dfgof
