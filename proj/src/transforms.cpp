#include "dfgof/transforms.hpp"

#include <cmath>

#include "dfgof/errors.hpp"

namespace dfgof {

namespace {

constexpr double kDegenerateTol = 1e-12;
constexpr double kConditioningTol = 1e-8;

void check_kind(const ComponentVector& v, ComponentKind expected, const char* what) {
    if (v.kind != expected) throw ProvenanceMismatch(std::string("expected a ") + what);
}

}  // namespace

ComponentVector components_y(const SampleCounts& sample, const DiscreteModel& model) {
    if (sample.dim() != model.dim())
        throw DimensionMismatch("sample and model dimensions differ");
    const double n = double(sample.n());
    ComponentVector y;
    y.values.resize(model.dim());
    for (std::size_t i = 0; i < model.dim(); ++i) {
        const double np = n * model.probs()[i];
        y.values[i] = (double(sample.counts()[i]) - np) / std::sqrt(np);
    }
    y.kind = ComponentKind::raw_y;
    y.provenance = model.hash();
    y.n = sample.n();
    return y;
}

ComponentVector transform_simple(const ComponentVector& y, const DiscreteModel& model,
                                 const AnchorPair& anchor) {
    check_kind(y, ComponentKind::raw_y, "raw_y component vector");
    if (anchor.rhat())
        throw ProvenanceMismatch("the simple transform takes an anchor without rhat");
    if (y.dim() != model.dim() || anchor.r().dim() != model.dim())
        throw DimensionMismatch("component/model/anchor dimensions differ");

    const UnitVector q = model.sqrt_probs();
    const Vec& r = anchor.r().coords();

    ComponentVector z;
    z.kind = ComponentKind::transformed_z;
    z.provenance = provenance_hash(model, anchor);
    z.anchor = anchor.preset();
    z.n = y.n;

    const double dist = norm(subtract(q.coords(), r));
    if (dist <= kDegenerateTol) {
        z.values = y.values;  // q = r: no rotation needed
        return z;
    }
    const double c = dot(q.coords(), r);
    if (1.0 + c <= kDegenerateTol)
        throw DegenerateGeometry("sqrt(p) is antipodal to the anchor");
    z.conditioning_warning = (1.0 - c) < kConditioningTol;

    const double factor = dot(y.values, r) / (1.0 - c);
    z.values = y.values;
    for (std::size_t i = 0; i < z.values.size(); ++i)
        z.values[i] -= factor * (r[i] - q[i]);
    if (anchor.preset() == AnchorPreset::e1) z.values[0] = 0.0;  // exact by construction
    return z;
}

ComponentVector inverse_transform(const ComponentVector& z, const DiscreteModel& model,
                                  const AnchorPair& anchor) {
    check_kind(z, ComponentKind::transformed_z, "transformed_z component vector");
    if (z.provenance != provenance_hash(model, anchor))
        throw ProvenanceMismatch("z was produced under a different model/anchor");

    const UnitVector q = model.sqrt_probs();
    const Vec& r = anchor.r().coords();

    ComponentVector y;
    y.kind = ComponentKind::raw_y;
    y.provenance = model.hash();
    y.n = z.n;

    const double dist = norm(subtract(q.coords(), r));
    if (dist <= kDegenerateTol) {
        y.values = z.values;
        return y;
    }
    // The transpose rotation swaps the roles of q and r.
    const double c = dot(q.coords(), r);
    const double factor = dot(z.values, q.coords()) / (1.0 - c);
    y.values = z.values;
    for (std::size_t i = 0; i < y.values.size(); ++i)
        y.values[i] -= factor * (q[i] - r[i]);
    return y;
}

std::pair<ComponentVector, DiscreteModel> two_sample_components(const SampleCounts& first,
                                                                const SampleCounts& second) {
    if (first.dim() != second.dim())
        throw DimensionMismatch("the two samples have different cell counts");
    const std::size_t m = first.dim();
    const double n1 = double(first.n());
    const double n = double(first.n() + second.n());

    Vec pooled(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t mu = first.counts()[i] + second.counts()[i];
        if (mu == 0)
            throw EmptyPooledCell("pooled cell " + std::to_string(i + 1) +
                                  " is empty; merge cells first");
        pooled[i] = double(mu) / n;
    }
    DiscreteModel pooled_model(std::move(pooled));

    ComponentVector y;
    y.values.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double expected = n1 * pooled_model.probs()[i];
        y.values[i] = (double(first.counts()[i]) - expected) / std::sqrt(expected);
    }
    y.kind = ComponentKind::raw_y;
    y.provenance = pooled_model.hash();
    y.n = first.n();
    return {std::move(y), std::move(pooled_model)};
}

ComponentVector transform_two_sample(const ComponentVector& y2, const DiscreteModel& pooled,
                                     const AnchorPair& anchor) {
    check_kind(y2, ComponentKind::raw_y, "raw_y component vector");
    if (y2.provenance != pooled.hash())
        throw ProvenanceMismatch("components were not built from this pooled model");
    if (anchor.rhat())
        throw ProvenanceMismatch("the two-sample transform takes an anchor without rhat");
    if (anchor.r().dim() != pooled.dim())
        throw DimensionMismatch("anchor/model dimensions differ");

    const UnitVector q = pooled.sqrt_probs();
    const Vec& r = anchor.r().coords();
    const double c = dot(q.coords(), r);

    ComponentVector z;
    z.kind = ComponentKind::transformed_z;
    z.provenance = provenance_hash(pooled, anchor);
    z.anchor = anchor.preset();
    z.n = y2.n;

    const double factor = dot(y2.values, r) / (1.0 + c);
    z.values = y2.values;
    for (std::size_t i = 0; i < z.values.size(); ++i)
        z.values[i] -= factor * (r[i] + q[i]);
    if (anchor.preset() == AnchorPreset::e1) z.values[0] = 0.0;
    return z;
}

ComponentVector components_y_hat(const SampleCounts& sample, const ParametricFamily& family,
                                 double theta_hat) {
    if (sample.dim() != family.m) throw DimensionMismatch("sample/family dimension mismatch");
    if (!family.in_domain(theta_hat)) throw DomainError("theta_hat outside the family domain");
    const Vec p = family.probs(theta_hat);
    for (double v : p)
        if (!(v > 0.0)) throw DomainError("p_i(theta_hat) not positive");

    const double n = double(sample.n());
    ComponentVector yhat;
    yhat.values.resize(family.m);
    for (std::size_t i = 0; i < family.m; ++i) {
        const double np = n * p[i];
        yhat.values[i] = (double(sample.counts()[i]) - np) / std::sqrt(np);
    }
    yhat.kind = ComponentKind::parametric_yhat;
    yhat.provenance = hash_doubles(p);
    yhat.n = sample.n();
    return yhat;
}

GeometryBundle parametric_bundle(const ParametricFamily& family, double theta_hat,
                                 const AnchorPair& anchor, BasisMode mode) {
    if (!anchor.rhat())
        throw ProvenanceMismatch("the parametric transform needs an anchor with rhat");
    if (anchor.r().dim() != family.m) throw DimensionMismatch("anchor/family dimension mismatch");
    const DiscreteModel model(family.probs(theta_hat));
    return build_bases(model.sqrt_probs(), normalized_scores(family, theta_hat), anchor.r(),
                       *anchor.rhat(), mode);
}

ComponentVector transform_parametric(const ComponentVector& yhat, const GeometryBundle& bundle) {
    check_kind(yhat, ComponentKind::parametric_yhat, "parametric_yhat component vector");
    if (yhat.dim() != bundle.q.dim()) throw DimensionMismatch("component/bundle dimensions differ");
    if (std::fabs(dot(yhat.values, bundle.q.coords())) > 1e-8 * std::max(1.0, norm(yhat.values)))
        throw ProvenanceMismatch("yhat is not orthogonal to sqrt(p(theta_hat))");

    const double c3 = dot(yhat.values, bundle.a3.coords());
    const double c4 = dot(yhat.values, bundle.a4.coords());

    ComponentVector zhat;
    zhat.kind = ComponentKind::parametric_zhat;
    zhat.provenance = yhat.provenance;
    zhat.n = yhat.n;
    zhat.values = yhat.values;
    for (std::size_t i = 0; i < zhat.values.size(); ++i) {
        zhat.values[i] -= c3 * (bundle.a3[i] - bundle.b3[i]);
        zhat.values[i] -= c4 * (bundle.a4[i] - bundle.b4[i]);
    }
    return zhat;
}

ComponentVector transform_parametric_recursive(const ComponentVector& yhat, const UnitVector& q,
                                               const UnitVector& qhat, const UnitVector& r,
                                               const UnitVector& rhat) {
    check_kind(yhat, ComponentKind::parametric_yhat, "parametric_yhat component vector");
    const RotationOp u_qr = householder_map(q, r);
    const UnitVector qtilde = UnitVector(normalized(u_qr.apply(qhat.coords())));
    const RotationOp u_tr = householder_map(qtilde, rhat);
    const RotationOp product = compose(u_qr, u_tr);

    ComponentVector zhat;
    zhat.kind = ComponentKind::parametric_zhat;
    zhat.provenance = yhat.provenance;
    zhat.n = yhat.n;
    zhat.values = product.apply(yhat.values);
    return zhat;
}

}  // namespace dfgof
