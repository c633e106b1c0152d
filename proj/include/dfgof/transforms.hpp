#pragma once

#include <utility>

#include "dfgof/parametric.hpp"
#include "dfgof/rotations.hpp"
#include "dfgof/types.hpp"

namespace dfgof {

// Y_i = (nu_i - n p_i) / sqrt(n p_i).
ComponentVector components_y(const SampleCounts& sample, const DiscreteModel& model);

// Z = Y - <Y,r> (r - q) / (1 - <q,r>), q = sqrt(p). Identity when q = r.
ComponentVector transform_simple(const ComponentVector& y, const DiscreteModel& model,
                                 const AnchorPair& anchor);

// Exact inverse of transform_simple (transpose of the underlying rotation).
ComponentVector inverse_transform(const ComponentVector& z, const DiscreteModel& model,
                                  const AnchorPair& anchor);

// First-sample components against the pooled proportions; also returns the
// pooled model whose square roots play the role of q downstream.
std::pair<ComponentVector, DiscreteModel> two_sample_components(const SampleCounts& first,
                                                                const SampleCounts& second);

// Z'_i = Y'_i - <Y',r> (r_i + q_i) / (1 + <q,r>), q = sqrt(mu/n); the signs
// flip relative to the one-sample case because the pooled limit projects
// along -q.
ComponentVector transform_two_sample(const ComponentVector& y2, const DiscreteModel& pooled,
                                     const AnchorPair& anchor);

// Yhat_i = (nu_i - n p_i(theta_hat)) / sqrt(n p_i(theta_hat)).
ComponentVector components_y_hat(const SampleCounts& sample, const ParametricFamily& family,
                                 double theta_hat);

// Builds the geometry bundle for the parametric transform at theta_hat:
// q = sqrt(p(theta_hat)), qhat = normalized score.
GeometryBundle parametric_bundle(const ParametricFamily& family, double theta_hat,
                                 const AnchorPair& anchor,
                                 BasisMode mode = BasisMode::gram_schmidt);

// Zhat = Yhat - <Yhat,a3>(a3 - b3) - <Yhat,a4>(a4 - b4).
ComponentVector transform_parametric(const ComponentVector& yhat, const GeometryBundle& bundle);

// The reflection-product form: Zhat = U_{qtilde,rhat} U_{q,r} Yhat with
// qtilde = U_{q,r} qhat. Agrees with transform_parametric in <Zhat,r>,
// <Zhat,rhat> and norm; coordinates may differ by a re-mixing of span{b3,b4}.
ComponentVector transform_parametric_recursive(const ComponentVector& yhat, const UnitVector& q,
                                               const UnitVector& qhat, const UnitVector& r,
                                               const UnitVector& rhat);

}  // namespace dfgof
