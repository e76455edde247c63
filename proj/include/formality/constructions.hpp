#pragma once

#include <string>
#include <vector>

#include "formality/dga.hpp"
#include "formality/massey.hpp"
#include "formality/models.hpp"

namespace formality {

/// Tensor product of DGAs: generators of A followed by those of B (renamed
/// deterministically on collision), differential acting factor-wise.
DGA tensor(const DGA& lhs, const DGA& rhs);

/// Model-level tensor: dimensions add; symplectic forms add when both
/// factors carry one.
Model tensor_model(const Model& lhs, const Model& rhs);

/// Circle-bundle model over a base with Euler class w: the base plus one new
/// degree-1 generator t with dt = w. base_to_total re-homes base elements
/// into the total algebra (the inclusion morphism).
struct CircleBundleModel {
    DGA base;
    Element euler_class;
    DGA total;
    int fiber_generator = 0;  // index of t in the total algebra

    Element base_to_total(const Element& e) const;
};

/// Throws unless w is a degree-2 cocycle of the base (w = 0 is allowed and
/// gives the trivial bundle).
CircleBundleModel circle_bundle(const DGA& base, const Element& w);

/// Consequences of the Gysin sequence for the bundle model, verified by
/// direct computation: pullback iso on H^1 iff cup-w : H^0 -> H^2 is
/// injective; kernel of the pullback on H^2 spanned by [w].
struct GysinReport {
    int h1_base = 0;
    int h1_total = 0;
    int h1_rank = 0;
    bool h1_iso = false;
    bool w_class_nonzero = false;  // injectivity of cup-w on H^0
    int h2_kernel_dim = 0;
    bool h2_kernel_is_euler_span = false;
    bool consistent = false;  // both long-exact-sequence consequences hold
};
GysinReport gysin_report(const CircleBundleModel& cb);

/// Triple product of degree-1 base classes pulled back to the bundle total,
/// with the Gysin-style prediction checked against the computed verdict.
struct PullbackMassey {
    MasseyResult base_result;
    MasseyResult total_result;
    bool predicted_non_vanishing = false;
    bool prediction_agrees = false;
};
PullbackMassey pullback_massey(const CircleBundleModel& cb, const CohomologyClass& a1,
                               const CohomologyClass& a2, const CohomologyClass& a3);

/// Builds the model a recipe describes. Deterministic: renamings and the
/// generator order depend only on the recipe.
Model build_model(const ModelRecipe& recipe);

}  // namespace formality
