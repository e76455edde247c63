#include "doctest.h"

#include <random>

#include "formality/constructions.hpp"

using namespace formality;

namespace {

CohomologyClass cls_of(const DGA& dga, const std::string& expr) {
    return dga.class_of(parse_element(dga.algebra(), expr));
}

bool kunneth_holds(const DGA& a, const DGA& b, int up_to) {
    DGA t = tensor(a, b);
    auto ba = a.betti(up_to);
    auto bb = b.betti(up_to);
    auto bt = t.betti(up_to);
    for (int k = 0; k <= up_to; ++k) {
        int expected = 0;
        for (int i = 0; i <= k; ++i)
            expected += ba[i] * bb[k - i];
        if (bt[k] != expected)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("tensor: Betti numbers convolve") {
    Model fgg2 = fgg_model(2);
    Model s2 = sphere2_model();
    DGA t = tensor(fgg2.dga, s2.dga);
    CHECK(t.validate().ok);
    CHECK(t.betti(1)[1] == 2);  // b1(fgg(2) x S^2) = 2

    auto lhs = tensor(torus_model(1).dga, torus_model(1).dga).betti(2);
    auto rhs = torus_model(2).dga.betti(2);
    CHECK(lhs == rhs);

    CHECK(kunneth_holds(fgg2.dga, s2.dga, 6));
    CHECK(kunneth_holds(mpq_model(1, 1).dga, torus_model(1).dga, 8));
    CHECK(kunneth_holds(sphere2_model().dga, sphere2_model().dga, 4));
}

TEST_CASE("tensor renames colliding generators deterministically") {
    DGA t = tensor(fgg_model(2).dga, fgg_model(2).dga);
    CHECK(t.algebra().generator_count() == 8);
    CHECK(t.algebra().index_of("a").has_value());
    CHECK(t.algebra().index_of("a_2").has_value());
    CHECK(t.validate().ok);

    DGA again = tensor(fgg_model(2).dga, fgg_model(2).dga);
    CHECK(structurally_equal(t, again));
}

TEST_CASE("tensor is associative up to the canonical renaming") {
    DGA a = fgg_model(2).dga;
    DGA b = torus_model(1).dga;
    DGA c = sphere2_model().dga;
    DGA left = tensor(tensor(a, b), c);
    DGA right = tensor(a, tensor(b, c));
    CHECK(structurally_equal(left, right, /*compare_names=*/false));
}

TEST_CASE("the Massey witness survives tensoring with S^2") {
    Model t = tensor_model(fgg_model(2), sphere2_model());
    const DGA& dga = t.dga;
    MasseyResult r = triple_massey(dga, cls_of(dga, "b"), cls_of(dga, "b"), cls_of(dga, "a"));
    CHECK(r.verdict == MasseyVerdict::non_vanishing);
}

TEST_CASE("circle bundle over the 2-torus is the Heisenberg model") {
    Model t1 = torus_model(1);
    Element w = parse_element(t1.dga.algebra(), "x1*y1");
    CircleBundleModel cb = circle_bundle(t1.dga, w);
    CHECK(cb.total.validate().ok);
    CHECK(cb.total.betti(3) == std::vector<int>{1, 2, 2, 1});
    CHECK(cb.total.algebra().generator(cb.fiber_generator).name == "t");
    CHECK(is_minimal(cb.total).minimal);
}

TEST_CASE("trivial bundle adds a free circle") {
    DGA base = fgg_model(2).dga;
    CircleBundleModel cb = circle_bundle(base, Element::zero(base.algebra()));
    CHECK(cb.total.betti(1)[1] == base.betti(1)[1] + 1);
}

TEST_CASE("bundle over fgg(2) with the symplectic Euler class keeps b1") {
    Model fgg2 = fgg_model(2);
    CircleBundleModel cb = circle_bundle(fgg2.dga, *fgg2.symplectic_form);
    CHECK(cb.total.betti(1)[1] == 2);
}

TEST_CASE("circle bundle validates the Euler class") {
    Model fgg2 = fgg_model(2);
    Element c = parse_element(fgg2.dga.algebra(), "c");
    CHECK_THROWS_AS(circle_bundle(fgg2.dga, c), Error);  // degree 1
    Element ch = parse_element(fgg2.dga.algebra(), "c*h");
    CHECK_THROWS_AS(circle_bundle(fgg2.dga, ch), Error);  // not closed
}

TEST_CASE("gysin consequences hold on the suite bundles") {
    Model fgg2 = fgg_model(2);
    CircleBundleModel cb = circle_bundle(fgg2.dga, *fgg2.symplectic_form);
    GysinReport report = gysin_report(cb);
    CHECK(report.w_class_nonzero);
    CHECK(report.h1_iso);
    CHECK(report.h2_kernel_dim == 1);
    CHECK(report.h2_kernel_is_euler_span);
    CHECK(report.consistent);

    CircleBundleModel trivial = circle_bundle(fgg2.dga, Element::zero(fgg2.dga.algebra()));
    GysinReport triv = gysin_report(trivial);
    CHECK_FALSE(triv.w_class_nonzero);
    CHECK_FALSE(triv.h1_iso);
    CHECK(triv.h1_total == triv.h1_base + 1);
    CHECK(triv.h2_kernel_dim == 0);
    CHECK(triv.consistent);

    Model t2 = torus_model(2);
    CircleBundleModel tcb = circle_bundle(t2.dga, parse_element(t2.dga.algebra(), "x1*y1"));
    GysinReport treport = gysin_report(tcb);
    CHECK(treport.h2_kernel_dim == 1);
    CHECK(treport.h2_kernel_is_euler_span);
    CHECK(treport.consistent);
}

TEST_CASE("pullback massey over fgg(2): non-vanishing upstairs") {
    Model fgg2 = fgg_model(2);
    CircleBundleModel cb = circle_bundle(fgg2.dga, *fgg2.symplectic_form);
    PullbackMassey pm = pullback_massey(cb, cls_of(cb.base, "b"), cls_of(cb.base, "b"),
                                        cls_of(cb.base, "a"));
    CHECK(pm.base_result.verdict == MasseyVerdict::non_vanishing);
    CHECK(pm.total_result.verdict == MasseyVerdict::non_vanishing);
    CHECK(pm.predicted_non_vanishing);
    CHECK(pm.prediction_agrees);
}

TEST_CASE("pullback massey over fgg(3): the Euler class decides the quotient") {
    Model fgg3 = fgg_model(3);

    // With the product symplectic class a*h + b*c the Gysin kernel absorbs
    // the value: [w] lies in the span of the value and the indeterminacy.
    CircleBundleModel absorbed = circle_bundle(fgg3.dga, *fgg3.symplectic_form);
    PullbackMassey pm1 = pullback_massey(absorbed, cls_of(absorbed.base, "b"),
                                         cls_of(absorbed.base, "b"), cls_of(absorbed.base, "a"));
    CHECK(pm1.base_result.verdict == MasseyVerdict::non_vanishing);
    CHECK(pm1.total_result.verdict == MasseyVerdict::vanishes);
    CHECK_FALSE(pm1.predicted_non_vanishing);
    CHECK(pm1.prediction_agrees);

    // The left-invariant symplectic class a*c + b*h avoids that span, and
    // the product survives upstairs.
    Element alt = parse_element(fgg3.dga.algebra(), "a*c + b*h");
    CHECK(fgg3.dga.d(alt).is_zero());
    CHECK_FALSE(alt.pow(2).is_zero());
    CircleBundleModel survives = circle_bundle(fgg3.dga, alt);
    PullbackMassey pm2 = pullback_massey(survives, cls_of(survives.base, "b"),
                                         cls_of(survives.base, "b"), cls_of(survives.base, "a"));
    CHECK(pm2.total_result.verdict == MasseyVerdict::non_vanishing);
    CHECK(pm2.predicted_non_vanishing);
    CHECK(pm2.prediction_agrees);
}

TEST_CASE("pullback massey with w = 0: product persists in base x circle") {
    Model fgg2 = fgg_model(2);
    CircleBundleModel cb = circle_bundle(fgg2.dga, Element::zero(fgg2.dga.algebra()));
    PullbackMassey pm = pullback_massey(cb, cls_of(cb.base, "b"), cls_of(cb.base, "b"),
                                        cls_of(cb.base, "a"));
    CHECK(pm.total_result.verdict == MasseyVerdict::non_vanishing);
    CHECK(pm.prediction_agrees);
}

TEST_CASE("build_model evaluates recipes") {
    Model m = build_model(ModelRecipe::tensor(ModelRecipe::fgg(2), ModelRecipe::s2()));
    CHECK(m.dimension == 6);
    CHECK(m.dga.betti(1)[1] == 2);

    Model bundle = build_model(ModelRecipe::s1_bundle(ModelRecipe::fgg(2), "a*h + b*c"));
    CHECK(bundle.dimension == 5);
    CHECK(bundle.dga.betti(1)[1] == 2);

    Model stabilized = build_model(ModelRecipe::parse("TENSOR(S1_BUNDLE(FGG(2),a*h + b*c),T2)"));
    CHECK(stabilized.dimension == 7);
    CHECK(stabilized.dga.betti(1)[1] == 4);
    CHECK(stabilized.dga.validate().ok);
}
