#include "formality/constructions.hpp"

#include <cassert>
#include <set>

namespace formality {

namespace {

std::string fresh_name(const std::set<std::string>& taken, const std::string& base) {
    if (!taken.count(base))
        return base;
    for (int suffix = 2;; ++suffix) {
        std::string candidate = base + "_" + std::to_string(suffix);
        if (!taken.count(candidate))
            return candidate;
    }
}

Element map_monomials(const Element& e, const GradedAlgebra& target, int index_offset) {
    Element out = Element::zero(target);
    for (const auto& [mono, coeff] : e.terms()) {
        Monomial shifted = mono;
        for (auto& [gen, exp] : shifted.factors)
            gen += index_offset;
        out += Element::monomial(target, std::move(shifted), coeff);
    }
    return out;
}

}  // namespace

DGA tensor(const DGA& lhs, const DGA& rhs) {
    std::vector<Generator> gens;
    std::set<std::string> taken;
    for (int i = 0; i < lhs.algebra().generator_count(); ++i) {
        gens.push_back(lhs.algebra().generator(i));
        taken.insert(gens.back().name);
    }
    for (int i = 0; i < rhs.algebra().generator_count(); ++i) {
        Generator g = rhs.algebra().generator(i);
        g.name = fresh_name(taken, g.name);
        taken.insert(g.name);
        gens.push_back(std::move(g));
    }
    GradedAlgebra algebra = make_algebra(std::move(gens));

    int offset = lhs.algebra().generator_count();
    std::map<std::string, Element> diff;
    for (int i = 0; i < lhs.algebra().generator_count(); ++i) {
        const Element& dg = lhs.generator_differential(i);
        if (!dg.is_zero())
            diff[algebra.generator(i).name] = map_monomials(dg, algebra, 0);
    }
    for (int i = 0; i < rhs.algebra().generator_count(); ++i) {
        const Element& dg = rhs.generator_differential(i);
        if (!dg.is_zero())
            diff[algebra.generator(offset + i).name] = map_monomials(dg, algebra, offset);
    }

    std::optional<int> top;
    if (lhs.top_degree() && rhs.top_degree())
        top = *lhs.top_degree() + *rhs.top_degree();
    return DGA::make(algebra, diff, top);
}

Model tensor_model(const Model& lhs, const Model& rhs) {
    Model out;
    out.dga = tensor(lhs.dga, rhs.dga);
    out.dimension = lhs.dimension + rhs.dimension;
    if (lhs.symplectic_form && rhs.symplectic_form) {
        int offset = lhs.dga.algebra().generator_count();
        out.symplectic_form = map_monomials(*lhs.symplectic_form, out.dga.algebra(), 0) +
                              map_monomials(*rhs.symplectic_form, out.dga.algebra(), offset);
    }
    out.description = "tensor(" + lhs.description + "," + rhs.description + ")";
    // Roles survive with the (possibly renamed) generator names.
    for (const auto& [role, name] : lhs.roles)
        out.roles.emplace_back(role, out.dga.algebra().generator(*lhs.dga.algebra().index_of(name)).name);
    int offset = lhs.dga.algebra().generator_count();
    for (const auto& [role, name] : rhs.roles)
        out.roles.emplace_back(role,
                               out.dga.algebra().generator(offset + *rhs.dga.algebra().index_of(name)).name);
    return out;
}

Element CircleBundleModel::base_to_total(const Element& e) const {
    return map_monomials(e, total.algebra(), 0);
}

CircleBundleModel circle_bundle(const DGA& base, const Element& w) {
    if (!w.is_zero()) {
        if (!w.algebra().same_as(base.algebra()))
            throw Error("Euler class must live over the base algebra");
        if (!w.is_homogeneous() || *w.degree() != 2)
            throw Error("Euler class must be homogeneous of degree 2");
        if (!base.d(w).is_zero())
            throw Error("Euler class must be closed");
    }

    std::vector<Generator> gens = base.algebra().generators();
    std::set<std::string> taken;
    for (const auto& g : gens)
        taken.insert(g.name);
    std::string t_name = fresh_name(taken, "t");
    gens.push_back({t_name, 1, std::nullopt});
    GradedAlgebra algebra = make_algebra(std::move(gens));

    std::map<std::string, Element> diff;
    for (int i = 0; i < base.algebra().generator_count(); ++i) {
        const Element& dg = base.generator_differential(i);
        if (!dg.is_zero())
            diff[algebra.generator(i).name] = map_monomials(dg, algebra, 0);
    }
    if (!w.is_zero())
        diff[t_name] = map_monomials(w, algebra, 0);

    CircleBundleModel cb;
    cb.base = base;
    cb.euler_class = w;
    std::optional<int> top;
    if (base.top_degree())
        top = *base.top_degree() + 1;
    cb.total = DGA::make(algebra, diff, top);
    cb.fiber_generator = algebra.generator_count() - 1;
    return cb;
}

GysinReport gysin_report(const CircleBundleModel& cb) {
    GysinReport report;
    auto base_h1 = cb.base.cohomology(1);
    auto total_h1 = cb.total.cohomology(1);
    report.h1_base = base_h1->dimension();
    report.h1_total = total_h1->dimension();

    SparseEliminator h1_span;
    for (const auto& cls : base_h1->classes()) {
        Element mapped = cb.base_to_total(cls.representative);
        SparseVec row;
        if (!mapped.is_zero()) {
            auto coords = total_h1->coordinates_of(mapped);
            for (int c = 0; c < static_cast<int>(coords.size()); ++c)
                if (!is_zero(coords[c]))
                    row.emplace_back(c, coords[c]);
        }
        h1_span.append(std::move(row));
    }
    report.h1_rank = h1_span.rank();
    report.h1_iso = report.h1_rank == report.h1_base && report.h1_rank == report.h1_total;

    // cup-w : H^0 -> H^2 is injective iff [w] != 0.
    report.w_class_nonzero =
        !cb.euler_class.is_zero() && !cb.base.primitive_of(cb.euler_class).has_value();

    // Kernel of the pullback on H^2: base classes whose image class vanishes.
    auto base_h2 = cb.base.cohomology(2);
    auto total_h2 = cb.total.cohomology(2);
    SparseEliminator kernel_elim;
    std::vector<SparseVec> kernel;
    for (int j = 0; j < base_h2->dimension(); ++j) {
        Element mapped = cb.base_to_total(base_h2->classes()[j].representative);
        SparseVec row;
        if (!mapped.is_zero()) {
            auto coords = total_h2->coordinates_of(mapped);
            for (int c = 0; c < static_cast<int>(coords.size()); ++c)
                if (!is_zero(coords[c]))
                    row.emplace_back(c, coords[c]);
        }
        auto dep = kernel_elim.append(std::move(row), j);
        if (dep)
            kernel.push_back(std::move(*dep));
    }
    report.h2_kernel_dim = static_cast<int>(kernel.size());

    if (report.w_class_nonzero) {
        // Expect kernel = span{[w]}.
        if (report.h2_kernel_dim == 1) {
            auto w_coords = base_h2->coordinates_of(cb.euler_class);
            SparseEliminator compare;
            SparseVec w_row;
            for (int c = 0; c < static_cast<int>(w_coords.size()); ++c)
                if (!is_zero(w_coords[c]))
                    w_row.emplace_back(c, w_coords[c]);
            compare.append(std::move(w_row));
            // kernel vector in class coordinates
            SparseVec kernel_class;
            {
                Element combo = Element::zero(cb.base.algebra());
                for (const auto& [idx, coeff] : kernel.front())
                    combo += base_h2->classes()[idx].representative * coeff;
                auto coords = base_h2->coordinates_of(combo);
                for (int c = 0; c < static_cast<int>(coords.size()); ++c)
                    if (!is_zero(coords[c]))
                        kernel_class.emplace_back(c, coords[c]);
            }
            report.h2_kernel_is_euler_span = compare.in_span(kernel_class);
        }
    } else {
        report.h2_kernel_is_euler_span = report.h2_kernel_dim == 0;
    }

    report.consistent = (report.h1_iso == report.w_class_nonzero) && report.h2_kernel_is_euler_span;
    return report;
}

PullbackMassey pullback_massey(const CircleBundleModel& cb, const CohomologyClass& a1,
                               const CohomologyClass& a2, const CohomologyClass& a3) {
    for (const auto* cls : {&a1, &a2, &a3})
        if (cls->degree != 1)
            throw Error("pullback Massey products are computed for degree-1 classes");

    PullbackMassey out;
    out.base_result = triple_massey(cb.base, a1, a2, a3);
    if (out.base_result.verdict == MasseyVerdict::undefined)
        throw Error("base triple product is undefined");

    CohomologyClass t1 = cb.total.class_of(cb.base_to_total(a1.representative));
    CohomologyClass t2 = cb.total.class_of(cb.base_to_total(a2.representative));
    CohomologyClass t3 = cb.total.class_of(cb.base_to_total(a3.representative));
    out.total_result = triple_massey(cb.total, t1, t2, t3);

    // Gysin-style prediction: a non-vanishing degree-(1,1,1) base product
    // stays non-vanishing upstairs when [w] avoids the span of the value and
    // the base indeterminacy.
    if (out.base_result.verdict == MasseyVerdict::non_vanishing) {
        auto h2 = cb.base.cohomology(2);
        SparseEliminator span;
        auto add = [&](const Element& e) {
            SparseVec row;
            if (!e.is_zero()) {
                auto coords = h2->coordinates_of(e);
                for (int c = 0; c < static_cast<int>(coords.size()); ++c)
                    if (!is_zero(coords[c]))
                        row.emplace_back(c, coords[c]);
            }
            span.append(std::move(row));
        };
        add(out.base_result.value_representative);
        for (const auto& e : out.base_result.indeterminacy)
            add(e);
        bool w_nonzero = !cb.euler_class.is_zero() && !cb.base.primitive_of(cb.euler_class).has_value();
        bool w_outside = true;
        if (w_nonzero) {
            auto coords = h2->coordinates_of(cb.euler_class);
            SparseVec row;
            for (int c = 0; c < static_cast<int>(coords.size()); ++c)
                if (!is_zero(coords[c]))
                    row.emplace_back(c, coords[c]);
            w_outside = !span.in_span(row);
        }
        out.predicted_non_vanishing = !w_nonzero || w_outside;
    }
    out.prediction_agrees =
        out.predicted_non_vanishing == (out.total_result.verdict == MasseyVerdict::non_vanishing);
    return out;
}

Model build_model(const ModelRecipe& recipe) {
    switch (recipe.kind) {
        case ModelRecipe::Kind::Mpq:
            return mpq_model(recipe.p, recipe.q);
        case ModelRecipe::Kind::Fgg:
            return fgg_model(recipe.p);
        case ModelRecipe::Kind::S2:
            return sphere2_model();
        case ModelRecipe::Kind::T2:
            return torus_model(1);
        case ModelRecipe::Kind::Tensor:
            return tensor_model(build_model(recipe.children[0]), build_model(recipe.children[1]));
        case ModelRecipe::Kind::S1Bundle: {
            Model base = build_model(recipe.children[0]);
            Element w = parse_element(base.dga.algebra(), recipe.euler_class);
            CircleBundleModel cb = circle_bundle(base.dga, w);
            Model out;
            out.dga = cb.total;
            out.dimension = base.dimension + 1;
            out.roles = base.roles;
            out.roles.emplace_back("fiber", cb.total.algebra().generator(cb.fiber_generator).name);
            out.description = "s1_bundle(" + base.description + ")";
            return out;
        }
    }
    throw Error("unreachable recipe kind");
}

}  // namespace formality
