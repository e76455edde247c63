#include "formality/geography.hpp"

#include <sstream>

namespace formality {

std::string to_string(Flavor f) {
    return f == Flavor::symplectic ? "symplectic" : "contact";
}

std::string to_string(GeographyStatus s) {
    switch (s) {
        case GeographyStatus::realized: return "realized";
        case GeographyStatus::out_of_scope: return "exists_but_out_of_engine_scope";
        case GeographyStatus::impossible: return "impossible";
    }
    return "";
}

bool non_formal_pair_exists(int m, int b) {
    return (m >= 3 && b >= 2) || (m >= 5 && b == 1) || (m >= 7 && b == 0);
}

namespace {

const char* kGeographyCitation =
    "Fernandez-Munoz: non-formal compact oriented manifolds with b1 = b exist in dimension m "
    "iff m >= 3 and b >= 2, or m >= 5 and b = 1, or m >= 7 and b = 0";

ModelRecipe pad_with_spheres(ModelRecipe base, int copies) {
    for (int i = 0; i < copies; ++i)
        base = ModelRecipe::tensor(std::move(base), ModelRecipe::s2());
    return base;
}

ModelRecipe pad_with_tori(ModelRecipe base, int copies) {
    for (int i = 0; i < copies; ++i)
        base = ModelRecipe::tensor(std::move(base), ModelRecipe::t2());
    return base;
}

/// Symplectic class of FGG(b) (x) S2^j as an expression over the generator
/// names of the built base model. For b = 3 the class a*c + b*h is used:
/// it is again the class of a left-invariant symplectic form, and unlike
/// a*h + b*c it stays clear of the Massey value-plus-indeterminacy span, so
/// the pulled-back product survives the Gysin quotient of the bundle model.
std::string bundle_euler_class(int b, const Model& base) {
    std::string expr = (b == 2) ? "a*h + b*c" : "a*c + b*h";
    for (const auto& [role, name] : base.roles)
        if (role == "volume")
            expr += " + " + name;
    return expr;
}

GeographyVerdict finish_realized(GeographyVerdict verdict, ModelRecipe recipe,
                                 const std::array<std::string, 3>& class_exprs,
                                 const std::string& citation, std::vector<std::string> notes) {
    Model model = build_model(recipe);
    verdict.status = GeographyStatus::realized;
    verdict.recipe = recipe;
    verdict.citation = citation;
    verdict.realized_dimension = model.dimension;
    verdict.realized_b1 = model.dga.betti(1)[1];

    std::vector<CohomologyClass> classes;
    for (const auto& expr : class_exprs)
        classes.push_back(model.dga.class_of(parse_element(model.dga.algebra(), expr)));
    MasseyResult result = triple_massey(model.dga, classes[0], classes[1], classes[2]);
    notes.push_back("class expressions: " + class_exprs[0] + ", " + class_exprs[1] + ", " +
                    class_exprs[2]);
    verdict.certificate = make_triple_certificate(model.dga, recipe, result, {citation}, notes);
    return verdict;
}

GeographyVerdict realize_symplectic(GeographyVerdict verdict) {
    const int m = verdict.query.m, b = verdict.query.b;

    if (m % 2 != 0) {
        verdict.status = GeographyStatus::impossible;
        verdict.citation = "symplectic manifolds are even-dimensional";
        return verdict;
    }

    if (b >= 4 && m >= 6 && m >= 2 * b - 2) {
        int p = (b - 1) / 2;  // ceil((b-2)/2)
        int q = b - 2 - p;
        int spheres = (m - (2 * b - 2)) / 2;
        ModelRecipe recipe = pad_with_spheres(ModelRecipe::mpq(p, q), spheres);
        return finish_realized(std::move(verdict), std::move(recipe), {"b", "a1", "a1"},
                               "Cordero-Fernandez-Gray nilmanifold M(p,q); non-vanishing triple "
                               "Massey product; products with S^2 preserve non-formality",
                               {});
    }
    if ((b == 2 || b == 3) && m >= 4) {
        ModelRecipe recipe = pad_with_spheres(ModelRecipe::fgg(b), (m - 4) / 2);
        return finish_realized(std::move(verdict), std::move(recipe), {"b", "b", "a"},
                               "Fernandez-Gotay-Gray symplectic T^2-bundle over T^2; "
                               "non-vanishing triple Massey product; products with S^2",
                               {});
    }

    verdict.status = GeographyStatus::out_of_scope;
    if (b >= 4) {
        verdict.citation =
            "4-dimensional symplectic witnesses arise as Donaldson submanifolds of M(p,q) "
            "(Donaldson; Fernandez-Munoz); analytic input outside this engine";
    } else if (b == 1) {
        verdict.citation =
            "b1 = 1 symplectic examples come from Donaldson submanifold chains over the "
            "Fernandez-Munoz 8-manifold times a Gompf 4-manifold; analytic input outside "
            "this engine";
    } else {
        std::ostringstream cite;
        cite << "b1 = 0 symplectic examples start from the simply-connected Fernandez-Munoz "
                "8-manifold (Betti numbers";
        for (int v : kFernandezMunozEightManifoldBetti)
            cite << " " << v;
        cite << ") times S^2 factors; no finite model of it is in scope";
        verdict.citation = cite.str();
    }
    return verdict;
}

GeographyVerdict realize_contact(GeographyVerdict verdict) {
    const int m = verdict.query.m, b = verdict.query.b;

    if (m % 2 == 0) {
        verdict.status = GeographyStatus::impossible;
        verdict.citation = "contact manifolds are odd-dimensional";
        return verdict;
    }

    if (b >= 2) {
        int b0 = (b % 2 == 0) ? 2 : 3;
        int tori = (b - b0) / 2;
        int rest = m - 2 * tori;  // dimension left for the Boothby-Wang total
        if (m >= 5 && rest >= 5) {
            int n_prime = (rest - 1) / 2;
            ModelRecipe base = pad_with_spheres(ModelRecipe::fgg(b0), n_prime - 2);
            Model base_model = build_model(base);
            ModelRecipe bundle =
                ModelRecipe::s1_bundle(std::move(base), bundle_euler_class(b0, base_model));
            ModelRecipe recipe = pad_with_tori(std::move(bundle), tori);
            std::vector<std::string> notes = {
                "Boothby-Wang: the Euler class is the class of a left-invariant symplectic "
                "form; integrality is arranged by scaling, which does not change the "
                "rational model",
                "T^2 factors are Bourgeois contact stabilizations; the certificate covers "
                "their cohomological effect (b1 grows by 2 per factor, the Massey product "
                "persists)"};
            if (b0 == 3)
                notes.push_back(
                    "for b1 = 3 the Euler class a*c + b*h is used; the class a*h + b*c meets "
                    "the span of the Massey value and its indeterminacy, so the quotient by "
                    "it would absorb the product at the model level");
            return finish_realized(std::move(verdict), std::move(recipe), {"b", "b", "a"},
                                   "Boothby-Wang circle bundle over a non-formal symplectic "
                                   "base (Fernandez-Gotay-Gray nilmanifold times S^2 factors); "
                                   "Bourgeois T^2 stabilization",
                                   std::move(notes));
        }
        verdict.status = GeographyStatus::out_of_scope;
        if (m == 3) {
            verdict.citation =
                "every orientable 3-manifold is contact (Martinet) and non-formal 3-manifolds "
                "with b1 >= 2 exist (Fernandez-Munoz); no 3-manifold model is in scope";
        } else {
            verdict.citation =
                "the T^2-stabilization chain bottoms out below dimension 5: these pairs come "
                "from non-formal 3-manifolds times S^2 with contact structures (Martinet, "
                "Geiges); no 3-manifold model is in scope";
        }
        return verdict;
    }

    if (non_formal_pair_exists(m, b)) {
        verdict.status = GeographyStatus::out_of_scope;
        verdict.citation =
            "non-formal manifolds with b1 <= 1 exist in this dimension (Fernandez-Munoz), but "
            "no contact witness with b1 <= 1 is in scope";
        return verdict;
    }
    verdict.status = GeographyStatus::impossible;
    verdict.citation = kGeographyCitation;
    return verdict;
}

}  // namespace

GeographyVerdict realize(const GeographyQuery& query) {
    GeographyVerdict verdict;
    verdict.query = query;

    if (query.m < 1 || query.b < 0) {
        verdict.status = GeographyStatus::impossible;
        verdict.citation = "dimension must be >= 1 and b1 >= 0";
        return verdict;
    }
    if (!non_formal_pair_exists(query.m, query.b)) {
        verdict.status = GeographyStatus::impossible;
        verdict.citation = kGeographyCitation;
        return verdict;
    }
    return query.flavor == Flavor::symplectic ? realize_symplectic(std::move(verdict))
                                              : realize_contact(std::move(verdict));
}

}  // namespace formality
