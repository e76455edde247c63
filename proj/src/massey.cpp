#include "formality/massey.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace formality {

std::string to_string(MasseyVerdict v) {
    switch (v) {
        case MasseyVerdict::undefined: return "undefined";
        case MasseyVerdict::vanishes: return "vanishes";
        case MasseyVerdict::non_vanishing: return "non-vanishing";
        case MasseyVerdict::inconclusive: return "inconclusive";
    }
    return "";
}

namespace {

SparseVec dense_to_sparse(const std::vector<Rational>& coords) {
    SparseVec out;
    for (int i = 0; i < static_cast<int>(coords.size()); ++i)
        if (!is_zero(coords[i]))
            out.emplace_back(i, coords[i]);
    return out;
}

Element bar(const Element& e) {
    auto deg = e.degree();
    if (deg && *deg % 2 == 1)
        return -e;
    return e;
}

void check_same_dga(const DGA& dga, const CohomologyClass& cls) {
    if (!cls.representative.algebra().is_valid())
        return;
    if (!cls.representative.algebra().same_as(dga.algebra()))
        throw Error("cohomology class belongs to a different DGA");
}

}  // namespace

Element triple_massey_value(const Element& alpha1, const Element& alpha3, const Element& xi12,
                            const Element& xi23, int p1) {
    Element value = alpha1 * xi23;
    Element tail = xi12 * alpha3;
    return (p1 % 2 == 0) ? value - tail : value + tail;  // sign (-1)^{p1+1}
}

MasseyResult triple_massey(const DGA& dga, const CohomologyClass& a1, const CohomologyClass& a2,
                           const CohomologyClass& a3) {
    for (const auto* cls : {&a1, &a2, &a3}) {
        check_same_dga(dga, *cls);
        if (cls->degree <= 0)
            throw Error("triple Massey products need classes of positive degree");
    }

    MasseyResult result;
    result.kind = MasseyResult::Kind::triple;
    result.order = 3;
    result.witness.classes = {a1, a2, a3};

    if (!cup(dga, a1, a2).is_zero() || !cup(dga, a2, a3).is_zero()) {
        result.verdict = MasseyVerdict::undefined;
        return result;
    }

    const Element& alpha1 = a1.representative;
    const Element& alpha2 = a2.representative;
    const Element& alpha3 = a3.representative;
    auto xi12 = dga.primitive_of(alpha1 * alpha2);
    auto xi23 = dga.primitive_of(alpha2 * alpha3);
    assert(xi12 && xi23);

    int p1 = a1.degree, p2 = a2.degree, p3 = a3.degree;
    Element value = triple_massey_value(alpha1, alpha3, *xi12, *xi23, p1);
    int value_degree = p1 + p2 + p3 - 1;

    result.witness.xi[{1, 1}] = alpha1;
    result.witness.xi[{2, 2}] = alpha2;
    result.witness.xi[{3, 3}] = alpha3;
    result.witness.xi[{1, 2}] = *xi12;
    result.witness.xi[{2, 3}] = *xi23;
    result.value_representative = value;

    auto value_space = dga.cohomology(value_degree);
    std::vector<Rational> value_coords = value.is_zero()
                                             ? std::vector<Rational>(value_space->dimension(), Rational(0))
                                             : value_space->coordinates_of(value);

    // Indeterminacy a1 * H^{p2+p3-1} + H^{p1+p2-1} * a3.
    SparseEliminator span;
    auto add_products = [&](const CohomologyClass& fixed, int other_degree, bool fixed_left) {
        auto other = dga.cohomology(other_degree);
        for (const auto& cls : other->classes()) {
            Element product = fixed_left ? fixed.representative * cls.representative
                                         : cls.representative * fixed.representative;
            SparseVec row;
            if (!product.is_zero())
                row = dense_to_sparse(value_space->coordinates_of(product));
            if (span.append(std::move(row)) == std::nullopt)
                result.indeterminacy.push_back(product);
        }
    };
    add_products(a1, p2 + p3 - 1, true);
    add_products(a3, p1 + p2 - 1, false);

    bool vanishes = span.in_span(dense_to_sparse(value_coords));
    result.verdict = vanishes ? MasseyVerdict::vanishes : MasseyVerdict::non_vanishing;
    return result;
}

// ---------------------------------------------------------------------------
// Higher products
// ---------------------------------------------------------------------------

namespace {

struct HigherSearch {
    const DGA& dga;
    int k;
    std::vector<CohomologyClass> classes;
    HigherMasseyOptions options;

    // Stage layout: all (i,j) with 1 <= i <= j <= k, (i,j) != (1,k),
    // ordered by width then i. Each stage has an affine choice space:
    // base point (representative / particular primitive) plus a free basis
    // (coboundaries on the diagonal, cocycles off it).
    struct Stage {
        int i, j;
        std::vector<Element> freedom;
    };
    std::vector<Stage> stages;
    long long total_dim = 0;

    std::map<std::pair<int, int>, Element> current;
    long long leaves = 0;
    bool budget_exhausted = false;
    bool any_branch_died = false;

    std::vector<std::vector<Rational>> leaf_values;  // class coordinates
    std::optional<DefiningSystem> zero_witness;
    std::optional<DefiningSystem> first_witness;
    Element first_value;

    explicit HigherSearch(const DGA& d, std::vector<CohomologyClass> cls,
                          const HigherMasseyOptions& opts)
        : dga(d), k(static_cast<int>(cls.size())), classes(std::move(cls)), options(opts) {
        for (int width = 0; width <= k - 2; ++width) {
            for (int i = 1; i + width <= k; ++i) {
                int j = i + width;
                if (i == 1 && j == k)
                    continue;
                Stage stage{i, j, {}};
                int degree = xi_degree(i, j);
                if (width == 0) {
                    for (const auto& cob : dga.cohomology(degree)->coboundary_basis())
                        stage.freedom.push_back(cob);
                } else {
                    for (const auto& coc : dga.cohomology(degree)->cocycle_basis())
                        stage.freedom.push_back(coc);
                }
                total_dim += static_cast<long long>(stage.freedom.size());
                stages.push_back(std::move(stage));
            }
        }
    }

    int xi_degree(int i, int j) const {
        int deg = 0;
        for (int l = i; l <= j; ++l)
            deg += classes[l - 1].degree;
        return deg - (j - i);
    }

    Element rhs_for(int i, int j) const {
        Element rhs = Element::zero(dga.algebra());
        for (int l = i; l < j; ++l)
            rhs += bar(current.at({i, l})) * current.at({l + 1, j});
        return rhs;
    }

    void enumerate_freedom(size_t stage_index, size_t param_index, Element acc) {
        const Stage& stage = stages[stage_index];
        if (param_index == stage.freedom.size()) {
            current[{stage.i, stage.j}] = acc;
            run_stage(stage_index + 1);
            return;
        }
        if (budget_exhausted)
            return;
        enumerate_freedom(stage_index, param_index + 1, acc);
        enumerate_freedom(stage_index, param_index + 1, acc + stage.freedom[param_index]);
    }

    void run_stage(size_t stage_index) {
        if (budget_exhausted)
            return;
        if (stage_index == stages.size()) {
            evaluate_leaf();
            return;
        }
        const Stage& stage = stages[stage_index];
        Element base;
        if (stage.i == stage.j) {
            base = classes[stage.i - 1].representative;
        } else {
            Element rhs = rhs_for(stage.i, stage.j);
            auto primitive = dga.primitive_of(rhs);
            if (!primitive) {
                any_branch_died = true;  // obstructed at this grid point
                return;
            }
            base = *primitive;
        }
        enumerate_freedom(stage_index, 0, base);
    }

    void evaluate_leaf() {
        if (leaves >= options.budget) {
            budget_exhausted = true;
            return;
        }
        ++leaves;
        Element value = Element::zero(dga.algebra());
        for (int l = 1; l < k; ++l)
            value += bar(current.at({1, l})) * current.at({l + 1, k});

        int degree = xi_degree(1, k) + 1;
        auto space = dga.cohomology(degree);
        std::vector<Rational> coords =
            value.is_zero() ? std::vector<Rational>(space->dimension(), Rational(0))
                            : space->coordinates_of(value);
        bool zero_class = std::all_of(coords.begin(), coords.end(),
                                      [](const Rational& c) { return is_zero(c); });
        if (!first_witness) {
            first_witness = DefiningSystem{classes, current};
            first_value = value;
        }
        if (zero_class && !zero_witness)
            zero_witness = DefiningSystem{classes, current};
        leaf_values.push_back(std::move(coords));
    }
};

MasseyVerdict subproduct_verdict(const DGA& dga, const std::vector<CohomologyClass>& classes,
                                 const HigherMasseyOptions& options) {
    if (classes.size() == 3)
        return triple_massey(dga, classes[0], classes[1], classes[2]).verdict;
    return higher_massey(dga, classes, options).verdict;
}

}  // namespace

MasseyResult higher_massey(const DGA& dga, const std::vector<CohomologyClass>& classes,
                           const HigherMasseyOptions& options) {
    int k = static_cast<int>(classes.size());
    if (k < 4)
        throw Error("higher Massey products need k >= 4 classes");
    for (const auto& cls : classes) {
        check_same_dga(dga, cls);
        if (cls.degree <= 0)
            throw Error("Massey products need classes of positive degree");
    }

    MasseyResult result;
    result.kind = MasseyResult::Kind::higher;
    result.order = k;
    result.witness.classes = classes;

    // Definedness condition: the two (k-1)-fold sub-products must vanish
    // simultaneously; a sub-product that is undefined or provably
    // non-vanishing rules a full defining system out.
    std::vector<CohomologyClass> left(classes.begin(), classes.end() - 1);
    std::vector<CohomologyClass> right(classes.begin() + 1, classes.end());
    MasseyVerdict lv = subproduct_verdict(dga, left, options);
    MasseyVerdict rv = subproduct_verdict(dga, right, options);
    if (lv == MasseyVerdict::undefined || lv == MasseyVerdict::non_vanishing ||
        rv == MasseyVerdict::undefined || rv == MasseyVerdict::non_vanishing) {
        result.verdict = MasseyVerdict::undefined;
        result.note = "sub-products do not vanish simultaneously";
        return result;
    }
    if (lv == MasseyVerdict::inconclusive || rv == MasseyVerdict::inconclusive) {
        result.verdict = MasseyVerdict::inconclusive;
        result.note = "sub-product verdict inconclusive";
        return result;
    }

    HigherSearch search(dga, classes, options);
    bool complete_grid = search.total_dim <= search.options.complete_dim_bound &&
                         search.total_dim < 62 &&
                         (1LL << search.total_dim) <= search.options.budget;
    search.run_stage(0);

    std::ostringstream note;
    note << "grid dimension " << search.total_dim << ", systems evaluated " << search.leaves;

    if (search.zero_witness) {
        result.verdict = MasseyVerdict::vanishes;
        result.witness = *search.zero_witness;
        result.value_representative = Element::zero(dga.algebra());
        result.note = note.str();
        return result;
    }

    if (search.first_witness) {
        result.witness = *search.first_witness;
        result.value_representative = search.first_value;
    }

    if (complete_grid && !search.budget_exhausted && !search.any_branch_died &&
        !search.leaf_values.empty()) {
        // The value is multilinear in the grid parameters, so a coordinate
        // that is constant and nonzero over the complete {0,1} grid is
        // constant over the whole rational parameter space.
        size_t dim = search.leaf_values.front().size();
        for (size_t c = 0; c < dim; ++c) {
            const Rational& first = search.leaf_values.front()[c];
            if (is_zero(first))
                continue;
            bool constant = std::all_of(search.leaf_values.begin(), search.leaf_values.end(),
                                        [&](const auto& v) { return v[c] == first; });
            if (constant) {
                result.verdict = MasseyVerdict::non_vanishing;
                note << "; coordinate " << c << " constant over the complete grid";
                result.note = note.str();
                return result;
            }
        }
    }

    if (search.leaf_values.empty() && search.total_dim == 0) {
        result.verdict = MasseyVerdict::undefined;
        result.note = "unique candidate system is obstructed";
        return result;
    }

    result.verdict = MasseyVerdict::inconclusive;
    result.note = note.str();
    return result;
}

// ---------------------------------------------------------------------------
// a-Massey
// ---------------------------------------------------------------------------

MasseyResult a_massey(const DGA& dga, const CohomologyClass& a, const CohomologyClass& b1,
                      const CohomologyClass& b2, const CohomologyClass& b3) {
    for (const auto* cls : {&a, &b1, &b2, &b3}) {
        check_same_dga(dga, *cls);
        if (cls->degree != 2)
            throw Error("a-Massey products need degree-2 classes");
    }

    MasseyResult result;
    result.kind = MasseyResult::Kind::a_massey;
    result.order = 4;
    result.witness.classes = {a, b1, b2, b3};

    std::array<CohomologyClass, 3> b{b1, b2, b3};
    for (const auto& bi : b) {
        if (!cup(dga, a, bi).is_zero()) {
            result.verdict = MasseyVerdict::undefined;
            return result;
        }
    }

    AMasseyWitness witness;
    witness.alpha = a.representative;
    for (int i = 0; i < 3; ++i) {
        witness.beta[i] = b[i].representative;
        auto xi = dga.primitive_of(witness.alpha * witness.beta[i]);
        assert(xi);
        witness.xi[i] = *xi;
    }

    Element value = witness.xi[0] * witness.xi[1] * witness.beta[2] +
                    witness.xi[1] * witness.xi[2] * witness.beta[0] +
                    witness.xi[2] * witness.xi[0] * witness.beta[1];
    result.value_representative = value;
    result.a_witness = witness;

    auto h8 = dga.cohomology(8);
    std::vector<Rational> value_coords =
        value.is_zero() ? std::vector<Rational>(h8->dimension(), Rational(0))
                        : h8->coordinates_of(value);

    // Indeterminacy: sum over pairs of span(<b_i,a,b_j>) * H^3. The triple
    // coset is an affine subspace; its span is value + indeterminacy basis.
    auto h3 = dga.cohomology(3);
    SparseEliminator span;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        MasseyResult triple = triple_massey(dga, b[i], a, b[j]);
        if (triple.verdict == MasseyVerdict::undefined)
            continue;  // unreachable given the cup conditions
        std::vector<Element> coset_span;
        if (!triple.value_representative.is_zero())
            coset_span.push_back(triple.value_representative);
        for (const auto& e : triple.indeterminacy)
            coset_span.push_back(e);
        for (const auto& s : coset_span) {
            for (const auto& h : h3->classes()) {
                Element product = s * h.representative;
                SparseVec row;
                if (!product.is_zero())
                    row = dense_to_sparse(h8->coordinates_of(product));
                if (span.append(std::move(row)) == std::nullopt)
                    result.indeterminacy.push_back(product);
            }
        }
    }

    bool vanishes = span.in_span(dense_to_sparse(value_coords));
    result.verdict = vanishes ? MasseyVerdict::vanishes : MasseyVerdict::non_vanishing;
    return result;
}

// ---------------------------------------------------------------------------
// Certificates and the divisor Betti floor
// ---------------------------------------------------------------------------

std::optional<SFormalityCertificate> not_s_formal_certificate(const DGA& dga, int s) {
    if (s < 0)
        throw Error("s-formality level must be >= 0");
    for (int p1 = 1; p1 <= s; ++p1) {
        for (int p2 = 1; p1 + p2 <= s + 1; ++p2) {
            for (int p3 = 1; p2 + p3 <= s + 1; ++p3) {
                auto h1 = dga.cohomology(p1);
                auto h2 = dga.cohomology(p2);
                auto h3 = dga.cohomology(p3);
                for (int i = 0; i < h1->dimension(); ++i) {
                    for (int j = 0; j < h2->dimension(); ++j) {
                        for (int l = 0; l < h3->dimension(); ++l) {
                            MasseyResult r = triple_massey(dga, h1->classes()[i], h2->classes()[j],
                                                           h3->classes()[l]);
                            if (r.verdict == MasseyVerdict::non_vanishing) {
                                SFormalityCertificate cert;
                                cert.s = s;
                                cert.degrees = {p1, p2, p3};
                                cert.class_indices = {i, j, l};
                                cert.result = std::move(r);
                                return cert;
                            }
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

int donaldson_betti_floor(const Model& model, int p) {
    if (!model.symplectic_form)
        throw Error("divisor Betti floor needs a model with a symplectic form");
    if (model.dimension % 2 != 0)
        throw Error("divisor Betti floor needs an even-dimensional model");
    int n = model.dimension / 2;
    int i = 2 * (n - 1) - p;
    if (i < 0 || i > n - 2)
        throw Error("degree p must equal 2(n-1)-i with 0 <= i <= n-2");

    const DGA& dga = model.dga;
    auto hp = dga.cohomology(p);
    auto hp2 = dga.cohomology(p + 2);
    std::vector<SparseVec> rows;
    for (const auto& cls : hp->classes()) {
        Element product = cls.representative * *model.symplectic_form;
        SparseVec row;
        if (!product.is_zero())
            row = dense_to_sparse(hp2->coordinates_of(product));
        rows.push_back(std::move(row));
    }
    return sparse_rank(std::move(rows));
}

}  // namespace formality
