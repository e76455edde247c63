#include "formality/dga.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace formality {

struct DGA::ExactnessSolver {
    std::vector<Monomial> domain_basis;  // degree d-1
    std::vector<Monomial> image_basis;   // degree d
    SparseEliminator elim;
};

struct DGA::Data {
    GradedAlgebra algebra;
    std::vector<Element> diff;  // per generator index
    std::optional<int> top_degree;

    mutable std::mutex mutex;
    mutable std::map<int, std::shared_ptr<const CohomologySpace>> cohomology_cache;
    mutable std::map<int, std::shared_ptr<const ExactnessSolver>> exactness_cache;
    mutable std::map<int, int> rank_cache;  // rank of d : degree -> degree+1
};

DGA DGA::make(GradedAlgebra algebra, const std::map<std::string, Element>& diff,
              std::optional<int> top_degree) {
    auto data = std::make_shared<Data>();
    data->diff.assign(algebra.generator_count(), Element::zero(algebra));
    for (const auto& [name, image] : diff) {
        auto index = algebra.index_of(name);
        if (!index)
            throw Error("differential given for unknown generator '" + name + "'");
        Element value = image;
        if (!value.algebra().is_valid())
            value = Element::zero(algebra);
        if (!value.algebra().same_as(algebra))
            throw Error("differential of '" + name + "' lives over a different algebra");
        if (!value.is_zero()) {
            auto deg = value.degree();
            if (!deg || *deg != algebra.generator(*index).degree + 1)
                throw Error("differential of '" + name + "' must be homogeneous of degree |g|+1");
        }
        data->diff[*index] = std::move(value);
    }
    data->algebra = std::move(algebra);
    data->top_degree = top_degree;
    DGA dga;
    dga.data_ = std::move(data);
    return dga;
}

const GradedAlgebra& DGA::algebra() const { return data_->algebra; }
const Element& DGA::generator_differential(int index) const { return data_->diff[index]; }
std::optional<int> DGA::top_degree() const { return data_->top_degree; }

Element DGA::d(const Element& u) const {
    const GradedAlgebra& a = data_->algebra;
    if (u.algebra().is_valid() && !u.algebra().same_as(a))
        throw Error("element belongs to a different algebra");
    Element out = Element::zero(a);
    for (const auto& [mono, coeff] : u.terms()) {
        int prefix_degree = 0;
        for (size_t i = 0; i < mono.factors.size(); ++i) {
            const auto [gen, exp] = mono.factors[i];
            const Element& dg = data_->diff[gen];
            if (!dg.is_zero()) {
                Monomial prefix{{mono.factors.begin(), mono.factors.begin() + i}};
                Monomial suffix{{mono.factors.begin() + i + 1, mono.factors.end()}};
                // d(g^e) = e g^{e-1} dg; the sign is the parity of the prefix
                // the differential moves across.
                Element term = Element::monomial(a, std::move(prefix),
                                                 (prefix_degree % 2 == 0) ? coeff : -coeff);
                if (exp > 1)
                    term = term * Element::monomial(a, Monomial{{{gen, exp - 1}}}, exp);
                term = term * dg;
                term = term * Element::monomial(a, std::move(suffix), 1);
                out += term;
            }
            prefix_degree += a.generator(gen).degree * exp;
        }
    }
    return out;
}

ValidationReport DGA::validate() const {
    ValidationReport report;
    for (int i = 0; i < data_->algebra.generator_count(); ++i) {
        Element dd = d(data_->diff[i]);
        if (!dd.is_zero()) {
            report.ok = false;
            report.violations.push_back({data_->algebra.generator(i).name, std::move(dd)});
        }
    }
    return report;
}

SparseVec DGA::to_coords(const Element& e, const std::vector<Monomial>& basis) const {
    SparseVec out;
    out.reserve(e.terms().size());
    for (const auto& [mono, coeff] : e.terms()) {
        auto it = std::lower_bound(basis.begin(), basis.end(), mono);
        if (it == basis.end() || *it != mono)
            throw Error("element has a monomial outside the expected degree basis");
        out.emplace_back(static_cast<int>(it - basis.begin()), coeff);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

namespace {

Element from_coords(const GradedAlgebra& algebra, const std::vector<Monomial>& basis,
                    const SparseVec& coords) {
    Element out = Element::zero(algebra);
    for (const auto& [idx, coeff] : coords)
        out += Element::monomial(algebra, basis[idx], coeff);
    return out;
}

}  // namespace

std::shared_ptr<const CohomologySpace> DGA::cohomology(int degree) const {
    {
        std::lock_guard<std::mutex> lock(data_->mutex);
        auto it = data_->cohomology_cache.find(degree);
        if (it != data_->cohomology_cache.end())
            return it->second;
    }

    auto space = std::make_shared<CohomologySpace>();
    space->degree_ = degree;
    if (degree >= 0) {
        space->basis_ = data_->algebra.basis_of_degree(degree);
        auto image_basis = data_->algebra.basis_of_degree(degree + 1);

        // Cocycles: kernel of d on degree `degree`.
        SparseEliminator kernel_elim;
        std::vector<SparseVec> kernel_vectors;
        for (int i = 0; i < static_cast<int>(space->basis_.size()); ++i) {
            Element de = d(Element::monomial(data_->algebra, space->basis_[i], 1));
            auto dep = kernel_elim.append(to_coords(de, image_basis), i);
            if (dep)
                kernel_vectors.push_back(std::move(*dep));
        }
        for (const auto& vec : kernel_vectors)
            space->cocycles_.push_back(from_coords(data_->algebra, space->basis_, vec));

        // Coboundaries: image of d from degree-1.
        if (degree >= 1) {
            auto lower_basis = data_->algebra.basis_of_degree(degree - 1);
            SparseEliminator image_elim;
            for (const auto& mono : lower_basis) {
                Element de = d(Element::monomial(data_->algebra, mono, 1));
                SparseVec row = to_coords(de, space->basis_);
                if (image_elim.append(std::move(row)) == std::nullopt) {
                    // became a pivot; keep the reduced normalized row
                }
            }
            for (const auto& row : image_elim.pivot_rows()) {
                space->coboundaries_.push_back(from_coords(data_->algebra, space->basis_, row));
                space->quotient_.append(row);
            }
        }

        // Class basis: cocycles independent modulo coboundaries, in order.
        space->class_tag_position_.assign(kernel_vectors.size(), -1);
        for (int k = 0; k < static_cast<int>(kernel_vectors.size()); ++k) {
            auto dep = space->quotient_.append(kernel_vectors[k], k);
            if (!dep) {
                space->class_tag_position_[k] = static_cast<int>(space->classes_.size());
                CohomologyClass cls;
                cls.degree = degree;
                cls.representative = space->cocycles_[k];
                space->classes_.push_back(std::move(cls));
            }
        }
        for (int pos = 0; pos < static_cast<int>(space->classes_.size()); ++pos) {
            std::vector<Rational> coords(space->classes_.size(), Rational(0));
            coords[pos] = 1;
            space->classes_[pos].coordinates = std::move(coords);
        }
    }

    std::lock_guard<std::mutex> lock(data_->mutex);
    auto [it, fresh] = data_->cohomology_cache.emplace(degree, std::move(space));
    return it->second;
}

std::vector<Rational> CohomologySpace::coordinates_of(const Element& z) const {
    std::vector<Rational> out(classes_.size(), Rational(0));
    if (z.is_zero())
        return out;
    SparseVec coords;
    coords.reserve(z.terms().size());
    for (const auto& [mono, coeff] : z.terms()) {
        auto it = std::lower_bound(basis_.begin(), basis_.end(), mono);
        if (it == basis_.end() || *it != mono)
            throw Error("element is not in the degree-" + std::to_string(degree_) + " component");
        coords.emplace_back(static_cast<int>(it - basis_.begin()), coeff);
    }
    auto combo = quotient_.solve(coords);
    if (!combo)
        throw Error("element is not closed: outside the cocycle span");
    for (const auto& [tag, coeff] : *combo) {
        int pos = class_tag_position_[tag];
        assert(pos >= 0);
        out[pos] = coeff;
    }
    return out;
}

bool CohomologyClass::is_zero() const {
    return std::all_of(coordinates.begin(), coordinates.end(),
                       [](const Rational& c) { return formality::is_zero(c); });
}

std::vector<int> DGA::betti(int max_degree) const {
    std::vector<int> dims(max_degree + 2, 0);
    for (int k = 0; k <= max_degree + 1; ++k)
        dims[k] = static_cast<int>(data_->algebra.basis_of_degree(k).size());

    auto rank_of = [&](int k) -> int {
        if (k < 0)
            return 0;
        {
            std::lock_guard<std::mutex> lock(data_->mutex);
            auto it = data_->rank_cache.find(k);
            if (it != data_->rank_cache.end())
                return it->second;
        }
        auto domain = data_->algebra.basis_of_degree(k);
        auto image = data_->algebra.basis_of_degree(k + 1);
        SparseEliminator elim;
        for (const auto& mono : domain) {
            Element de = d(Element::monomial(data_->algebra, mono, 1));
            elim.append(to_coords(de, image));
        }
        int r = elim.rank();
        std::lock_guard<std::mutex> lock(data_->mutex);
        data_->rank_cache.emplace(k, r);
        return r;
    };

    std::vector<int> out(max_degree + 1, 0);
    for (int k = 0; k <= max_degree; ++k)
        out[k] = dims[k] - rank_of(k) - rank_of(k - 1);
    return out;
}

const DGA::ExactnessSolver& DGA::exactness_solver(int degree) const {
    {
        std::lock_guard<std::mutex> lock(data_->mutex);
        auto it = data_->exactness_cache.find(degree);
        if (it != data_->exactness_cache.end())
            return *it->second;
    }
    auto solver = std::make_shared<ExactnessSolver>();
    solver->domain_basis = data_->algebra.basis_of_degree(degree - 1);
    solver->image_basis = data_->algebra.basis_of_degree(degree);
    for (int i = 0; i < static_cast<int>(solver->domain_basis.size()); ++i) {
        Element de = d(Element::monomial(data_->algebra, solver->domain_basis[i], 1));
        solver->elim.append(to_coords(de, solver->image_basis), i);
    }
    std::lock_guard<std::mutex> lock(data_->mutex);
    auto [it, fresh] = data_->exactness_cache.emplace(degree, std::move(solver));
    return *it->second;
}

std::optional<Element> DGA::primitive_of(const Element& z) const {
    if (z.is_zero())
        return Element::zero(data_->algebra);
    if (!z.is_homogeneous())
        throw Error("exactness requires a homogeneous element");
    if (!d(z).is_zero())
        throw Error("exactness requires a closed element");
    int degree = *z.degree();
    if (degree == 0)
        return std::nullopt;  // nonzero constants are never exact
    const ExactnessSolver& solver = exactness_solver(degree);
    auto combo = solver.elim.solve(to_coords(z, solver.image_basis));
    if (!combo)
        return std::nullopt;
    Element primitive = Element::zero(data_->algebra);
    for (const auto& [tag, coeff] : *combo)
        primitive += Element::monomial(data_->algebra, solver.domain_basis[tag], coeff);
    return primitive;
}

CohomologyClass DGA::class_of(const Element& z) const {
    if (z.is_zero())
        throw Error("class_of needs a nonzero element or an explicit degree");
    if (!z.is_homogeneous())
        throw Error("cohomology classes require homogeneous representatives");
    if (!d(z).is_zero())
        throw Error("representative is not closed");
    int degree = *z.degree();
    auto space = cohomology(degree);
    CohomologyClass cls;
    cls.degree = degree;
    cls.representative = z;
    cls.coordinates = space->coordinates_of(z);
    return cls;
}

Element DGA::class_representative(const CohomologyClass& c) const {
    return c.representative;
}

CohomologyClass cup(const DGA& dga, const CohomologyClass& a, const CohomologyClass& b) {
    if (a.representative.algebra().is_valid() && b.representative.algebra().is_valid() &&
        !a.representative.algebra().same_as(b.representative.algebra()))
        throw Error("cup product of classes from different DGAs");
    Element product = a.representative * b.representative;
    int degree = a.degree + b.degree;
    CohomologyClass cls;
    cls.degree = degree;
    cls.representative = product;
    if (product.is_zero())
        cls.coordinates.assign(dga.cohomology(degree)->dimension(), Rational(0));
    else
        cls.coordinates = dga.cohomology(degree)->coordinates_of(product);
    return cls;
}

MinimalityReport is_minimal(const DGA& dga) {
    const GradedAlgebra& a = dga.algebra();
    if (!a.is_free())
        throw Error("minimality is only defined for free algebras (no truncations)");
    int n = a.generator_count();

    // Dependencies of each generator: generators occurring in its differential.
    std::vector<std::vector<int>> deps(n);
    for (int i = 0; i < n; ++i) {
        const Element& dg = dga.generator_differential(i);
        std::vector<bool> seen(n, false);
        for (const auto& [mono, coeff] : dg.terms())
            for (const auto& [gen, exp] : mono.factors)
                seen[gen] = true;
        for (int j = 0; j < n; ++j)
            if (seen[j])
                deps[i].push_back(j);
    }

    for (int i = 0; i < n; ++i) {
        for (int j : deps[i]) {
            if (j == i)
                return {false, "d(" + a.generator(i).name + ") depends on " + a.generator(i).name + " itself"};
            if (a.generator(j).degree > a.generator(i).degree)
                return {false, "d(" + a.generator(i).name + ") contains the higher-degree generator " +
                                   a.generator(j).name};
        }
    }

    // Within each degree block, same-degree dependencies must be acyclic.
    std::map<int, std::vector<int>> blocks;
    for (int i = 0; i < n; ++i)
        blocks[a.generator(i).degree].push_back(i);
    for (const auto& [degree, members] : blocks) {
        std::map<int, int> in_degree;
        for (int i : members)
            in_degree[i] = 0;
        for (int i : members)
            for (int j : deps[i])
                if (a.generator(j).degree == degree)
                    ++in_degree[i];
        std::vector<int> ready;
        for (int i : members)
            if (in_degree[i] == 0)
                ready.push_back(i);
        int processed = 0;
        while (!ready.empty()) {
            int v = ready.back();
            ready.pop_back();
            ++processed;
            for (int w : members)
                for (int j : deps[w])
                    if (j == v && --in_degree[w] == 0)
                        ready.push_back(w);
        }
        if (processed != static_cast<int>(members.size())) {
            for (int i : members)
                if (in_degree[i] > 0)
                    return {false, "circular same-degree dependency through d(" + a.generator(i).name + ")"};
        }
    }
    return {true, ""};
}

Element apply_morphism(const Element& u, const DGA& target, std::span<const Element> images) {
    Element out = Element::zero(target.algebra());
    for (const auto& [mono, coeff] : u.terms()) {
        Element term = Element::one(target.algebra());
        for (const auto& [gen, exp] : mono.factors)
            term = term * images[gen].pow(exp);
        out += term * coeff;
    }
    return out;
}

bool structurally_equal(const DGA& lhs, const DGA& rhs, bool compare_names) {
    const GradedAlgebra& a = lhs.algebra();
    const GradedAlgebra& b = rhs.algebra();
    if (a.generator_count() != b.generator_count())
        return false;
    for (int i = 0; i < a.generator_count(); ++i) {
        const Generator& ga = a.generator(i);
        const Generator& gb = b.generator(i);
        if (ga.degree != gb.degree || ga.truncation != gb.truncation)
            return false;
        if (compare_names && ga.name != gb.name)
            return false;
    }
    for (int i = 0; i < a.generator_count(); ++i)
        if (lhs.generator_differential(i).terms() != rhs.generator_differential(i).terms())
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Minimal model construction
// ---------------------------------------------------------------------------

namespace {

Element transplant(const Element& e, const GradedAlgebra& algebra) {
    Element out = Element::zero(algebra);
    for (const auto& [mono, coeff] : e.terms())
        out += Element::monomial(algebra, mono, coeff);
    return out;
}

struct ModelState {
    std::vector<Generator> generators;
    std::vector<Element> differentials;  // over the current algebra build
    std::vector<Element> images;         // in the target DGA
    std::map<int, int> names_used;       // per-degree counter

    DGA build() const {
        GradedAlgebra algebra = GradedAlgebra::make(generators);
        std::map<std::string, Element> diff;
        for (size_t i = 0; i < generators.size(); ++i)
            if (!differentials[i].is_zero())
                diff[generators[i].name] = transplant(differentials[i], algebra);
        return DGA::make(algebra, diff);
    }

    std::string fresh_name(int degree) {
        int seq = ++names_used[degree];
        return "x" + std::to_string(degree) + "_" + std::to_string(seq);
    }
};

}  // namespace

MinimalModelResult minimal_model_up_to(const DGA& target, int max_degree) {
    if (max_degree < 1 || max_degree > 4)
        throw Error("minimal model construction supports degrees 1 through 4");

    constexpr int kMaxRoundsPerStage = 32;
    constexpr int kMaxGenerators = 512;

    ModelState state;

    for (int k = 1; k <= max_degree - 1; ++k) {
        for (int round = 0;; ++round) {
            if (round >= kMaxRoundsPerStage || static_cast<int>(state.generators.size()) > kMaxGenerators)
                throw Error("minimal model construction did not stabilize at degree " + std::to_string(k));

            DGA model = state.build();
            GradedAlgebra malg = model.algebra();
            std::vector<Element> images;
            images.reserve(state.images.size());
            for (const auto& img : state.images)
                images.push_back(img);

            auto model_hk = model.cohomology(k);
            auto target_hk = target.cohomology(k);

            // Map on H^k, as coordinate rows in the target class basis.
            SparseEliminator image_span;
            for (const auto& cls : model_hk->classes()) {
                Element mapped = apply_morphism(cls.representative, target, images);
                SparseVec row;
                if (!mapped.is_zero()) {
                    auto coords = target_hk->coordinates_of(mapped);
                    for (int c = 0; c < static_cast<int>(coords.size()); ++c)
                        if (!is_zero(coords[c]))
                            row.emplace_back(c, coords[c]);
                }
                image_span.append(std::move(row));
            }

            if (image_span.rank() < target_hk->dimension()) {
                // Add closed generators for a basis of the cokernel.
                bool added = false;
                for (const auto& cls : target_hk->classes()) {
                    SparseVec row;
                    for (int c = 0; c < static_cast<int>(cls.coordinates.size()); ++c)
                        if (!is_zero(cls.coordinates[c]))
                            row.emplace_back(c, cls.coordinates[c]);
                    if (image_span.append(std::move(row)) == std::nullopt) {
                        Generator gen{state.fresh_name(k), k, std::nullopt};
                        state.generators.push_back(gen);
                        state.differentials.push_back(Element());
                        state.images.push_back(cls.representative);
                        added = true;
                    }
                }
                assert(added);
                (void)added;
                continue;
            }

            // Kernel of the map on H^{k+1}; one non-closed generator per
            // kernel class.
            auto model_hk1 = model.cohomology(k + 1);
            auto target_hk1 = target.cohomology(k + 1);
            SparseEliminator kernel_elim;
            std::vector<SparseVec> kernel_combos;
            for (int j = 0; j < model_hk1->dimension(); ++j) {
                const auto& cls = model_hk1->classes()[j];
                Element mapped = apply_morphism(cls.representative, target, images);
                SparseVec row;
                if (!mapped.is_zero()) {
                    auto coords = target_hk1->coordinates_of(mapped);
                    for (int c = 0; c < static_cast<int>(coords.size()); ++c)
                        if (!is_zero(coords[c]))
                            row.emplace_back(c, coords[c]);
                }
                auto dep = kernel_elim.append(std::move(row), j);
                if (dep)
                    kernel_combos.push_back(std::move(*dep));
            }

            if (kernel_combos.empty())
                break;  // H^k iso, H^{k+1} mono: stage done

            for (const auto& combo : kernel_combos) {
                Element z = Element::zero(malg);
                Element mapped = Element::zero(target.algebra());
                for (const auto& [idx, coeff] : combo) {
                    z += model_hk1->classes()[idx].representative * coeff;
                    mapped += apply_morphism(model_hk1->classes()[idx].representative, target, images) * coeff;
                }
                auto primitive = target.primitive_of(mapped);
                if (!primitive)
                    throw Error("internal: kernel class image is not exact");
                Generator gen{state.fresh_name(k), k, std::nullopt};
                state.generators.push_back(gen);
                state.differentials.push_back(z);
                state.images.push_back(*primitive);
            }
        }
    }

    MinimalModelResult result;
    result.model = state.build();
    result.generator_images.reserve(state.images.size());
    for (size_t i = 0; i < state.images.size(); ++i)
        result.generator_images.push_back(state.images[i]);

    // Verification table: iso through max_degree-1, mono at max_degree.
    result.verified = true;
    for (int i = 1; i <= max_degree; ++i) {
        auto model_h = result.model.cohomology(i);
        auto target_h = target.cohomology(i);
        SparseEliminator span;
        for (const auto& cls : model_h->classes()) {
            Element mapped = apply_morphism(cls.representative, target, result.generator_images);
            SparseVec row;
            if (!mapped.is_zero()) {
                auto coords = target_h->coordinates_of(mapped);
                for (int c = 0; c < static_cast<int>(coords.size()); ++c)
                    if (!is_zero(coords[c]))
                        row.emplace_back(c, coords[c]);
            }
            span.append(std::move(row));
        }
        MinimalModelResult::DegreeCheck check;
        check.degree = i;
        check.dim_model = model_h->dimension();
        check.dim_target = target_h->dimension();
        check.map_rank = span.rank();
        check.require_iso = i <= max_degree - 1;
        bool injective = check.map_rank == check.dim_model;
        bool surjective = check.map_rank == check.dim_target;
        check.ok = check.require_iso ? (injective && surjective) : injective;
        result.verified = result.verified && check.ok;
        result.checks.push_back(check);
    }
    return result;
}

}  // namespace formality
