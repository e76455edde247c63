#include "formality/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace formality {

GradedAlgebra GradedAlgebra::make(std::vector<Generator> generators) {
    auto data = std::make_shared<Data>();
    data->top_degree = 0;
    for (int i = 0; i < static_cast<int>(generators.size()); ++i) {
        const Generator& g = generators[i];
        if (g.name.empty())
            throw Error("generator name must be nonempty");
        if (g.degree < 1)
            throw Error("generator '" + g.name + "' must have degree >= 1");
        if (g.truncation) {
            if (g.degree % 2 != 0)
                throw Error("truncation is only allowed on even-degree generators: '" + g.name + "'");
            if (*g.truncation < 2)
                throw Error("truncation must be >= 2: '" + g.name + "'");
            data->free = false;
        }
        if (!data->index.emplace(g.name, i).second)
            throw Error("duplicate generator name: '" + g.name + "'");
        if (data->top_degree) {
            if (g.degree % 2 == 1)
                *data->top_degree += g.degree;
            else if (g.truncation)
                *data->top_degree += (*g.truncation - 1) * g.degree;
            else
                data->top_degree.reset();
        }
    }
    data->generators = std::move(generators);
    GradedAlgebra a;
    a.data_ = std::move(data);
    return a;
}

std::optional<int> GradedAlgebra::index_of(std::string_view name) const {
    auto it = data_->index.find(name);
    if (it == data_->index.end())
        return std::nullopt;
    return it->second;
}

int GradedAlgebra::monomial_degree(const Monomial& m) const {
    int degree = 0;
    for (const auto& [gen, exp] : m.factors)
        degree += data_->generators[gen].degree * exp;
    return degree;
}

namespace {

void enumerate_basis(const GradedAlgebra& a, int next_gen, int remaining, Monomial& current,
                     std::vector<Monomial>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (int g = next_gen; g < a.generator_count(); ++g) {
        const Generator& gen = a.generator(g);
        if (gen.degree > remaining)
            continue;
        int max_exp = remaining / gen.degree;
        if (gen.degree % 2 == 1)
            max_exp = std::min(max_exp, 1);
        if (gen.truncation)
            max_exp = std::min(max_exp, *gen.truncation - 1);
        for (int e = 1; e <= max_exp; ++e) {
            current.factors.emplace_back(g, e);
            enumerate_basis(a, g + 1, remaining - e * gen.degree, current, out);
            current.factors.pop_back();
        }
    }
}

}  // namespace

std::vector<Monomial> GradedAlgebra::basis_of_degree(int degree) const {
    if (degree < 0)
        return {};
    if (degree == 0)
        return {Monomial{}};
    std::vector<Monomial> out;
    Monomial current;
    enumerate_basis(*this, 0, degree, current, out);
    std::sort(out.begin(), out.end());
    return out;
}

Element Element::one(const GradedAlgebra& a) {
    return monomial(a, Monomial{}, 1);
}

Element Element::generator(const GradedAlgebra& a, int index) {
    return monomial(a, Monomial{{{index, 1}}}, 1);
}

Element Element::monomial(const GradedAlgebra& a, Monomial m, Rational coeff) {
    Element e(a);
    if (!formality::is_zero(coeff))
        e.terms_.emplace_back(std::move(m), std::move(coeff));
    return e;
}

bool Element::is_homogeneous() const {
    return degree().has_value() || is_zero();
}

std::optional<int> Element::degree() const {
    if (terms_.empty())
        return std::nullopt;
    int d = algebra_.monomial_degree(terms_.front().first);
    for (size_t i = 1; i < terms_.size(); ++i)
        if (algebra_.monomial_degree(terms_[i].first) != d)
            return std::nullopt;
    return d;
}

Rational Element::coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const auto& term, const Monomial& key) { return term.first < key; });
    if (it != terms_.end() && it->first == m)
        return it->second;
    return 0;
}

void Element::set_terms(std::map<Monomial, Rational> terms) {
    terms_.clear();
    terms_.reserve(terms.size());
    for (auto& [mono, coeff] : terms)
        if (!formality::is_zero(coeff))
            terms_.emplace_back(mono, std::move(coeff));
}

namespace {

void require_same_algebra(const Element& a, const Element& b) {
    if (a.algebra().is_valid() && b.algebra().is_valid() && !a.algebra().same_as(b.algebra()))
        throw Error("elements belong to different algebras");
}

}  // namespace

Element Element::operator-() const {
    Element out = *this;
    for (auto& [mono, coeff] : out.terms_)
        coeff = -coeff;
    return out;
}

Element& Element::operator+=(const Element& rhs) {
    require_same_algebra(*this, rhs);
    if (!algebra_.is_valid())
        algebra_ = rhs.algebra_;
    std::map<Monomial, Rational> acc;
    for (auto& [mono, coeff] : terms_)
        acc.emplace(mono, coeff);
    for (const auto& [mono, coeff] : rhs.terms_) {
        auto [it, fresh] = acc.emplace(mono, coeff);
        if (!fresh)
            it->second += coeff;
    }
    set_terms(std::move(acc));
    return *this;
}

Element& Element::operator-=(const Element& rhs) {
    return *this += -rhs;
}

Element& Element::operator*=(const Rational& scalar) {
    if (formality::is_zero(scalar)) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, coeff] : terms_)
        coeff *= scalar;
    return *this;
}

/// Product of two canonical monomials. Returns zero when an odd generator
/// repeats or a truncated exponent is reached; otherwise the merged monomial
/// with the Koszul sign of the interleaving.
Element multiply_monomials(const GradedAlgebra& a, const Monomial& lhs, const Monomial& rhs,
                           const Rational& coeff) {
    Monomial merged;
    merged.factors.reserve(lhs.factors.size() + rhs.factors.size());
    // Parity of the number of odd generators in lhs strictly to the right of
    // the merge point; each odd rhs factor passing them flips the sign.
    int sign = 1;
    size_t i = 0, j = 0;
    // odd_suffix[i] = number of odd factors of lhs at positions >= i
    std::vector<int> odd_suffix(lhs.factors.size() + 1, 0);
    for (size_t k = lhs.factors.size(); k-- > 0;) {
        int gen = lhs.factors[k].first;
        odd_suffix[k] = odd_suffix[k + 1] + (a.generator(gen).degree % 2);
    }
    while (i < lhs.factors.size() || j < rhs.factors.size()) {
        bool take_left;
        if (i == lhs.factors.size())
            take_left = false;
        else if (j == rhs.factors.size())
            take_left = true;
        else
            take_left = lhs.factors[i].first <= rhs.factors[j].first;

        if (take_left && j < rhs.factors.size() && lhs.factors[i].first == rhs.factors[j].first) {
            const auto [gen, el] = lhs.factors[i];
            const auto [gen2, er] = rhs.factors[j];
            const Generator& g = a.generator(gen);
            if (g.degree % 2 == 1)
                return Element::zero(a);  // odd square
            int e = el + er;
            if (g.truncation && e >= *g.truncation)
                return Element::zero(a);
            merged.factors.emplace_back(gen, e);
            ++i;
            ++j;
        } else if (take_left) {
            merged.factors.push_back(lhs.factors[i]);
            ++i;
        } else {
            const auto [gen, exp] = rhs.factors[j];
            if (a.generator(gen).degree % 2 == 1 && (odd_suffix[i] % 2) == 1)
                sign = -sign;
            merged.factors.push_back(rhs.factors[j]);
            ++j;
        }
    }
    return Element::monomial(a, std::move(merged), sign > 0 ? coeff : -coeff);
}

Element operator*(const Element& lhs, const Element& rhs) {
    require_same_algebra(lhs, rhs);
    const GradedAlgebra& a = lhs.algebra().is_valid() ? lhs.algebra() : rhs.algebra();
    std::map<Monomial, Rational> acc;
    for (const auto& [ml, cl] : lhs.terms()) {
        for (const auto& [mr, cr] : rhs.terms()) {
            Element prod = multiply_monomials(a, ml, mr, cl * cr);
            for (const auto& [mono, coeff] : prod.terms()) {
                auto [it, fresh] = acc.emplace(mono, coeff);
                if (!fresh)
                    it->second += coeff;
            }
        }
    }
    Element out(a);
    out.set_terms(std::move(acc));
    return out;
}

Element Element::pow(int exponent) const {
    if (exponent < 0)
        throw Error("negative power of an algebra element");
    Element result = Element::one(algebra_);
    for (int i = 0; i < exponent; ++i)
        result = result * *this;
    return result;
}

bool Element::operator==(const Element& rhs) const {
    if (is_zero() && rhs.is_zero())
        return true;
    require_same_algebra(*this, rhs);
    return terms_ == rhs.terms_;
}

std::string Element::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
        Rational c = coeff;
        if (first) {
            if (sgn(c) < 0) {
                out << "-";
                c = -c;
            }
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
            if (sgn(c) < 0)
                c = -c;
        }
        bool need_coeff = (c != 1) || mono.is_unit();
        if (need_coeff)
            out << formality::to_string(c);
        bool need_star = need_coeff && !mono.is_unit();
        for (size_t k = 0; k < mono.factors.size(); ++k) {
            if (need_star || k > 0)
                out << "*";
            need_star = true;
            const auto& [gen, exp] = mono.factors[k];
            out << algebra_.generator(gen).name;
            if (exp != 1)
                out << "^" << exp;
        }
        first = false;
    }
    return out.str();
}

}  // namespace formality
