#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "formality/error.hpp"
#include "formality/rational.hpp"

namespace formality {

/// A single generator of a free graded-commutative algebra.
///
/// `truncation` (k >= 2) rewrites g^k -> 0 during canonicalization; it is
/// only allowed on generators of even degree. An algebra with at least one
/// truncated generator is "non-free" and excluded from minimality analysis.
struct Generator {
    std::string name;
    int degree = 1;
    std::optional<int> truncation;
};

/// Canonical monomial over a fixed algebra: factors sorted by generator
/// index, no repeats, odd generators with exponent exactly 1. The empty
/// factor list is the unit monomial.
struct Monomial {
    std::vector<std::pair<int, int>> factors;  // (generator index, exponent)

    bool is_unit() const { return factors.empty(); }
    auto operator<=>(const Monomial&) const = default;
};

/// Handle to an immutable free graded-commutative algebra. Copies share the
/// underlying generator table; compatibility of elements is checked by
/// identity of that table.
class GradedAlgebra {
public:
    GradedAlgebra() = default;

    /// Builds an algebra from an ordered generator list. The declaration
    /// order is the global generator order used by every canonical form.
    /// Throws Error on duplicate names, degree < 1, or truncation on an
    /// odd-degree generator (or truncation < 2).
    static GradedAlgebra make(std::vector<Generator> generators);

    int generator_count() const { return static_cast<int>(data_->generators.size()); }
    const Generator& generator(int index) const { return data_->generators[index]; }
    const std::vector<Generator>& generators() const { return data_->generators; }
    std::optional<int> index_of(std::string_view name) const;

    /// True when no generator is truncated.
    bool is_free() const { return data_->free; }

    /// Sum of the degrees of the top monomial, when finite: odd generators
    /// contribute their degree, truncated even ones (truncation-1)*degree.
    /// Empty when some even generator is untruncated.
    std::optional<int> top_degree() const { return data_->top_degree; }

    int monomial_degree(const Monomial& m) const;

    /// Complete, duplicate-free monomial basis of the given total degree, in
    /// the canonical monomial order.
    std::vector<Monomial> basis_of_degree(int degree) const;

    bool same_as(const GradedAlgebra& other) const { return data_ == other.data_; }
    bool is_valid() const { return data_ != nullptr; }

private:
    struct Data {
        std::vector<Generator> generators;
        std::map<std::string, int, std::less<>> index;
        bool free = true;
        std::optional<int> top_degree;
    };

    std::shared_ptr<const Data> data_;
};

/// Exact-rational linear combination of canonical monomials. May be
/// inhomogeneous; operations that require homogeneity state so.
class Element {
public:
    Element() = default;
    explicit Element(GradedAlgebra algebra) : algebra_(std::move(algebra)) {}

    static Element zero(const GradedAlgebra& a) { return Element(a); }
    static Element one(const GradedAlgebra& a);
    static Element generator(const GradedAlgebra& a, int index);
    static Element monomial(const GradedAlgebra& a, Monomial m, Rational coeff = 1);

    const GradedAlgebra& algebra() const { return algebra_; }
    const std::vector<std::pair<Monomial, Rational>>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous() const;

    /// Common total degree of all terms; empty for the zero element and for
    /// mixed-degree elements.
    std::optional<int> degree() const;

    Rational coefficient(const Monomial& m) const;

    Element operator-() const;
    Element& operator+=(const Element& rhs);
    Element& operator-=(const Element& rhs);
    Element& operator*=(const Rational& scalar);

    friend Element operator+(Element lhs, const Element& rhs) { return lhs += rhs; }
    friend Element operator-(Element lhs, const Element& rhs) { return lhs -= rhs; }
    friend Element operator*(Element lhs, const Rational& scalar) { return lhs *= scalar; }
    friend Element operator*(const Rational& scalar, Element rhs) { return rhs *= scalar; }

    /// Graded-commutative product with Koszul signs and truncation rewrite.
    /// Throws Error when the operands live over different algebras.
    friend Element operator*(const Element& lhs, const Element& rhs);

    Element pow(int exponent) const;

    bool operator==(const Element& rhs) const;
    bool operator!=(const Element& rhs) const { return !(*this == rhs); }

    /// Canonical text form, e.g. "a1*b - 2*c^2 + 1/3". Zero prints "0".
    std::string to_string() const;

private:
    friend Element multiply_monomials(const GradedAlgebra&, const Monomial&, const Monomial&, const Rational&);

    void set_terms(std::map<Monomial, Rational> terms);

    GradedAlgebra algebra_;
    std::vector<std::pair<Monomial, Rational>> terms_;  // sorted by monomial, no zeros
};

/// Free-function names for the main entry points.
inline GradedAlgebra make_algebra(std::vector<Generator> generators) {
    return GradedAlgebra::make(std::move(generators));
}
inline Element multiply(const Element& u, const Element& v) { return u * v; }
inline std::vector<Monomial> basis_of_degree(const GradedAlgebra& a, int degree) {
    return a.basis_of_degree(degree);
}

}  // namespace formality
