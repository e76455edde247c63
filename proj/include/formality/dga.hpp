#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "formality/algebra.hpp"
#include "formality/linalg.hpp"

namespace formality {

class DGA;

/// Result of the d^2 = 0 check. Never throws; failing generators are listed
/// with their nonzero d^2 image.
struct ValidationReport {
    struct Violation {
        std::string generator;
        Element d_squared;
    };
    bool ok = true;
    std::vector<Violation> violations;
};

/// Cohomology class: closed representative plus coordinates in the canonical
/// class basis of its degree. Two classes of the same DGA and degree are
/// equal iff their coordinates are.
struct CohomologyClass {
    int degree = 0;
    Element representative;
    std::vector<Rational> coordinates;

    bool is_zero() const;
    bool operator==(const CohomologyClass& rhs) const {
        return degree == rhs.degree && coordinates == rhs.coordinates;
    }
};

/// Degree-wise cohomology: cocycle and coboundary bases plus the chosen class
/// basis, all deterministic for a fixed DGA.
class CohomologySpace {
public:
    int degree() const { return degree_; }
    int dimension() const { return static_cast<int>(classes_.size()); }
    const std::vector<Element>& cocycle_basis() const { return cocycles_; }
    const std::vector<Element>& coboundary_basis() const { return coboundaries_; }
    const std::vector<CohomologyClass>& classes() const { return classes_; }

    /// Coordinates of a closed degree-matching element in the class basis.
    /// The caller guarantees closedness (DGA::class_of checks it).
    std::vector<Rational> coordinates_of(const Element& z) const;

private:
    friend class DGA;

    int degree_ = 0;
    std::vector<Monomial> basis_;
    std::vector<Element> cocycles_;
    std::vector<Element> coboundaries_;
    std::vector<CohomologyClass> classes_;
    std::vector<int> class_tag_position_;  // cocycle index -> class position, -1 if dependent
    SparseEliminator quotient_;            // coboundaries untagged, cocycles tagged
};

/// Immutable differential graded algebra handle: a free (or truncated)
/// graded-commutative algebra with a degree +1 differential given on
/// generators and extended by the Leibniz rule. Cohomology, exactness
/// solvers, and ranks are memoized behind a mutex; all queries are pure and
/// safe to run concurrently.
class DGA {
public:
    DGA() = default;

    /// `diff` maps generator names to homogeneous elements of degree
    /// |g| + 1 (omitted generators are closed). Degree raising is enforced
    /// here; d^2 = 0 is checked by validate() so invalid fixtures can still
    /// be constructed and reported on.
    static DGA make(GradedAlgebra algebra, const std::map<std::string, Element>& diff,
                    std::optional<int> top_degree = std::nullopt);

    const GradedAlgebra& algebra() const;
    const Element& generator_differential(int index) const;
    std::optional<int> top_degree() const;

    bool is_valid() const { return data_ != nullptr; }
    bool same_as(const DGA& other) const { return data_ == other.data_; }

    /// Leibniz extension of the generator differential.
    Element d(const Element& u) const;

    ValidationReport validate() const;

    std::shared_ptr<const CohomologySpace> cohomology(int degree) const;

    /// Betti numbers b_0 .. b_max_degree (ranks only; no class bases built).
    std::vector<int> betti(int max_degree) const;

    /// Exactness test with deterministic primitive: the unique solution
    /// supported on the greedy independent subset of the degree-(d-1)
    /// monomial basis. Returns std::nullopt when z is not exact.
    /// Throws Error when z is not homogeneous or not closed.
    std::optional<Element> primitive_of(const Element& z) const;

    /// Class of a closed homogeneous element. Throws when z is not closed.
    CohomologyClass class_of(const Element& z) const;
    Element class_representative(const CohomologyClass& c) const;

private:
    struct Data;
    std::shared_ptr<Data> data_;

    SparseVec to_coords(const Element& e, const std::vector<Monomial>& basis) const;

    struct ExactnessSolver;
    const ExactnessSolver& exactness_solver(int degree) const;
};

/// Free-function entry points over the DGA handle.
inline Element extend_differential(const DGA& dga, const Element& u) { return dga.d(u); }
inline ValidationReport validate(const DGA& dga) { return dga.validate(); }
inline std::shared_ptr<const CohomologySpace> cohomology(const DGA& dga, int degree) {
    return dga.cohomology(degree);
}
inline std::optional<Element> is_exact(const DGA& dga, const Element& z) { return dga.primitive_of(z); }

/// Product of classes; independent of the chosen representatives.
CohomologyClass cup(const DGA& dga, const CohomologyClass& a, const CohomologyClass& b);

/// Minimality: some well-order of generators, nondecreasing in degree, puts
/// every dg in the subalgebra of strictly earlier generators.
struct MinimalityReport {
    bool minimal = true;
    std::string witness;  // offending generator and reason when not minimal
};
MinimalityReport is_minimal(const DGA& dga);

/// Multiplicative extension of a generator-wise map into `target`.
/// images[i] is the image of generator i of u's algebra.
Element apply_morphism(const Element& u, const DGA& target, std::span<const Element> images);

/// Sullivan-style minimal model through degree N (N <= 4): degree-wise
/// addition of closed generators (cokernel of H^k) and of generators killing
/// kernel classes of H^{k+1}, until the morphism is an isomorphism on H^i
/// for i <= N-1 and injective on H^N.
struct MinimalModelResult {
    DGA model;
    std::vector<Element> generator_images;  // in the target DGA

    struct DegreeCheck {
        int degree = 0;
        int dim_model = 0;
        int dim_target = 0;
        int map_rank = 0;
        bool require_iso = false;
        bool ok = false;
    };
    std::vector<DegreeCheck> checks;
    bool verified = false;
};
MinimalModelResult minimal_model_up_to(const DGA& dga, int max_degree);

/// Structural equality: same generator degrees/truncations and differentials
/// under the index identification; names compared only when requested.
bool structurally_equal(const DGA& a, const DGA& b, bool compare_names = true);

}  // namespace formality
