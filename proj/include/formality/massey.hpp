#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "formality/dga.hpp"
#include "formality/models.hpp"

namespace formality {

enum class MasseyVerdict { undefined, vanishes, non_vanishing, inconclusive };

std::string to_string(MasseyVerdict v);

/// Defining system for a (higher) Massey product: xi[(i,i)] is the chosen
/// representative of the i-th class, and for i < j the elements satisfy
/// d xi_{i,j} = sum_{l=i}^{j-1} bar(xi_{i,l}) * xi_{l+1,j} with
/// bar(x) = (-1)^{|x|} x. Indices are 1-based; (1,k) is excluded.
struct DefiningSystem {
    std::vector<CohomologyClass> classes;
    std::map<std::pair<int, int>, Element> xi;
};

/// Witness payload for the degree-8 quadruple product on degree-2 classes:
/// alpha * beta_i = d xi_i.
struct AMasseyWitness {
    Element alpha;
    std::array<Element, 3> beta;
    std::array<Element, 3> xi;
};

struct MasseyResult {
    enum class Kind { triple, higher, a_massey };

    Kind kind = Kind::triple;
    int order = 3;
    MasseyVerdict verdict = MasseyVerdict::undefined;
    Element value_representative;
    std::vector<Element> indeterminacy;  // representatives of a spanning set
    DefiningSystem witness;
    std::optional<AMasseyWitness> a_witness;
    std::string note;
};

/// Triple product <a1,a2,a3>: defined when a1 a2 = a2 a3 = 0; value
/// [alpha1 xi23 + (-1)^{p1+1} xi12 alpha3] modulo
/// a1 H^{p2+p3-1} + H^{p1+p2-1} a3, with exact membership.
MasseyResult triple_massey(const DGA& dga, const CohomologyClass& a1, const CohomologyClass& a2,
                           const CohomologyClass& a3);

/// Value of a triple system with explicit choices; used by replay and by the
/// representative-independence tests.
Element triple_massey_value(const Element& alpha1, const Element& alpha3, const Element& xi12,
                            const Element& xi23, int p1);

struct HigherMasseyOptions {
    long long budget = 4096;     // max complete defining systems evaluated
    int complete_dim_bound = 12; // full-grid certification cutoff
};

/// k-fold product, k >= 4, over staged exact solves. Kernel and
/// representative freedom is enumerated over the {0,1} spanning grid of the
/// choice space; the value is multilinear in those parameters, so
/// * any grid value 0 certifies "vanishes",
/// * a value coordinate constant and nonzero over the complete grid
///   certifies "non_vanishing",
/// * otherwise the verdict is "inconclusive" (or "undefined" when the choice
///   space is trivial and the unique candidate system is obstructed).
MasseyResult higher_massey(const DGA& dga, const std::vector<CohomologyClass>& classes,
                           const HigherMasseyOptions& options = {});

/// a-Massey product <a; b1,b2,b3> on degree-2 classes with a b_i = 0:
/// value [xi1 xi2 beta3 + xi2 xi3 beta1 + xi3 xi1 beta2] in degree 8 modulo
/// sum_{i<j} span(<b_i,a,b_j>) * H^3.
MasseyResult a_massey(const DGA& dga, const CohomologyClass& a, const CohomologyClass& b1,
                      const CohomologyClass& b2, const CohomologyClass& b3);

/// Negative s-formality certificate: the first (in lexicographic search
/// order) non-vanishing triple product whose degrees satisfy
/// p1+p2 <= s+1 and p2+p3 <= s+1.
struct SFormalityCertificate {
    int s = 0;
    std::array<int, 3> degrees{};
    std::array<int, 3> class_indices{};
    MasseyResult result;
};
std::optional<SFormalityCertificate> not_s_formal_certificate(const DGA& dga, int s);

/// Rank of cup-with-omega: H^p -> H^{p+2}, a lower bound for b_p of any
/// symplectic divisor; p must equal 2(n-1)-i with 0 <= i <= n-2.
int donaldson_betti_floor(const Model& model, int p);

}  // namespace formality
