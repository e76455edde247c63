#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "formality/rational.hpp"

namespace formality {

/// Sparse rational vector: (index, coefficient) pairs sorted by index, no
/// zero coefficients.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sparse_add(const SparseVec& a, const SparseVec& b);
/// a - c*b
SparseVec sparse_axpy(const SparseVec& a, const Rational& c, const SparseVec& b);
SparseVec sparse_scale(const SparseVec& a, const Rational& c);

/// Incremental exact Gaussian elimination with deterministic pivoting: each
/// appended row is reduced against the pivots found so far, and the first
/// remaining nonzero column becomes its pivot. Pivot rows are normalized to
/// leading coefficient 1, so ranks, kernels, and solutions are reproducible
/// byte-for-byte for a fixed append order.
///
/// Rows may carry a history tag; histories live in tag space and record the
/// combination of tagged rows equal to each pivot, modulo untagged rows.
/// Appending untagged rows first and tagged rows second therefore computes
/// quotient-space data directly.
class SparseEliminator {
public:
    /// Appends a row. Returns the kernel combination (in tag space, including
    /// the new tag with coefficient 1) when the row is dependent on earlier
    /// ones, std::nullopt when it becomes a new pivot. Untagged dependent
    /// rows return an empty combination.
    std::optional<SparseVec> append(SparseVec row, std::optional<int> tag = std::nullopt);

    int rank() const { return static_cast<int>(pivots_.size()); }

    /// Expresses target as a combination of appended rows, coefficients
    /// reported in tag space (contributions of untagged rows are dropped).
    /// Returns std::nullopt when target is outside the row span modulo
    /// nothing -- i.e. genuinely not representable.
    std::optional<SparseVec> solve(const SparseVec& target) const;

    bool in_span(const SparseVec& target) const;

    /// Pivot rows in insertion order (reduced, leading coefficient 1).
    const std::vector<SparseVec>& pivot_rows() const { return rows_; }

private:
    struct Pivot {
        int column;
        int row_index;  // into rows_/histories_
    };

    // reduce target in place against pivots; accumulate tag-space combination
    // of pivot histories into combo (combo -= coeff * history).
    void reduce(SparseVec& target, SparseVec* combo) const;

    std::vector<Pivot> pivots_;          // sorted by column
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> histories_;
};

/// Rank of a sparse matrix given as a list of rows.
int sparse_rank(std::vector<SparseVec> rows);

}  // namespace formality
