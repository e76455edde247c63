#include "formality/linalg.hpp"

#include <algorithm>

namespace formality {

SparseVec sparse_axpy(const SparseVec& a, const Rational& c, const SparseVec& b) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rational v = -c * b[j].second;
            if (!is_zero(v))
                out.emplace_back(b[j].first, std::move(v));
            ++j;
        } else {
            Rational v = a[i].second - c * b[j].second;
            if (!is_zero(v))
                out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec sparse_add(const SparseVec& a, const SparseVec& b) {
    return sparse_axpy(a, Rational(-1), b);
}

SparseVec sparse_scale(const SparseVec& a, const Rational& c) {
    if (is_zero(c))
        return {};
    SparseVec out = a;
    for (auto& [idx, v] : out)
        v *= c;
    return out;
}

void SparseEliminator::reduce(SparseVec& target, SparseVec* combo) const {
    // The leading column of the residual strictly increases, so a single
    // left-to-right sweep over the pivot table terminates.
    while (!target.empty()) {
        int col = target.front().first;
        auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col,
                                   [](const Pivot& p, int c) { return p.column < c; });
        if (it == pivots_.end() || it->column != col)
            return;
        Rational coeff = target.front().second;  // pivot rows have leading 1
        target = sparse_axpy(target, coeff, rows_[it->row_index]);
        if (combo)
            *combo = sparse_axpy(*combo, coeff, histories_[it->row_index]);
    }
}

std::optional<SparseVec> SparseEliminator::append(SparseVec row, std::optional<int> tag) {
    SparseVec combo;
    if (tag)
        combo.emplace_back(*tag, Rational(1));
    reduce(row, &combo);
    if (row.empty())
        return combo;
    Rational lead = row.front().second;
    if (lead != 1) {
        Rational inv = 1 / lead;
        row = sparse_scale(row, inv);
        combo = sparse_scale(combo, inv);
    }
    int col = row.front().first;
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col,
                               [](const Pivot& p, int c) { return p.column < c; });
    pivots_.insert(it, Pivot{col, static_cast<int>(rows_.size())});
    rows_.push_back(std::move(row));
    histories_.push_back(std::move(combo));
    return std::nullopt;
}

std::optional<SparseVec> SparseEliminator::solve(const SparseVec& target) const {
    SparseVec residual = target;
    SparseVec combo;
    reduce(residual, &combo);
    if (!residual.empty())
        return std::nullopt;
    // reduce() accumulated combo = -sum(coeff * history); flip the sign to
    // express target as +sum over tagged rows.
    for (auto& [idx, v] : combo)
        v = -v;
    return combo;
}

bool SparseEliminator::in_span(const SparseVec& target) const {
    SparseVec residual = target;
    reduce(residual, nullptr);
    return residual.empty();
}

int sparse_rank(std::vector<SparseVec> rows) {
    SparseEliminator elim;
    for (auto& row : rows)
        elim.append(std::move(row));
    return elim.rank();
}

}  // namespace formality
