#include "lix/linalg.hpp"

namespace lix {

std::vector<int> rref(RatMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        Rational inv = Rational(1) / m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rational f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(RatMatrix m) { return static_cast<int>(rref(m).size()); }

std::vector<RatRow> kernel_basis(const RatMatrix& m, int cols) {
    RatMatrix a = m;
    for (auto& row : a) row.resize(cols);
    std::vector<int> pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;

    std::vector<RatRow> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatRow v(cols);
        v[free] = Rational(1);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatRow> solve(const RatMatrix& m, const RatRow& b) {
    int rows = static_cast<int>(m.size());
    int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    if (rows == 0) {
        return RatRow(cols);  // no constraints
    }
    RatMatrix aug = m;
    for (int i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    std::vector<int> pivots = rref(aug);
    // Consistency: no pivot in the augmented column.
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    RatRow x(cols);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

bool SpanBuilder::insert(RatRow v) {
    v = reduce(std::move(v));
    int piv = -1;
    for (int c = 0; c < cols_; ++c)
        if (!v[c].is_zero()) { piv = c; break; }
    if (piv < 0) return false;
    Rational inv = Rational(1) / v[piv];
    for (int c = piv; c < cols_; ++c) v[c] *= inv;
    // Back-substitute into existing rows so the span stays reduced.
    for (size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][piv].is_zero()) continue;
        Rational f = rows_[r][piv];
        for (int c = 0; c < cols_; ++c) rows_[r][c] -= f * v[c];
    }
    // Keep rows ordered by pivot column.
    size_t pos = 0;
    while (pos < pivot_cols_.size() && pivot_cols_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivot_cols_.insert(pivot_cols_.begin() + pos, piv);
    return true;
}

RatRow SpanBuilder::reduce(RatRow v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
        int p = pivot_cols_[r];
        if (v[p].is_zero()) continue;
        Rational f = v[p] / rows_[r][p];
        for (int c = 0; c < cols_; ++c) v[c] -= f * rows_[r][c];
    }
    return v;
}

bool SpanBuilder::contains(RatRow v) const {
    v = reduce(std::move(v));
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

int intersection_dim(const std::vector<RatRow>& a, const std::vector<RatRow>& b, int cols) {
    auto span_dim = [&](const std::vector<RatRow>& rows) {
        RatMatrix m = rows;
        for (auto& r : m) r.resize(cols);
        return rank(m);
    };
    std::vector<RatRow> joint = a;
    joint.insert(joint.end(), b.begin(), b.end());
    return span_dim(a) + span_dim(b) - span_dim(joint);
}

}  // namespace lix
