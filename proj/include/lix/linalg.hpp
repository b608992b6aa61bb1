#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lix/graded_space.hpp"
#include "lix/rational.hpp"

namespace lix {

/* Small dense exact-rational matrices for kernel/image/subquotient work.
 * Pivoting is deterministic: columns are scanned left to right, pivot rows
 * top to bottom, never by magnitude. */
using RatRow = std::vector<Rational>;
using RatMatrix = std::vector<RatRow>;

// In-place reduced row echelon form; returns pivot column per rank row.
std::vector<int> rref(RatMatrix& m);

int rank(RatMatrix m);

// Basis of the null space of m (columns = unknowns), deterministic: free
// variables are taken in ascending column order.
std::vector<RatRow> kernel_basis(const RatMatrix& m, int cols);

// One solution of m * x = b with free variables set to zero; nullopt when
// the system is inconsistent.
std::optional<RatRow> solve(const RatMatrix& m, const RatRow& b);

/* Span tracker over a fixed ambient coordinate set: rows are appended and
 * reduced; `insert` reports whether the vector enlarged the span and keeps
 * the reduced row when it did. */
class SpanBuilder {
public:
    explicit SpanBuilder(int ambient_dim) : cols_(ambient_dim) {}
    bool insert(RatRow v);
    bool contains(RatRow v) const;
    // Remainder of v after reduction against the current span.
    RatRow reduce(RatRow v) const;
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<RatRow>& rows() const { return rows_; }

private:
    int cols_;
    std::vector<RatRow> rows_;       // echelon rows
    std::vector<int> pivot_cols_;    // pivot column of each row
};

// Dimension of the intersection of two spans given inside a common ambient
// coordinate system.
int intersection_dim(const std::vector<RatRow>& a, const std::vector<RatRow>& b, int cols);

}  // namespace lix
