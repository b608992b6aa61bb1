#include "lix/graded_space.hpp"

#include <algorithm>
#include <set>

#include "lix/error.hpp"

namespace lix {

std::string weight_str(int w) {
    return w == kWeightInfinity ? std::string("inf") : std::to_string(w);
}

GradedSpace::GradedSpace(std::vector<BasisVector> basis) : basis_(std::move(basis)) {
    int max_weight = 0;
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
        const auto& b = basis_[i];
        if (b.weight < 1)
            throw Error(ErrorCode::NonPositiveWeight,
                        "basis vector '" + b.id + "' has weight " + std::to_string(b.weight));
        if (!index_.emplace(b.id, i).second)
            throw Error(ErrorCode::DuplicateId, "basis id '" + b.id + "' repeats");
        max_weight = std::max(max_weight, b.weight);
    }
    nilpotency_bound_ = max_weight + 1;
    by_weight_.resize(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) by_weight_[i] = static_cast<int>(i);
    std::stable_sort(by_weight_.begin(), by_weight_.end(),
                     [&](int a, int b) { return basis_[a].weight < basis_[b].weight; });
}

int GradedSpace::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> GradedSpace::occupied_degrees() const {
    std::set<int> degs;
    for (const auto& b : basis_) degs.insert(b.degree);
    return {degs.begin(), degs.end()};
}

SpacePtr build_space(std::vector<BasisVector> basis) {
    return std::make_shared<const GradedSpace>(std::move(basis));
}

Element Element::basis(const SpacePtr& space, int index, Rational coeff) {
    Element e(space);
    e.set_coeff(index, coeff);
    return e;
}

Rational Element::coeff(int index) const {
    auto it = c_.find(index);
    return it == c_.end() ? Rational(0) : it->second;
}

void Element::set_coeff(int index, const Rational& r) {
    if (index < 0 || !space_ || index >= space_->dim())
        throw Error(ErrorCode::PreconditionViolated, "coefficient index outside the basis");
    if (r.is_zero())
        c_.erase(index);
    else
        c_[index] = r;
}

void Element::add_coeff(int index, const Rational& r) {
    if (r.is_zero()) return;
    auto it = c_.find(index);
    if (it == c_.end()) {
        set_coeff(index, r);
    } else {
        it->second += r;
        if (it->second.is_zero()) c_.erase(it);
    }
}

bool operator==(const Element& a, const Element& b) {
    if (a.space_ && b.space_ && a.space_ != b.space_)
        throw Error(ErrorCode::MixedSpaces, "comparing elements over different spaces");
    return a.c_ == b.c_;
}

static void require_same_space(const Element& x, const Element& y) {
    if (x.space() && y.space() && x.space() != y.space())
        throw Error(ErrorCode::MixedSpaces, "elements live over different spaces");
}

Element add(const Element& x, const Element& y) {
    require_same_space(x, y);
    Element r = x.space() ? x : y;
    if (&r == &y) return add(y, x);
    Element out = x;
    for (const auto& [i, c] : y.coeffs()) out.add_coeff(i, c);
    return out;
}

Element sub(const Element& x, const Element& y) { return add(x, neg(y)); }

Element scale(const Rational& c, const Element& x) {
    Element out(x.space());
    if (c.is_zero()) return out;
    for (const auto& [i, v] : x.coeffs()) out.set_coeff(i, c * v);
    return out;
}

Element neg(const Element& x) { return scale(Rational(-1), x); }

Element proj_filtration(const Element& x, int p) {
    Element out(x.space());
    for (const auto& [i, v] : x.coeffs())
        if (x.space()->at(i).weight >= p) out.set_coeff(i, v);
    return out;
}

Element proj_degree(const Element& x, int d) {
    Element out(x.space());
    for (const auto& [i, v] : x.coeffs())
        if (x.space()->at(i).degree == d) out.set_coeff(i, v);
    return out;
}

int filtration_weight(const Element& x) {
    if (x.is_zero()) return kWeightInfinity;
    int w = kWeightInfinity;
    for (const auto& [i, v] : x.coeffs()) w = std::min(w, x.space()->at(i).weight);
    return w;
}

int homogeneous_degree(const Element& x, int fallback) {
    if (x.is_zero()) return fallback;
    int d = x.space()->at(x.coeffs().begin()->first).degree;
    for (const auto& [i, v] : x.coeffs())
        if (x.space()->at(i).degree != d)
            throw Error(ErrorCode::WrongDegree, "element has mixed degrees");
    return d;
}

bool is_homogeneous_of_degree(const Element& x, int d) {
    for (const auto& [i, v] : x.coeffs())
        if (x.space()->at(i).degree != d) return false;
    return true;
}

Element LinearMap::apply_basis(int index) const {
    auto it = columns.find(index);
    return it == columns.end() ? Element::zero(codomain) : it->second;
}

Element LinearMap::apply(const Element& x) const {
    if (domain && x.space() && x.space() != domain)
        throw Error(ErrorCode::MixedSpaces, "applying a map outside its domain");
    Element out(codomain);
    for (const auto& [i, c] : x.coeffs()) {
        auto it = columns.find(i);
        if (it == columns.end()) continue;
        out = add(out, scale(c, it->second));
    }
    return out;
}

void LinearMap::set_column(int index, const Element& value) {
    if (value.is_zero())
        columns.erase(index);
    else
        columns[index] = value;
}

LinearMap compose(const LinearMap& f, const LinearMap& g) {
    LinearMap out;
    out.domain = g.domain;
    out.codomain = f.codomain;
    out.degree_shift = f.degree_shift + g.degree_shift;
    for (const auto& [i, col] : g.columns) out.set_column(i, f.apply(col));
    return out;
}

std::map<int, int> compute_cohomology(const SpacePtr& space, const LinearMap& d) {
    if (d.degree_shift != 1)
        throw Error(ErrorCode::NotADifferential, "differential must have degree shift +1");
    for (const auto& [i, col] : d.columns) {
        if (!col.is_zero() && !is_homogeneous_of_degree(col, space->at(i).degree + 1))
            throw Error(ErrorCode::NotADifferential, "column of '" + space->at(i).id +
                                                         "' is not homogeneous of degree +1");
        if (!d.apply(col).is_zero())
            throw Error(ErrorCode::NotADifferential,
                        "d(d(" + space->at(i).id + ")) is nonzero");
    }

    // dim H^deg = dim ker(d|deg) - rank(d|deg-1); exact ranks per degree.
    std::map<int, std::vector<int>> by_degree;
    for (int i = 0; i < space->dim(); ++i) by_degree[space->at(i).degree].push_back(i);

    auto rank_at = [&](int deg) {
        auto it = by_degree.find(deg);
        if (it == by_degree.end()) return 0;
        // Row per domain vector, coordinates over the full basis.
        std::vector<std::vector<Rational>> rows;
        for (int i : it->second) {
            Element col = d.apply_basis(i);
            if (col.is_zero()) continue;
            std::vector<Rational> row(space->dim());
            for (const auto& [j, c] : col.coeffs()) row[j] = c;
            rows.push_back(std::move(row));
        }
        // Local elimination, column order = basis order.
        int rk = 0;
        for (int col = 0; col < space->dim() && rk < static_cast<int>(rows.size()); ++col) {
            int piv = -1;
            for (int r = rk; r < static_cast<int>(rows.size()); ++r)
                if (!rows[r][col].is_zero()) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(rows[rk], rows[piv]);
            for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
                if (r == rk || rows[r][col].is_zero()) continue;
                Rational factor = rows[r][col] / rows[rk][col];
                for (int cc = col; cc < space->dim(); ++cc)
                    rows[r][cc] -= factor * rows[rk][cc];
            }
            ++rk;
        }
        return rk;
    };

    std::map<int, int> dims;
    for (const auto& [deg, idxs] : by_degree) {
        int n = static_cast<int>(idxs.size());
        int ker = n - rank_at(deg);
        int im_prev = rank_at(deg - 1);
        dims[deg] = ker - im_prev;
    }
    return dims;
}

}  // namespace lix
