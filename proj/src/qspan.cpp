#include "derivlab/qspan.hpp"

#include <algorithm>

#include "derivlab/error.hpp"

namespace derivlab {

namespace {

using detail::Value;
using Mat = std::vector<std::vector<Rational>>; // row-major

void collect_leaves(const Value& v, std::vector<const Value*>& out) {
    if (v.level == 0) {
        out.push_back(&v);
        return;
    }
    for (const auto& c : v.coeffs)
        collect_leaves(c, out);
}

// Reduced row echelon form in place; returns pivot row index per column
// (-1 for free columns) and the rank.
std::pair<std::vector<long>, size_t> rref(Mat& A) {
    const size_t rows = A.size();
    const size_t n = rows ? A[0].size() : 0;
    std::vector<long> where(n, -1);
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && A[sel][c].is_zero())
            ++sel;
        if (sel == rows)
            continue;
        std::swap(A[sel], A[r]);
        const Rational inv = A[r][c].inv();
        for (size_t j = c; j < n; ++j)
            A[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero())
                continue;
            const Rational f = A[i][c];
            for (size_t j = c; j < n; ++j)
                A[i][j] -= f * A[r][j];
        }
        where[c] = static_cast<long>(r);
        ++r;
    }
    return {std::move(where), r};
}

Mat columns_to_rows(const std::vector<std::vector<Rational>>& cols) {
    if (cols.empty())
        return {};
    const size_t rows = cols[0].size();
    Mat A(rows, std::vector<Rational>(cols.size(), Rational(0)));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < rows; ++i)
            A[i][j] = cols[j][i];
    return A;
}

// Kernel basis of the column matrix.
std::vector<std::vector<Rational>> nullspace_of_columns(
    const std::vector<std::vector<Rational>>& cols) {
    const size_t n = cols.size();
    Mat A = columns_to_rows(cols);
    auto [where, rank] = rref(A);
    (void)rank;
    std::vector<std::vector<Rational>> kernel;
    for (size_t c = 0; c < n; ++c) {
        if (where[c] >= 0)
            continue;
        std::vector<Rational> k(n, Rational(0));
        k[c] = Rational(1);
        for (size_t j = 0; j < n; ++j)
            if (where[j] >= 0)
                k[j] = -A[static_cast<size_t>(where[j])][c];
        kernel.push_back(std::move(k));
    }
    return kernel;
}

} // namespace

std::vector<FieldElement> to_common_tower(std::vector<FieldElement> elems) {
    if (elems.empty())
        return elems;
    TowerPtr tallest = elems[0].tower();
    if (!tallest)
        fail(Errc::OutOfDomain, "uninitialized field element");
    for (const auto& e : elems) {
        if (!e.tower())
            fail(Errc::OutOfDomain, "uninitialized field element");
        if (tallest->prefix_of(*e.tower()))
            tallest = e.tower();
    }
    for (auto& e : elems)
        e = e.lift_to(tallest);
    return elems;
}

std::vector<std::vector<Rational>> flatten_to_q(const std::vector<FieldElement>& elems_in) {
    if (elems_in.empty())
        return {};
    std::vector<FieldElement> elems = to_common_tower(elems_in);
    const TowerPtr& K = elems[0].tower();

    Poly common_den = Poly::constant(Rational(1));
    for (const auto& e : elems) {
        std::vector<const Value*> leaves;
        collect_leaves(e.value(), leaves);
        for (const auto* leaf : leaves)
            if (!leaf->den.is_one())
                common_den = poly_lcm(common_den, leaf->den);
    }
    FieldElement den_elem = K->from_rational(Rational(1));
    if (!common_den.is_one()) {
        Value dv;
        dv.num = common_den;
        den_elem = K->from_value(dv);
    }

    std::vector<std::vector<const Value*>> all_leaves;
    std::vector<FieldElement> scaled;
    size_t max_deg = 0;
    scaled.reserve(elems.size());
    for (const auto& e : elems) {
        scaled.push_back(e * den_elem);
        std::vector<const Value*> leaves;
        collect_leaves(scaled.back().value(), leaves);
        for (const auto* leaf : leaves) {
            if (!leaf->den.is_one())
                fail(Errc::OutOfDomain, "common denominator clearing failed");
            max_deg = std::max(max_deg, static_cast<size_t>(
                                            std::max(0, leaf->num.degree())));
        }
        all_leaves.push_back(std::move(leaves));
    }

    const size_t leaf_count = all_leaves[0].size();
    const size_t dim = leaf_count * (max_deg + 1);
    std::vector<std::vector<Rational>> cols;
    cols.reserve(elems.size());
    for (const auto& leaves : all_leaves) {
        std::vector<Rational> col(dim, Rational(0));
        for (size_t li = 0; li < leaves.size(); ++li)
            for (size_t j = 0; j <= max_deg; ++j)
                col[li * (max_deg + 1) + j] = leaves[li]->num.coeff(j);
        cols.push_back(std::move(col));
    }
    return cols;
}

bool q_linearly_independent(const std::vector<FieldElement>& elems) {
    if (elems.empty())
        return true;
    auto cols = flatten_to_q(elems);
    Mat A = columns_to_rows(cols);
    auto [where, rank] = rref(A);
    (void)where;
    return rank == elems.size();
}

std::optional<std::vector<Rational>> coordinates_in_span(
    const std::vector<FieldElement>& basis, const FieldElement& x) {
    if (basis.empty()) {
        if (x.is_zero())
            return std::vector<Rational>{};
        return std::nullopt;
    }
    std::vector<FieldElement> all = basis;
    all.push_back(x);
    auto cols = flatten_to_q(all);
    const auto target = cols.back();
    cols.pop_back();

    const size_t n = cols.size();
    Mat A = columns_to_rows(cols);
    std::vector<Rational> y = target;
    const size_t rows = A.size();
    // Eliminate on the augmented system.
    std::vector<long> where(n, -1);
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && A[sel][c].is_zero())
            ++sel;
        if (sel == rows)
            continue;
        std::swap(A[sel], A[r]);
        std::swap(y[sel], y[r]);
        const Rational inv = A[r][c].inv();
        for (size_t j = c; j < n; ++j)
            A[r][j] *= inv;
        y[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero())
                continue;
            const Rational f = A[i][c];
            for (size_t j = c; j < n; ++j)
                A[i][j] -= f * A[r][j];
            y[i] -= f * y[r];
        }
        where[c] = static_cast<long>(r);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!y[i].is_zero())
            return std::nullopt;
    std::vector<Rational> coords(n, Rational(0));
    for (size_t c = 0; c < n; ++c)
        if (where[c] >= 0)
            coords[c] = y[static_cast<size_t>(where[c])];
    return coords;
}

std::vector<FieldElement> span_intersection(const std::vector<FieldElement>& U,
                                            const std::vector<FieldElement>& V) {
    if (U.empty() || V.empty())
        return {};
    std::vector<FieldElement> all = U;
    all.insert(all.end(), V.begin(), V.end());
    all = to_common_tower(std::move(all));
    auto kernel = nullspace_of_columns(flatten_to_q(all));

    std::vector<FieldElement> result;
    for (const auto& k : kernel) {
        FieldElement w = all[0].tower()->zero();
        for (size_t i = 0; i < U.size(); ++i)
            w += all[i] * k[i];
        if (w.is_zero())
            continue;
        std::vector<FieldElement> trial = result;
        trial.push_back(w);
        if (q_linearly_independent(trial))
            result.push_back(w);
    }
    return result;
}

} // namespace derivlab
