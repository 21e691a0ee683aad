#include "modinv/sparse_linalg.hpp"

#include <algorithm>

namespace modinv {

SparseVec axpy(const SparseVec& v, Coeff c, const SparseVec& w, const FieldPrime& f)
{
    if (c == 0)
        return v;
    SparseVec out;
    out.reserve(v.size() + w.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
        if (j == w.size() || (i < v.size() && v[i].idx < w[j].idx)) {
            out.push_back(v[i++]);
        } else if (i == v.size() || w[j].idx < v[i].idx) {
            out.push_back({w[j].idx, f.mul(c, w[j].val)});
            ++j;
        } else {
            Coeff s = f.add(v[i].val, f.mul(c, w[j].val));
            if (s != 0)
                out.push_back({v[i].idx, s});
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec scale(const SparseVec& v, Coeff c, const FieldPrime& f)
{
    if (c == 0)
        return {};
    SparseVec out = v;
    for (auto& e : out)
        e.val = f.mul(e.val, c);
    return out;
}

EchelonBasis::EchelonBasis(std::size_t ambient, FieldPrime field)
    : ambient_(ambient), field_(field), pivot_row_(ambient, -1)
{
}

SparseVec EchelonBasis::reduce(SparseVec v) const
{
    std::size_t pos = 0;
    while (pos < v.size()) {
        const std::int32_t r = pivot_row_[v[pos].idx];
        if (r < 0) {
            ++pos;
            continue;
        }
        v = axpy(v, field_.neg(v[pos].val), rows_[static_cast<std::size_t>(r)], field_);
    }
    return v;
}

bool EchelonBasis::insert(SparseVec v)
{
    v = reduce(std::move(v));
    if (v.empty())
        return false;
    const Coeff s = field_.inv(v.front().val);
    v = scale(v, s, field_);
    pivot_row_[v.front().idx] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
}

std::vector<SparseVec> EchelonBasis::reduced_rows() const
{
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [this](std::size_t a, std::size_t b) { return rows_[a].front().idx < rows_[b].front().idx; });

    std::vector<SparseVec> reduced(rows_.size());
    std::vector<std::int32_t> done(ambient_, -1);
    // Highest pivot first: rows with larger pivots are already fully reduced when used.
    for (std::size_t k = order.size(); k-- > 0;) {
        SparseVec v = rows_[order[k]];
        std::size_t pos = 1;
        while (pos < v.size()) {
            const std::int32_t r = done[v[pos].idx];
            if (r < 0) {
                ++pos;
                continue;
            }
            v = axpy(v, field_.neg(v[pos].val), reduced[static_cast<std::size_t>(r)], field_);
        }
        done[v.front().idx] = static_cast<std::int32_t>(k);
        reduced[k] = std::move(v);
    }
    return reduced;
}

TrackedEchelon::TrackedEchelon(std::size_t ambient, FieldPrime field)
    : ambient_(ambient), field_(field), pivot_row_(ambient, -1)
{
}

std::optional<SparseVec> TrackedEchelon::insert(SparseVec v, SparseVec combo)
{
    std::size_t pos = 0;
    while (pos < v.size()) {
        const std::int32_t r = pivot_row_[v[pos].idx];
        if (r < 0) {
            ++pos;
            continue;
        }
        const Coeff c = field_.neg(v[pos].val);
        v = axpy(v, c, rows_[static_cast<std::size_t>(r)], field_);
        combo = axpy(combo, c, combos_[static_cast<std::size_t>(r)], field_);
    }
    if (v.empty())
        return combo;
    const Coeff s = field_.inv(v.front().val);
    pivot_row_[v.front().idx] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(scale(v, s, field_));
    combos_.push_back(scale(combo, s, field_));
    return std::nullopt;
}

std::vector<SparseVec> kernel_of_images(const std::vector<SparseVec>& images, std::size_t target_dim,
                                        const FieldPrime& f)
{
    TrackedEchelon tracked(target_dim, f);
    EchelonBasis kernel(images.size(), f);
    for (std::size_t k = 0; k < images.size(); ++k) {
        auto rel = tracked.insert(images[k], SparseVec{{static_cast<std::uint32_t>(k), 1}});
        if (rel)
            kernel.insert(std::move(*rel));
    }
    return kernel.reduced_rows();
}

std::size_t span_rank(const std::vector<SparseVec>& vectors, std::size_t ambient, const FieldPrime& f)
{
    EchelonBasis b(ambient, f);
    for (const auto& v : vectors)
        b.insert(v);
    return b.rank();
}

SparseVec combine(const SparseVec& coeffs, const std::vector<SparseVec>& vectors, const FieldPrime& f)
{
    SparseVec out;
    for (const auto& e : coeffs)
        out = axpy(out, e.val, vectors[e.idx], f);
    return out;
}

}  // namespace modinv
