#include "modinv/grading.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace modinv {

int total_degree(const Multidegree& a)
{
    return std::accumulate(a.begin(), a.end(), 0);
}

Multidegree operator+(const Multidegree& a, const Multidegree& b)
{
    Multidegree r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += b[i];
    return r;
}

std::optional<Multidegree> subtract(const Multidegree& a, const Multidegree& b)
{
    Multidegree r = a;
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] -= b[i];
        if (r[i] < 0)
            return std::nullopt;
    }
    return r;
}

Grading Grading::total(std::size_t n)
{
    return Grading(std::vector<int>(n, 0));
}

Grading::Grading(std::vector<int> block_of) : block_of_(std::move(block_of))
{
    // Renumber blocks in order of first appearance so equal partitions compare equal.
    std::map<int, int> renumber;
    for (auto& b : block_of_) {
        auto [it, fresh] = renumber.try_emplace(b, static_cast<int>(renumber.size()));
        b = it->second;
    }
    blocks_ = static_cast<int>(renumber.size());
}

Multidegree Grading::multidegree(const Monomial& m) const
{
    Multidegree a(static_cast<std::size_t>(blocks_), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        a[static_cast<std::size_t>(block_of_[i])] += m[i];
    return a;
}

std::optional<Multidegree> Grading::homogeneous_degree(const Polynomial& f) const
{
    if (f.is_zero())
        return std::nullopt;
    Multidegree a = multidegree(f.terms().front().mono);
    for (const auto& t : f.terms())
        if (multidegree(t.mono) != a)
            return std::nullopt;
    return a;
}

namespace {

void compositions(int t, std::size_t pos, Multidegree& cur, std::vector<Multidegree>& out)
{
    if (pos + 1 == cur.size()) {
        cur[pos] = t;
        out.push_back(cur);
        return;
    }
    for (int e = t; e >= 0; --e) {
        cur[pos] = e;
        compositions(t - e, pos + 1, cur, out);
    }
}

}  // namespace

std::vector<Multidegree> Grading::multidegrees_of_total(int t) const
{
    std::vector<Multidegree> out;
    if (t < 0 || blocks_ == 0)
        return out;
    Multidegree cur(static_cast<std::size_t>(blocks_), 0);
    compositions(t, 0, cur, out);
    return out;
}

std::vector<std::size_t> Grading::block_sizes() const
{
    std::vector<std::size_t> s(static_cast<std::size_t>(blocks_), 0);
    for (auto b : block_of_)
        ++s[static_cast<std::size_t>(b)];
    return s;
}

namespace {

// Variables in index order; each block's last variable absorbs the block's remaining degree.
void enumerate_piece(const Grading& g, const std::vector<std::size_t>& last_of_block, std::size_t var,
                     Multidegree& remaining, Monomial& cur, std::vector<Monomial>& out)
{
    if (var == g.nvars()) {
        out.push_back(cur);
        return;
    }
    const auto b = static_cast<std::size_t>(g.block_of(var));
    const int rem = remaining[b];
    if (last_of_block[b] == var) {
        cur[var] = static_cast<Exponent>(rem);
        remaining[b] = 0;
        enumerate_piece(g, last_of_block, var + 1, remaining, cur, out);
        remaining[b] = rem;
        cur[var] = 0;
        return;
    }
    for (int e = rem; e >= 0; --e) {
        cur[var] = static_cast<Exponent>(e);
        remaining[b] = rem - e;
        enumerate_piece(g, last_of_block, var + 1, remaining, cur, out);
    }
    remaining[b] = rem;
    cur[var] = 0;
}

}  // namespace

PieceIndex::PieceIndex(const Grading& grading, Multidegree alpha) : alpha_(std::move(alpha))
{
    if (alpha_.size() != static_cast<std::size_t>(grading.blocks()))
        throw StructuralError("multidegree length does not match the grading");
    if (std::any_of(alpha_.begin(), alpha_.end(), [](int a) { return a < 0; }))
        return;
    std::vector<std::size_t> last(static_cast<std::size_t>(grading.blocks()), 0);
    for (std::size_t i = 0; i < grading.nvars(); ++i)
        last[static_cast<std::size_t>(grading.block_of(i))] = i;
    Multidegree remaining = alpha_;
    Monomial cur(grading.nvars());
    enumerate_piece(grading, last, 0, remaining, cur, monomials_);
    index_.reserve(monomials_.size());
    for (std::size_t i = 0; i < monomials_.size(); ++i)
        index_.emplace(monomials_[i], static_cast<std::uint32_t>(i));
}

std::optional<std::uint32_t> PieceIndex::find(const Monomial& m) const
{
    auto it = index_.find(m);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::int64_t piece_dimension(const Grading& g, const Multidegree& alpha)
{
    auto sizes = g.block_sizes();
    std::int64_t dim = 1;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
        if (alpha[b] < 0)
            return 0;
        const auto k = static_cast<std::int64_t>(sizes[b]);
        const std::int64_t c = binomial(alpha[b] + k - 1, k - 1);
        if (c != 0 && dim > std::numeric_limits<std::int64_t>::max() / c)
            return std::numeric_limits<std::int64_t>::max();
        dim *= c;
    }
    return dim;
}

MonomialSpace::MonomialSpace(Grading grading, FieldPrime field, std::size_t piece_cap)
    : grading_(std::move(grading)), field_(field), cap_(piece_cap)
{
}

const PieceIndex& MonomialSpace::piece(const Multidegree& alpha) const
{
    auto it = pieces_.find(alpha);
    if (it != pieces_.end())
        return *it->second;
    const auto dim = piece_dimension(grading_, alpha);
    if (dim > static_cast<std::int64_t>(cap_))
        throw CapacityError("graded piece of total degree " + std::to_string(total_degree(alpha)) + " has " +
                            std::to_string(dim) + " monomials, above the linear-algebra cap of " +
                            std::to_string(cap_));
    auto [pos, inserted] = pieces_.emplace(alpha, std::make_unique<PieceIndex>(grading_, alpha));
    return *pos->second;
}

SparseVec MonomialSpace::to_vector(const Polynomial& f, const Multidegree& alpha) const
{
    const PieceIndex& pc = piece(alpha);
    SparseVec v;
    v.reserve(f.size());
    for (const auto& t : f.terms()) {
        auto idx = pc.find(t.mono);
        if (!idx)
            throw StructuralError("polynomial has a term outside the requested graded piece");
        v.push_back({*idx, t.coeff});
    }
    std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.idx < b.idx; });
    return v;
}

Polynomial MonomialSpace::to_polynomial(const SparseVec& v, const Multidegree& alpha) const
{
    const PieceIndex& pc = piece(alpha);
    std::vector<Term> terms;
    terms.reserve(v.size());
    for (const auto& e : v)
        terms.push_back({pc[e.idx], e.val});
    return Polynomial::from_terms(grading_.nvars(), field_, std::move(terms));
}

}  // namespace modinv
