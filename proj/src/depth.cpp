#include "modinv/depth.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "modinv/groebner.hpp"

namespace modinv {

const char* to_string(CertificateMethod m)
{
    switch (m) {
    case CertificateMethod::degreewise:
        return "degreewise";
    case CertificateMethod::freeness:
        return "freeness";
    case CertificateMethod::polynomial_ring:
        return "polynomial-ring-som";
    }
    return "?";
}

namespace {

int sum_total(const std::vector<Multidegree>& ds)
{
    int s = 0;
    for (const auto& d : ds)
        s += total_degree(d);
    return s;
}

void validate_elements(const InvariantRing& ring, const std::vector<Polynomial>& polys, const char* what)
{
    for (const auto& y : polys) {
        if (y.nvars() != ring.nvars() || y.field() != ring.field())
            throw StructuralError(std::string(what) + ": element " + y.to_string() + " lives in a different ring");
        if (y.is_zero() || !y.is_homogeneous() || y.degree() < 1)
            throw PreconditionError(std::string(what) + ": element " + y.to_string() +
                                    " is not homogeneous of positive degree");
        if (!is_invariant(y, ring.group()->generators()))
            throw PreconditionError(std::string(what) + ": element " + y.to_string() + " is not G-invariant");
    }
}

// The ring itself when every element is homogeneous for its grading, otherwise a total-degree copy.
const InvariantRing& working_ring(const InvariantRing& ring, const std::vector<Polynomial>& polys,
                                  std::unique_ptr<InvariantRing>& storage)
{
    for (const auto& y : polys)
        if (!ring.grading().homogeneous_degree(y)) {
            storage = std::make_unique<InvariantRing>(ring.coarsened());
            return *storage;
        }
    return ring;
}

std::vector<Multidegree> degrees_of(const InvariantRing& ring, const std::vector<Polynomial>& polys)
{
    std::vector<Multidegree> out;
    for (const auto& y : polys)
        out.push_back(*ring.grading().homogeneous_degree(y));
    return out;
}

// y * v, where v is in the coordinates of piece delta and y is homogeneous of multidegree beta.
SparseVec multiply(const MonomialSpace& space, const SparseVec& v, const Multidegree& delta, const Polynomial& y,
                   const Multidegree& beta)
{
    const PieceIndex& src = space.piece(delta);
    const PieceIndex& dst = space.piece(delta + beta);
    const FieldPrime& f = space.field();
    SparseVec raw;
    raw.reserve(v.size() * y.size());
    for (const auto& e : v)
        for (const auto& t : y.terms())
            raw.push_back({*dst.find(src[e.idx] * t.mono), f.mul(e.val, t.coeff)});
    std::sort(raw.begin(), raw.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.idx < b.idx; });
    SparseVec out;
    out.reserve(raw.size());
    for (const auto& e : raw) {
        if (!out.empty() && out.back().idx == e.idx) {
            out.back().val = f.add(out.back().val, e.val);
            if (out.back().val == 0)
                out.pop_back();
        } else {
            out.push_back(e);
        }
    }
    return out;
}

// The ideals (y_1..y_i)R, one echelon basis per multidegree, for target degrees <= top.
class QuotientTower {
public:
    QuotientTower(const InvariantRing& ring, int top) : ring_(ring), top_(top) {}

    // Appends y when multiplication by y is injective on the current quotient in every target
    // degree <= top; otherwise leaves the tower unchanged and returns a witness.
    std::optional<ZerodivisorWitness> extend(const Polynomial& y, std::size_t position)
    {
        const auto& space = ring_.space();
        const FieldPrime& f = ring_.field();
        const Multidegree beta = *ring_.grading().homogeneous_degree(y);
        std::map<Multidegree, EchelonBasis> updated;
        for (int t = total_degree(beta); t <= top_; ++t) {
            for (const auto& gamma : ring_.grading().multidegrees_of_total(t)) {
                const auto delta = subtract(gamma, beta);
                if (!delta)
                    continue;
                const auto& rows = ring_.basis(*delta);
                if (rows.empty())
                    continue;
                // Representatives of a basis of the quotient in degree delta.
                EchelonBasis below = ideal(*delta);
                std::vector<SparseVec> comp;
                for (const auto& r : rows)
                    if (below.insert(r))
                        comp.push_back(r);
                if (comp.empty())
                    continue;
                EchelonBasis next = ideal(gamma);
                std::vector<SparseVec> images;
                bool injective = true;
                for (const auto& c : comp) {
                    images.push_back(multiply(space, c, *delta, y, beta));
                    if (!next.insert(images.back()))
                        injective = false;
                }
                if (!injective) {
                    TrackedEchelon tracked(space.piece(gamma).size(), f);
                    for (const auto& row : ideal(gamma).reduced_rows())
                        tracked.insert(row, {});
                    for (std::size_t k = 0; k < images.size(); ++k)
                        if (auto rel = tracked.insert(images[k], {{static_cast<std::uint32_t>(k), 1}}))
                            return ZerodivisorWitness{position, space.to_polynomial(combine(*rel, comp, f), *delta), t};
                    throw InconsistencyError("regular sequence check: rank drop without a kernel relation");
                }
                updated.insert_or_assign(gamma, std::move(next));
            }
        }
        for (auto& [gamma, basis] : updated)
            ideal_.insert_or_assign(gamma, std::move(basis));
        return std::nullopt;
    }

private:
    EchelonBasis ideal(const Multidegree& gamma) const
    {
        auto it = ideal_.find(gamma);
        if (it != ideal_.end())
            return it->second;
        return EchelonBasis(ring_.space().piece(gamma).size(), ring_.field());
    }

    const InvariantRing& ring_;
    int top_;
    std::map<Multidegree, EchelonBasis> ideal_;
};

}  // namespace

bool regular_in_polynomial_ring(const std::vector<Polynomial>& seq, std::size_t r)
{
    if (seq.size() > r)
        return false;
    if (seq.empty())
        return true;
    for (const auto& y : seq) {
        if (y.nvars() != r)
            throw StructuralError("regular_in_polynomial_ring: element " + y.to_string() + " is not in " +
                                  std::to_string(r) + " variables");
        if (y.is_zero() || !y.is_homogeneous() || y.degree() < 1)
            throw PreconditionError("regular_in_polynomial_ring: element " + y.to_string() +
                                    " is not homogeneous of positive degree");
    }
    const auto gb = buchberger(seq, MonomialOrder{OrderKind::graded_revlex, {}, std::nullopt}, r, seq.front().field());
    return krull_dimension(gb) == static_cast<int>(r - seq.size());
}

RegularSequenceResult module_regular_sequence_check(const InvariantRing& m, const std::vector<Polynomial>& seq,
                                                    int cutoff)
{
    validate_elements(m, seq, "module_regular_sequence_check");
    m.require_degree(cutoff, "module_regular_sequence_check");
    std::unique_ptr<InvariantRing> storage;
    const InvariantRing& ring = working_ring(m, seq, storage);

    RegularSequenceResult out;
    out.certificate.verified_up_to = cutoff;
    out.certificate.method = CertificateMethod::degreewise;
    QuotientTower tower(ring, cutoff);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (auto w = tower.extend(seq[i], i)) {
            out.witness = std::move(w);
            return out;
        }
        out.certificate.sequence.push_back(seq[i]);
    }
    out.regular = true;
    return out;
}

FreenessResult freeness_test(const InvariantRing& m, const std::vector<Polynomial>& seq, int cutoff)
{
    validate_elements(m, seq, "freeness_test");
    m.require_degree(cutoff, "freeness_test");
    std::unique_ptr<InvariantRing> storage;
    const InvariantRing& ring = working_ring(m, seq, storage);
    const auto betas = degrees_of(ring, seq);
    const auto& space = ring.space();

    FreenessResult out;
    const auto len = static_cast<std::size_t>(cutoff) + 1;
    out.module_series.assign(len, 0);
    out.quotient_series.assign(len, 0);
    for (int t = 0; t <= cutoff; ++t) {
        for (const auto& gamma : ring.grading().multidegrees_of_total(t)) {
            const auto dim = static_cast<std::int64_t>(ring.dim(gamma));
            if (dim == 0)
                continue;
            EchelonBasis span(space.piece(gamma).size(), ring.field());
            for (std::size_t j = 0; j < seq.size(); ++j) {
                const auto delta = subtract(gamma, betas[j]);
                if (!delta)
                    continue;
                for (const auto& r : ring.basis(*delta))
                    span.insert(multiply(space, r, *delta, seq[j], betas[j]));
            }
            out.module_series[static_cast<std::size_t>(t)] += dim;
            out.quotient_series[static_cast<std::size_t>(t)] += dim - static_cast<std::int64_t>(span.rank());
        }
    }
    out.expected_quotient = out.module_series;
    int widest = 0;
    for (const auto& b : betas) {
        const int d = total_degree(b);
        widest = std::max(widest, d);
        for (std::size_t k = len; k-- > static_cast<std::size_t>(d);)
            out.expected_quotient[k] -= out.expected_quotient[k - static_cast<std::size_t>(d)];
    }
    out.free = true;
    for (std::size_t k = 0; k < len; ++k)
        if (out.expected_quotient[k] != out.quotient_series[k]) {
            out.free = false;
            out.first_mismatch = static_cast<int>(k);
            break;
        }
    out.window_vanishes = true;
    for (int t = std::max(0, cutoff - widest + 1); t <= cutoff && widest > 0; ++t)
        if (out.quotient_series[static_cast<std::size_t>(t)] != 0)
            out.window_vanishes = false;
    return out;
}

struct KoszulComplex::State {
    std::unique_ptr<InvariantRing> owned;
    const InvariantRing* ring = nullptr;
    std::vector<Polynomial> hsop;
    std::vector<Multidegree> degs;
    std::vector<Polynomial> quot;
    std::vector<Multidegree> quot_degs;
    std::vector<Multidegree> subset_deg;
    std::map<Multidegree, EchelonBasis> relations;
    std::map<std::pair<std::size_t, Multidegree>, std::vector<SparseVec>> products;
    std::map<std::pair<int, Multidegree>, std::int64_t> ranks;

    std::size_t n() const { return hsop.size(); }

    const EchelonBasis& relation(const Multidegree& delta)
    {
        auto it = relations.find(delta);
        if (it != relations.end())
            return it->second;
        const auto& space = ring->space();
        EchelonBasis span(space.piece(delta).size(), ring->field());
        for (std::size_t k = 0; k < quot.size(); ++k)
            if (const auto below = subtract(delta, quot_degs[k]))
                for (const auto& r : ring->basis(*below))
                    span.insert(multiply(space, r, *below, quot[k], quot_degs[k]));
        return relations.emplace(delta, std::move(span)).first->second;
    }

    std::int64_t module_dim(const Multidegree& delta)
    {
        const auto d = static_cast<std::int64_t>(ring->dim(delta));
        if (quot.empty() || d == 0)
            return d;
        return d - static_cast<std::int64_t>(relation(delta).rank());
    }

    const std::vector<SparseVec>& product(std::size_t j, const Multidegree& delta)
    {
        auto key = std::make_pair(j, delta);
        auto it = products.find(key);
        if (it != products.end())
            return it->second;
        std::vector<SparseVec> out;
        for (const auto& r : ring->basis(delta))
            out.push_back(multiply(ring->space(), r, delta, hsop[j], degs[j]));
        return products.emplace(std::move(key), std::move(out)).first->second;
    }

    std::int64_t chain_dim(int i, const Multidegree& alpha)
    {
        std::int64_t total = 0;
        for (std::uint32_t s = 0; s < subset_deg.size(); ++s)
            if (std::popcount(s) == i)
                if (const auto delta = subtract(alpha, subset_deg[s]))
                    total += module_dim(*delta);
        return total;
    }

    // Rank of d_i : C_i -> C_{i-1} in multidegree alpha.
    std::int64_t rank(int i, const Multidegree& alpha)
    {
        if (i <= 0 || i > static_cast<int>(n()))
            return 0;
        auto key = std::make_pair(i, alpha);
        if (auto it = ranks.find(key); it != ranks.end())
            return it->second;
        const auto& space = ring->space();
        const FieldPrime& f = ring->field();
        std::map<std::uint32_t, std::uint32_t> offset;
        std::uint32_t ambient = 0;
        for (std::uint32_t s = 0; s < subset_deg.size(); ++s)
            if (std::popcount(s) == i - 1)
                if (const auto delta = subtract(alpha, subset_deg[s])) {
                    offset[s] = ambient;
                    ambient += static_cast<std::uint32_t>(space.piece(*delta).size());
                }
        EchelonBasis span(ambient, f);
        if (!quot.empty())
            for (const auto& [s, off] : offset)
                for (auto row : relation(*subtract(alpha, subset_deg[s])).reduced_rows()) {
                    for (auto& e : row)
                        e.idx += off;
                    span.insert(std::move(row));
                }
        const auto base = static_cast<std::int64_t>(span.rank());
        for (std::uint32_t s = 0; s < subset_deg.size(); ++s) {
            if (std::popcount(s) != i)
                continue;
            const auto delta = subtract(alpha, subset_deg[s]);
            if (!delta)
                continue;
            const std::size_t count = ring->dim(*delta);
            for (std::size_t r = 0; r < count; ++r) {
                SparseVec image;
                for (std::size_t j = 0; j < n(); ++j) {
                    if (!(s & (1u << j)))
                        continue;
                    const bool odd = std::popcount(s & ((1u << j) - 1)) % 2 == 1;
                    const std::uint32_t off = offset.at(s & ~(1u << j));
                    const auto& prod = product(j, *delta)[r];
                    for (const auto& e : prod)
                        image.push_back({e.idx + off, odd ? f.neg(e.val) : e.val});
                }
                std::sort(image.begin(), image.end(),
                          [](const SparseEntry& a, const SparseEntry& b) { return a.idx < b.idx; });
                span.insert(std::move(image));
            }
        }
        const auto result = static_cast<std::int64_t>(span.rank()) - base;
        ranks.emplace(std::move(key), result);
        return result;
    }
};

KoszulComplex::KoszulComplex(const InvariantRing& ring, std::vector<Polynomial> hsop, std::vector<Polynomial> quotient_by)
    : state_(std::make_unique<State>())
{
    if (hsop.size() != ring.nvars())
        throw PreconditionError("koszul_depth: an hsop needs " + std::to_string(ring.nvars()) + " elements, got " +
                                std::to_string(hsop.size()));
    validate_elements(ring, hsop, "koszul_depth");
    validate_elements(ring, quotient_by, "koszul_depth quotient");
    const auto gb = buchberger(hsop, MonomialOrder{OrderKind::graded_revlex, {}, std::nullopt}, ring.nvars(), ring.field());
    if (krull_dimension(gb) != 0)
        throw PreconditionError("koszul_depth: the given elements are not a system of parameters");
    if (hsop.size() > 16)
        throw CapacityError("koszul_depth: more than 16 parameters");

    auto all = hsop;
    all.insert(all.end(), quotient_by.begin(), quotient_by.end());
    state_->ring = &working_ring(ring, all, state_->owned);
    state_->hsop = std::move(hsop);
    state_->quot = std::move(quotient_by);
    state_->degs = degrees_of(*state_->ring, state_->hsop);
    state_->quot_degs = degrees_of(*state_->ring, state_->quot);
    const std::size_t n = state_->n();
    const auto blocks = static_cast<std::size_t>(state_->ring->grading().blocks());
    state_->subset_deg.assign(std::size_t{1} << n, Multidegree(blocks, 0));
    for (std::uint32_t s = 1; s < state_->subset_deg.size(); ++s) {
        const auto low = static_cast<std::size_t>(std::countr_zero(s));
        state_->subset_deg[s] = state_->subset_deg[s & (s - 1)] + state_->degs[low];
    }
}

KoszulComplex::~KoszulComplex() = default;

int KoszulComplex::degree_sum() const
{
    return sum_total(state_->degs);
}

KoszulProfile KoszulComplex::profile(int cutoff)
{
    auto& st = *state_;
    KoszulProfile out;
    out.hsop = st.hsop;
    out.cutoff = cutoff;
    out.internal_bound = cutoff + degree_sum();
    st.ring->require_degree(out.internal_bound, "koszul_depth");
    const int n = static_cast<int>(st.n());
    out.top_nonvanishing = -1;
    for (int t = 0; t <= out.internal_bound; ++t) {
        std::vector<std::int64_t> h(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& alpha : st.ring->grading().multidegrees_of_total(t))
            for (int i = 0; i <= n; ++i) {
                const auto c = st.chain_dim(i, alpha);
                if (c == 0)
                    continue;
                h[static_cast<std::size_t>(i)] += c - st.rank(i, alpha) - st.rank(i + 1, alpha);
            }
        for (int i = 0; i <= n; ++i)
            if (h[static_cast<std::size_t>(i)] != 0) {
                out.homology[{i, t}] = h[static_cast<std::size_t>(i)];
                out.top_nonvanishing = std::max(out.top_nonvanishing, i);
            }
    }
    if (out.top_nonvanishing < 0)
        throw PreconditionError("koszul_depth: the module vanishes through the internal bound");
    return out;
}

KoszulProfile koszul_depth(const InvariantRing& m, const std::vector<Polynomial>& hsop, int cutoff,
                           const std::vector<Polynomial>& quotient_by)
{
    KoszulComplex k(m, hsop, quotient_by);
    return k.profile(cutoff);
}

namespace {

bool parameters(const std::vector<Polynomial>& elems, std::size_t n, const FieldPrime& f)
{
    const auto gb = buchberger(elems, MonomialOrder{OrderKind::graded_revlex, {}, std::nullopt}, n, f);
    return krull_dimension(gb) == static_cast<int>(n - elems.size());
}

}  // namespace

HsopChoice find_hsop(InvariantRing& ring, int search_degree)
{
    const std::size_t n = ring.nvars();
    const FieldPrime& f = ring.field();
    ring.compute_up_to(search_degree);
    HsopChoice out;
    out.source = "search";
    auto try_add = [&](const Polynomial& c) {
        auto trial = out.elements;
        trial.push_back(c);
        if (!parameters(trial, n, f))
            return false;
        out.elements = std::move(trial);
        return true;
    };
    for (int t = 1; t <= search_degree && out.elements.size() < n; ++t)
        for (const auto& alpha : ring.grading().multidegrees_of_total(t))
            for (const auto& row : ring.basis(alpha))
                if (out.elements.size() < n)
                    try_add(ring.space().to_polynomial(row, alpha));
    // Basis elements can all be unlucky over a small field; mix within each piece.
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_int_distribution<std::int64_t> coeff(0, static_cast<std::int64_t>(f.p()) - 1);
    for (int t = 1; t <= search_degree && out.elements.size() < n; ++t)
        for (const auto& alpha : ring.grading().multidegrees_of_total(t)) {
            const auto& rows = ring.basis(alpha);
            for (int attempt = 0; attempt < 8 && rows.size() > 1 && out.elements.size() < n; ++attempt) {
                SparseVec v;
                for (const auto& r : rows)
                    v = axpy(v, static_cast<Coeff>(coeff(rng)), r, f);
                if (!v.empty())
                    try_add(ring.space().to_polynomial(v, alpha));
            }
        }
    if (out.elements.size() == n)
        return out;
    out.elements = dickson_invariants(f, n);
    out.source = "dickson";
    return out;
}

namespace {

std::optional<Polynomial> random_candidate(const InvariantRing& ring, int max_degree, std::mt19937_64& rng)
{
    std::vector<Multidegree> live;
    for (int t = 1; t <= max_degree; ++t)
        for (const auto& alpha : ring.grading().multidegrees_of_total(t))
            if (ring.dim(alpha) > 0)
                live.push_back(alpha);
    if (live.empty())
        return std::nullopt;
    const auto& alpha = live[std::uniform_int_distribution<std::size_t>(0, live.size() - 1)(rng)];
    const FieldPrime& f = ring.field();
    std::uniform_int_distribution<std::int64_t> coeff(0, static_cast<std::int64_t>(f.p()) - 1);
    SparseVec v;
    for (const auto& r : ring.basis(alpha))
        v = axpy(v, static_cast<Coeff>(coeff(rng)), r, f);
    if (v.empty())
        return std::nullopt;
    return ring.space().to_polynomial(v, alpha);
}

int max_total(const std::vector<Polynomial>& polys)
{
    int m = 0;
    for (const auto& p : polys)
        m = std::max(m, p.degree());
    return m;
}

}  // namespace

DepthReport depth_report(const GroupPtr& g, int cutoff, const DepthOptions& options)
{
    InvariantRing ring(g, options.piece_cap);
    return depth_report(ring, cutoff, options);
}

DepthReport depth_report(InvariantRing& ring, int cutoff, const DepthOptions& options)
{
    if (cutoff < 0)
        throw PreconditionError("depth_report: negative cutoff");
    const GroupPtr& g = ring.group();
    const int search_degree = std::clamp(static_cast<int>(g->order()), 2, kDefaultDegreeCap);
    const HsopChoice hsop = find_hsop(ring, search_degree);

    DepthReport out;
    out.hsop_source = hsop.source;
    out.seed = options.seed;
    int degree_sum = 0;
    for (const auto& h : hsop.elements)
        degree_sum += h.degree();
    const int rerun = cutoff + 2;
    ring.compute_up_to(rerun + degree_sum);

    KoszulComplex koszul(ring, hsop.elements);
    out.koszul = koszul.profile(cutoff);
    out.koszul_rerun = koszul.profile(rerun);
    if (out.koszul.depth_claim() != out.koszul_rerun.depth_claim())
        throw InconsistencyError("depth_report: Koszul depth " + std::to_string(out.koszul.depth_claim()) +
                                 " at cutoff " + std::to_string(cutoff) + " but " +
                                 std::to_string(out.koszul_rerun.depth_claim()) + " at cutoff " + std::to_string(rerun));

    // Maximal regular sequence: hsop elements first, then random invariants.
    std::unique_ptr<InvariantRing> storage;
    const InvariantRing& work = working_ring(ring, hsop.elements, storage);
    const int top = out.koszul.internal_bound;
    QuotientTower tower(work, top);
    std::vector<Polynomial> seq;
    for (const auto& h : hsop.elements)
        if (!tower.extend(h, seq.size()))
            seq.push_back(h);
    std::mt19937_64 rng(options.seed);
    const int cand_degree = std::max(1, max_total(hsop.elements));
    while (seq.size() < ring.nvars()) {
        bool grown = false;
        for (int a = 0; a < options.random_attempts && !grown; ++a) {
            auto c = random_candidate(work, cand_degree, rng);
            if (c && !tower.extend(*c, seq.size())) {
                seq.push_back(*c);
                grown = true;
            }
        }
        if (!grown)
            break;
    }
    out.certificate = {seq, top, CertificateMethod::degreewise};
    out.freeness = freeness_test(work, seq, top);
    if (!out.freeness.free)
        throw InconsistencyError("depth_report: certified regular sequence of length " + std::to_string(seq.size()) +
                                 " fails the freeness test at degree " + std::to_string(*out.freeness.first_mismatch));

    out.depth = out.koszul.depth_claim();
    out.agreement = static_cast<int>(seq.size()) == out.depth;
    if (!out.agreement)
        throw InconsistencyError("depth_report: Koszul depth " + std::to_string(out.depth) +
                                 " but the regular sequence search certified length " + std::to_string(seq.size()) +
                                 " through degree " + std::to_string(top));
    return out;
}

int default_cutoff(const GroupPtr& g, std::size_t piece_cap)
{
    InvariantRing ring(g, piece_cap);
    const int order = static_cast<int>(g->order());
    const int n = static_cast<int>(g->n());
    const int symonds = n >= 2 ? std::max(order, n * (order - 1)) : order;
    const int bound = std::min(symonds, kDefaultDegreeCap);
    const auto gens = minimal_generators(ring, bound);
    int top = 0;
    for (const auto& gen : gens)
        top = std::max(top, gen.degree);
    const auto hsop = find_hsop(ring, std::clamp(order, 2, kDefaultDegreeCap));
    int sum = 0;
    for (const auto& h : hsop.elements)
        sum += h.degree();
    return top + sum;
}

}  // namespace modinv
