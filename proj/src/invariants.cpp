#include "modinv/invariants.hpp"

#include <algorithm>
#include <string>

namespace modinv {

namespace {

bool is_coarsening(const Grading& coarse, const Grading& fine)
{
    if (coarse.nvars() != fine.nvars())
        return false;
    std::map<int, int> block_map;
    for (std::size_t i = 0; i < fine.nvars(); ++i) {
        auto [it, fresh] = block_map.try_emplace(fine.block_of(i), coarse.block_of(i));
        if (it->second != coarse.block_of(i))
            return false;
    }
    return true;
}

}  // namespace

InvariantRing::InvariantRing(GroupPtr group, std::size_t piece_cap)
    : InvariantRing(group, group->stable_grading(), piece_cap)
{
}

InvariantRing::InvariantRing(GroupPtr group, Grading grading, std::size_t piece_cap)
    : group_(std::move(group)), cap_(piece_cap)
{
    if (!is_coarsening(grading, group_->stable_grading()))
        throw PreconditionError("grading is not preserved by the group");
    space_ = std::make_shared<MonomialSpace>(std::move(grading), group_->field(), piece_cap);
    for (const auto& g : group_->generators())
        substitutions_.push_back(inverse_mod(g, group_->field()));
}

void InvariantRing::require_degree(int needed, const char* what) const
{
    if (needed > computed_up_to_)
        throw CapacityError(std::string(what) + " requires invariants up to degree " + std::to_string(needed) +
                            " but they are computed only up to degree " + std::to_string(computed_up_to_));
}

const std::vector<SparseVec>& InvariantRing::basis(const Multidegree& alpha) const
{
    require_degree(total_degree(alpha), "this query");
    return pieces_.at(alpha);
}

const std::vector<SparseVec>& InvariantRing::action_images(std::size_t gen, const Multidegree& alpha)
{
    auto key = std::make_pair(gen, alpha);
    auto it = images_.find(key);
    if (it != images_.end())
        return it->second;

    const PieceIndex& pc = space_->piece(alpha);
    const FieldPrime& f = field();
    const std::size_t n = nvars();
    std::vector<SparseVec> out;
    out.reserve(pc.size());
    if (total_degree(alpha) == 0) {
        out.push_back(SparseVec{{0, 1}});
    } else {
        const Matrix& sub = substitutions_[gen];
        for (std::size_t k = 0; k < pc.size(); ++k) {
            const Monomial& m = pc[k];
            std::size_t j = n;
            while (m[--j] == 0) {
            }
            Monomial rest = m;
            rest[j] = static_cast<Exponent>(rest[j] - 1);
            Multidegree beta = alpha;
            beta[static_cast<std::size_t>(grading().block_of(j))] -= 1;
            const auto& prev = action_images(gen, beta);
            const auto rest_idx = *space_->piece(beta).find(rest);
            Polynomial prev_poly = space_->to_polynomial(prev[rest_idx], beta);
            std::vector<Term> form;
            for (std::size_t c = 0; c < n; ++c) {
                const Coeff v = f.reduce(sub(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)));
                if (v == 0)
                    continue;
                Monomial x(n);
                x[c] = 1;
                form.push_back({std::move(x), v});
            }
            out.push_back(space_->to_vector(prev_poly * Polynomial::from_terms(n, f, std::move(form)), alpha));
        }
    }
    return images_.emplace(std::move(key), std::move(out)).first->second;
}

void InvariantRing::compute_piece(const Multidegree& alpha)
{
    const PieceIndex& pc = space_->piece(alpha);
    const FieldPrime& f = field();
    const std::size_t dim = pc.size();
    const std::size_t ngens = substitutions_.size();
    std::vector<SparseVec> basis;
    if (ngens == 0) {
        for (std::size_t k = 0; k < dim; ++k)
            basis.push_back(SparseVec{{static_cast<std::uint32_t>(k), 1}});
        pieces_[alpha] = std::move(basis);
        return;
    }
    std::vector<const std::vector<SparseVec>*> imgs;
    for (std::size_t g = 0; g < ngens; ++g)
        imgs.push_back(&action_images(g, alpha));
    std::vector<SparseVec> stacked(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        SparseVec v;
        for (std::size_t g = 0; g < ngens; ++g) {
            SparseVec d = axpy((*imgs[g])[k], f.neg(1), SparseVec{{static_cast<std::uint32_t>(k), 1}}, f);
            for (auto& e : d)
                v.push_back({static_cast<std::uint32_t>(e.idx + g * dim), e.val});
        }
        stacked[k] = std::move(v);
    }
    pieces_[alpha] = kernel_of_images(stacked, dim * ngens, f);
}

void InvariantRing::compute_up_to(int d)
{
    for (int t = computed_up_to_ + 1; t <= d; ++t) {
        for (const auto& alpha : grading().multidegrees_of_total(t))
            if (!pieces_.count(alpha))
                compute_piece(alpha);
        computed_up_to_ = t;
        // Extending needs only the images of the top computed degree.
        for (auto it = images_.begin(); it != images_.end();) {
            if (total_degree(it->first.second) < t)
                it = images_.erase(it);
            else
                ++it;
        }
    }
}

std::vector<Polynomial> InvariantRing::basis_polynomials(int d) const
{
    require_degree(d, "basis_polynomials");
    std::vector<Polynomial> out;
    for (const auto& alpha : grading().multidegrees_of_total(d))
        for (const auto& row : pieces_.at(alpha))
            out.push_back(space_->to_polynomial(row, alpha));
    std::sort(out.begin(), out.end(),
              [](const Polynomial& a, const Polynomial& b) { return a.terms().front().mono > b.terms().front().mono; });
    return out;
}

HilbertCoefficients InvariantRing::hilbert(int up_to) const
{
    require_degree(up_to, "hilbert");
    HilbertCoefficients h(static_cast<std::size_t>(up_to + 1), 0);
    for (const auto& [alpha, rows] : pieces_) {
        const int t = total_degree(alpha);
        if (t <= up_to)
            h[static_cast<std::size_t>(t)] += static_cast<std::int64_t>(rows.size());
    }
    return h;
}

InvariantRing InvariantRing::coarsened() const
{
    InvariantRing out(group_, Grading::total(nvars()), cap_);
    for (int d = 0; d <= computed_up_to_; ++d) {
        const Multidegree total{d};
        const PieceIndex& target = out.space_->piece(total);
        std::vector<std::pair<std::uint32_t, SparseVec>> rows;
        for (const auto& alpha : grading().multidegrees_of_total(d)) {
            const PieceIndex& src = space_->piece(alpha);
            for (const auto& row : pieces_.at(alpha)) {
                SparseVec v;
                v.reserve(row.size());
                for (const auto& e : row)
                    v.push_back({*target.find(src[e.idx]), e.val});
                std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.idx < b.idx; });
                rows.emplace_back(v.front().idx, std::move(v));
            }
        }
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<SparseVec> basis;
        basis.reserve(rows.size());
        for (auto& r : rows)
            basis.push_back(std::move(r.second));
        out.pieces_[total] = std::move(basis);
    }
    out.computed_up_to_ = computed_up_to_;
    return out;
}

InvariantRing InvariantRing::from_pieces(GroupPtr group, Grading grading,
                                         std::map<Multidegree, std::vector<SparseVec>> pieces, int computed_up_to,
                                         std::size_t piece_cap)
{
    InvariantRing out(std::move(group), std::move(grading), piece_cap);
    for (int d = 0; d <= computed_up_to; ++d)
        for (const auto& alpha : out.grading().multidegrees_of_total(d))
            if (!pieces.count(alpha))
                throw StructuralError("serialized invariant ring is missing a piece of degree " + std::to_string(d));
    out.pieces_ = std::move(pieces);
    out.computed_up_to_ = computed_up_to;
    return out;
}

std::vector<Polynomial> invariant_basis(const GroupPtr& g, int d, std::size_t piece_cap)
{
    InvariantRing ring(g, piece_cap);
    ring.compute_up_to(d);
    return ring.basis_polynomials(d);
}

HilbertCoefficients hilbert_coefficients(const GroupPtr& g, int max_degree, std::size_t piece_cap)
{
    InvariantRing ring(g, piece_cap);
    ring.compute_up_to(max_degree);
    return ring.hilbert(max_degree);
}

std::vector<Generator> minimal_generators(InvariantRing& ring, int max_degree)
{
    ring.compute_up_to(max_degree);
    const MonomialSpace& space = ring.space();
    const Grading& grading = ring.grading();
    struct Found {
        Multidegree mdeg;
        Polynomial poly;
    };
    std::vector<Found> found;
    for (int d = 1; d <= max_degree; ++d) {
        std::vector<Found> fresh;
        for (const auto& alpha : grading.multidegrees_of_total(d)) {
            const PieceIndex& pc = space.piece(alpha);
            EchelonBasis decomposable(pc.size(), ring.field());
            for (const auto& gen : found) {
                auto rest = subtract(alpha, gen.mdeg);
                if (!rest)
                    continue;
                for (const auto& row : ring.basis(*rest))
                    decomposable.insert(space.to_vector(gen.poly * space.to_polynomial(row, *rest), alpha));
            }
            for (const auto& row : ring.basis(alpha))
                if (decomposable.insert(row))
                    fresh.push_back({alpha, space.to_polynomial(row, alpha)});
        }
        for (auto& f : fresh)
            found.push_back(std::move(f));
    }
    std::vector<Generator> out;
    for (auto& f : found)
        out.push_back({total_degree(f.mdeg), std::move(f.poly)});
    return out;
}

std::vector<Generator> minimal_generators(const GroupPtr& g, int max_degree, std::size_t piece_cap)
{
    InvariantRing ring(g, piece_cap);
    return minimal_generators(ring, max_degree);
}

std::vector<Polynomial> dickson_invariants(FieldPrime field, std::size_t n, std::size_t max_factors)
{
    if (n == 0)
        throw PreconditionError("Dickson invariants need n >= 1");
    const std::size_t p = field.p();
    std::size_t count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (count > max_factors / p)
            throw CapacityError("orbit product over F_" + std::to_string(p) + "^" + std::to_string(n) +
                                " exceeds the cap of " + std::to_string(max_factors) + " factors");
        count *= p;
    }
    const std::size_t big_n = n + 1;  // variable n is the auxiliary X
    Polynomial product = Polynomial::constant(big_n, field, 1);
    std::vector<Coeff> v(n, 0);
    for (std::size_t k = 0; k < count; ++k) {
        Polynomial factor = Polynomial::variable(big_n, field, n);
        for (std::size_t i = 0; i < n; ++i)
            if (v[i])
                factor += Polynomial::variable(big_n, field, i).scaled(v[i]);
        product = product * factor;
        for (std::size_t i = 0; i < n; ++i) {
            if (++v[i] < p)
                break;
            v[i] = 0;
        }
    }
    std::vector<Polynomial> out;
    std::size_t pi = count / p;  // p^(n-1)
    for (std::size_t i = n; i-- > 0;) {
        std::vector<Term> terms;
        for (const auto& t : product.terms()) {
            if (t.mono[n] != pi)
                continue;
            Monomial m(n);
            for (std::size_t j = 0; j < n; ++j)
                m[j] = t.mono[j];
            terms.push_back({std::move(m), t.coeff});
        }
        Polynomial coeff = Polynomial::from_terms(n, field, std::move(terms));
        if ((n - i) % 2 == 1)
            coeff = -coeff;
        out.push_back(std::move(coeff));
        pi /= p;
    }
    return out;
}

std::vector<std::size_t> left_transversal(const SubgroupHandle& h)
{
    const auto& g = h.parent();
    std::vector<char> covered(g->order(), 0);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < g->order(); ++i) {
        if (covered[i])
            continue;
        reps.push_back(i);
        for (auto m : h.members())
            covered[g->product_index(i, m)] = 1;
    }
    return reps;
}

Polynomial transfer(const GroupPtr& g, const SubgroupHandle& h, const Polynomial& f)
{
    if (h.parent() != g)
        throw PreconditionError("transfer: H is not a subgroup handle of G");
    if (!is_invariant(f, h.generating_set()))
        throw PreconditionError("transfer: " + f.to_string() + " is not invariant under H");
    Polynomial sum(f.nvars(), f.field());
    for (auto r : left_transversal(h))
        sum += act_on_polynomial(g->element(r), f);
    if (!is_invariant(sum, g->generators()))
        throw InconsistencyError("transfer output is not G-invariant: " + sum.to_string());
    return sum;
}

HilbertCoefficients subalgebra_hilbert(const std::vector<Polynomial>& gens, int max_degree, std::size_t piece_cap)
{
    if (gens.empty())
        throw PreconditionError("subalgebra_hilbert needs at least one generator");
    const std::size_t n = gens.front().nvars();
    const FieldPrime field = gens.front().field();
    for (const auto& g : gens)
        if (g.is_zero() || !g.is_homogeneous() || g.degree() < 1)
            throw PreconditionError("subalgebra generators must be nonzero homogeneous of positive degree");
    MonomialSpace space(Grading::total(n), field, piece_cap);
    std::vector<std::vector<SparseVec>> basis(static_cast<std::size_t>(max_degree + 1));
    basis[0] = {SparseVec{{0, 1}}};
    HilbertCoefficients h(static_cast<std::size_t>(max_degree + 1), 0);
    h[0] = 1;
    for (int d = 1; d <= max_degree; ++d) {
        const Multidegree md{d};
        EchelonBasis span(space.piece(md).size(), field);
        for (const auto& g : gens) {
            const int rest = d - g.degree();
            if (rest < 0)
                continue;
            for (const auto& row : basis[static_cast<std::size_t>(rest)])
                span.insert(space.to_vector(g * space.to_polynomial(row, Multidegree{rest}), md));
        }
        basis[static_cast<std::size_t>(d)] = span.reduced_rows();
        h[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(span.rank());
    }
    return h;
}

}  // namespace modinv
