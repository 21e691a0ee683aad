#include "modinv/theorems.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "modinv/coaction.hpp"

namespace modinv {

const char* to_string(VerdictStatus s)
{
    switch (s) {
    case VerdictStatus::pass:
        return "pass";
    case VerdictStatus::fail:
        return "fail";
    case VerdictStatus::vacuous:
        return "vacuous";
    case VerdictStatus::hypothesis_not_satisfied:
        return "hypothesis-not-satisfied";
    }
    return "?";
}

std::string describe_instance(const GroupPtr& g)
{
    std::ostringstream os;
    os << "p=" << g->field().p() << " n=" << g->n() << " gens=[";
    for (std::size_t k = 0; k < g->generators().size(); ++k) {
        const Matrix& m = g->generators()[k];
        os << (k ? "," : "") << "[";
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            os << (r ? "," : "") << "[";
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                os << (c ? "," : "") << m(r, c);
            os << "]";
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

void add_koszul_witness(TheoremVerdict& v, const DepthReport& depth)
{
    for (const auto& [key, dim] : depth.koszul.homology)
        if (key.first == depth.koszul.top_nonvanishing && key.first > 0)
            v.witnesses.push_back("H_" + std::to_string(key.first) + " in degree " + std::to_string(key.second) +
                                  " has dimension " + std::to_string(dim));
    for (const auto& y : depth.certificate.sequence)
        v.witnesses.push_back("regular: " + y.to_string());
}

void add_depth_cutoffs(TheoremVerdict& v, const DepthReport& depth)
{
    v.cutoffs.emplace_back("koszul", depth.koszul.cutoff);
    v.cutoffs.emplace_back("koszul_rerun", depth.koszul_rerun.cutoff);
    v.cutoffs.emplace_back("koszul_internal_bound", depth.koszul_rerun.internal_bound);
    v.cutoffs.emplace_back("regular_sequence", depth.certificate.verified_up_to);
}

bool modular(const GroupPtr& g)
{
    return g->order() % g->field().p() == 0;
}

}  // namespace

TheoremVerdict duflot_bound_check(const GroupPtr& g, const DepthReport& depth)
{
    TheoremVerdict v;
    v.theorem = "duflot-bound";
    v.instance = describe_instance(g);
    const auto p = sylow_subgroup(g);
    const auto c = static_cast<std::int64_t>(fixed_subspace(p).dim());
    v.quantities = {{"order", static_cast<std::int64_t>(g->order())},
                    {"sylow_order", static_cast<std::int64_t>(p.order())},
                    {"fixed_dim", c},
                    {"bound", c},
                    {"depth", depth.depth}};
    add_depth_cutoffs(v, depth);
    if (!modular(g)) {
        v.status = VerdictStatus::vacuous;
        v.note = "p does not divide |G|";
        return v;
    }
    v.status = depth.depth >= c ? VerdictStatus::pass : VerdictStatus::fail;
    if (v.status == VerdictStatus::fail)
        add_koszul_witness(v, depth);
    return v;
}

TheoremVerdict duflot_bound_check(const GroupPtr& g, int cutoff, const DepthOptions& options)
{
    return duflot_bound_check(g, depth_report(g, cutoff, options));
}

TheoremVerdict es_comparison(const GroupPtr& g, const DepthReport& depth)
{
    TheoremVerdict v;
    v.theorem = "es-comparison";
    v.instance = describe_instance(g);
    const auto c = static_cast<std::int64_t>(fixed_subspace(sylow_subgroup(g)).dim());
    const auto n = static_cast<std::int64_t>(g->n());
    const std::int64_t bound = std::min(c + 2, n);
    v.quantities = {{"fixed_dim", c}, {"bound", bound}, {"depth", depth.depth}, {"equality", depth.depth == bound}};
    add_depth_cutoffs(v, depth);
    if (!modular(g)) {
        v.status = VerdictStatus::vacuous;
        v.note = "p does not divide |G|";
        return v;
    }
    v.status = depth.depth >= bound ? VerdictStatus::pass : VerdictStatus::fail;
    if (v.status == VerdictStatus::fail)
        add_koszul_witness(v, depth);
    return v;
}

TheoremVerdict es_comparison(const GroupPtr& g, int cutoff, const DepthOptions& options)
{
    return es_comparison(g, depth_report(g, cutoff, options));
}

TheoremVerdict duflot_lifting_check(const GroupPtr& g, const Subspace& c, const std::vector<Polynomial>& seq,
                                    int cutoff, std::size_t piece_cap)
{
    InvariantRing ring(g, piece_cap);
    ring.compute_up_to(cutoff);
    return duflot_lifting_check(ring, c, seq, cutoff);
}

TheoremVerdict duflot_lifting_check(const InvariantRing& ring, const Subspace& c, const std::vector<Polynomial>& seq,
                                    int cutoff)
{
    const GroupPtr& g = ring.group();
    if (c.ambient() != g->n() || c.field() != g->field())
        throw StructuralError("duflot_lifting_check: subspace and group act on different spaces");
    const auto p = sylow_subgroup(g);
    if (!c.is_subspace_of(fixed_subspace(p)))
        throw PreconditionError("duflot_lifting_check: C = " + c.to_string() + " is not inside V^P");
    for (const auto& y : seq)
        if (y.is_zero() || !y.is_homogeneous() || y.degree() < 1 || !is_invariant(y, g->generators()))
            throw PreconditionError("duflot_lifting_check: " + y.to_string() +
                                    " is not a G-invariant homogeneous element of positive degree");

    TheoremVerdict v;
    v.theorem = "duflot-lifting";
    v.instance = describe_instance(g) + " C=" + c.to_string();
    v.cutoffs.emplace_back("regular_sequence", cutoff);
    std::vector<Polynomial> restricted;
    bool restrictions_nonzero = true;
    for (const auto& y : seq) {
        restricted.push_back(restrict_to_subspace(y, c));
        v.witnesses.push_back("restriction of " + y.to_string() + " = " + restricted.back().to_string());
        restrictions_nonzero = restrictions_nonzero && !restricted.back().is_zero();
    }
    v.quantities = {{"dim_C", static_cast<std::int64_t>(c.dim())}, {"length", static_cast<std::int64_t>(seq.size())}};
    if (!restrictions_nonzero || !regular_in_polynomial_ring(restricted, c.dim())) {
        v.status = VerdictStatus::hypothesis_not_satisfied;
        v.note = "restrictions are not a regular sequence in F[C]";
        return v;
    }
    const auto result = module_regular_sequence_check(ring, seq, cutoff);
    if (result.regular) {
        v.status = VerdictStatus::pass;
        return v;
    }
    v.status = VerdictStatus::fail;
    const auto& w = *result.witness;
    v.witnesses.push_back("element " + std::to_string(w.position + 1) + " kills " + w.element.to_string() +
                          " modulo the earlier ones in degree " + std::to_string(w.degree));
    return v;
}

TheoremVerdict stabilizer_component_check(const GroupPtr& g, const Subspace& u, int cutoff, std::size_t piece_cap)
{
    if (u.ambient() != g->n() || u.field() != g->field())
        throw StructuralError("stabilizer_component_check: subspace and group act on different spaces");
    TheoremVerdict v;
    v.theorem = "stabilizer-component";
    v.instance = describe_instance(g) + " U=" + u.to_string();
    v.cutoffs.emplace_back("degree", cutoff);
    v.note = "checks inclusion and Hilbert domination only; the full component isomorphism is not verified";
    const auto gu = pointwise_stabilizer(g, u);
    const auto sub = gu.as_group();
    const auto big = hilbert_coefficients(g, cutoff, piece_cap);
    const auto small = hilbert_coefficients(sub, cutoff, piece_cap);
    v.quantities = {{"stabilizer_order", static_cast<std::int64_t>(gu.order())}};
    bool ok = true;
    for (int d = 0; d <= cutoff; ++d) {
        for (const auto& f : invariant_basis(g, d, piece_cap))
            if (!is_invariant(f, sub->generators())) {
                ok = false;
                v.witnesses.push_back("not G_U-invariant: " + f.to_string());
            }
        const auto k = static_cast<std::size_t>(d);
        if (small[k] < big[k]) {
            ok = false;
            v.witnesses.push_back("degree " + std::to_string(d) + ": dim F[V]^{G_U} = " + std::to_string(small[k]) +
                                  " < dim F[V]^G = " + std::to_string(big[k]));
        }
    }
    v.status = ok ? VerdictStatus::pass : VerdictStatus::fail;
    return v;
}

TheoremVerdict carlson_detection_check(const GroupPtr& g, std::size_t s, int cutoff, std::optional<int> depth,
                                       std::size_t subspace_cap, std::size_t piece_cap)
{
    if (s > g->n())
        throw PreconditionError("carlson_detection_check: s = " + std::to_string(s) + " exceeds n = " +
                                std::to_string(g->n()));
    TheoremVerdict v;
    v.theorem = "carlson-detection";
    v.instance = describe_instance(g) + " s=" + std::to_string(s);
    v.cutoffs.emplace_back("degree", cutoff);
    const auto count = gaussian_binomial(static_cast<std::int64_t>(g->field().p()), g->n(), s);
    if (count > static_cast<std::int64_t>(subspace_cap))
        throw CapacityError("carlson_detection_check: " + std::to_string(count) + " subspaces of dimension " +
                            std::to_string(s) + " exceed the cap of " + std::to_string(subspace_cap));
    const auto subs = subspaces_of_dim(g->field(), g->n(), s, subspace_cap);

    // Equal stabilizers give equal factors, so each distinct G_U is used once.
    std::map<std::vector<std::size_t>, GroupPtr> stabilizers;
    for (const auto& u : subs) {
        auto gu = pointwise_stabilizer(g, u);
        if (!stabilizers.contains(gu.members()))
            stabilizers.emplace(gu.members(), gu.as_group());
    }
    const Grading total = Grading::total(g->n());
    InvariantRing source(g, total, piece_cap);
    source.compute_up_to(cutoff);
    std::vector<InvariantRing> targets;
    for (const auto& [members, grp] : stabilizers) {
        targets.emplace_back(grp, total, piece_cap);
        targets.back().compute_up_to(cutoff);
    }
    v.quantities = {{"subspaces", static_cast<std::int64_t>(subs.size())},
                    {"distinct_stabilizers", static_cast<std::int64_t>(targets.size())}};
    if (depth) {
        v.quantities.emplace_back("depth", *depth);
        v.quantities.emplace_back("depth_at_least_s", *depth >= static_cast<int>(s));
    }

    const FieldPrime& f = g->field();
    std::int64_t kernel_total = 0;
    for (int d = 0; d <= cutoff; ++d) {
        const Multidegree alpha{d};
        const auto& rows = source.basis(alpha);
        std::vector<SparseVec> images(rows.size());
        std::uint32_t offset = 0;
        for (const auto& target : targets) {
            const auto& basis = target.basis(alpha);
            for (std::size_t k = 0; k < rows.size(); ++k) {
                // Coordinates in the RREF basis are the entries at its pivots.
                SparseVec rest = rows[k];
                for (std::size_t b = 0; b < basis.size(); ++b) {
                    const auto pivot = basis[b].front().idx;
                    auto it = std::lower_bound(rest.begin(), rest.end(), pivot,
                                               [](const SparseEntry& e, std::uint32_t i) { return e.idx < i; });
                    if (it == rest.end() || it->idx != pivot)
                        continue;
                    const Coeff c = it->val;
                    images[k].push_back({offset + static_cast<std::uint32_t>(b), c});
                    rest = axpy(rest, f.neg(c), basis[b], f);
                }
                if (!rest.empty())
                    throw InconsistencyError("carlson_detection_check: a G-invariant of degree " + std::to_string(d) +
                                             " is not invariant under a stabilizer");
            }
            offset += static_cast<std::uint32_t>(basis.size());
        }
        const auto kernel = kernel_of_images(images, offset, f);
        kernel_total += static_cast<std::int64_t>(kernel.size());
        for (const auto& kv : kernel) {
            SparseVec poly;
            for (const auto& e : kv)
                poly = axpy(poly, e.val, rows[e.idx], f);
            v.witnesses.push_back("kernel element in degree " + std::to_string(d) + ": " +
                                  source.space().to_polynomial(poly, alpha).to_string());
        }
    }
    v.quantities.emplace_back("kernel_dimension", kernel_total);
    v.status = kernel_total == 0 ? VerdictStatus::pass : VerdictStatus::fail;
    return v;
}

}  // namespace modinv
