#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "modinv/coaction.hpp"
#include "modinv/theorems.hpp"

using namespace modinv;
using namespace modinv::testing;

namespace {

std::int64_t quantity(const TheoremVerdict& v, const std::string& name)
{
    for (const auto& [k, q] : v.quantities)
        if (k == name)
            return q;
    FAIL("missing quantity " << name);
    return -1;
}

}  // namespace

TEST_CASE("duflot_bound_check examples")
{
    auto sw = duflot_bound_check(swap_group(), 8);
    CHECK(sw.status == VerdictStatus::pass);
    CHECK(quantity(sw, "fixed_dim") == 1);
    CHECK(quantity(sw, "depth") == 2);
    CHECK_FALSE(sw.cutoffs.empty());

    CHECK(duflot_bound_check(z3_in_gl2f2(), 6).status == VerdictStatus::vacuous);

    auto six = duflot_bound_check(z2_regular_copies(3), 8);
    CHECK(six.status == VerdictStatus::pass);
    CHECK(quantity(six, "fixed_dim") == 3);
    CHECK(quantity(six, "depth") == 5);
}

TEST_CASE("a violated bound is a fail with witnesses")
{
    auto rep = depth_report(z2_regular_copies(3), 6);
    rep.depth = 2;
    auto v = duflot_bound_check(z2_regular_copies(3), rep);
    CHECK(v.status == VerdictStatus::fail);
    CHECK_FALSE(v.witnesses.empty());
}

TEST_CASE("es_comparison examples")
{
    auto sw = es_comparison(swap_group(), 8);
    CHECK(sw.status == VerdictStatus::pass);
    CHECK(quantity(sw, "bound") == 2);
    CHECK(quantity(sw, "equality") == 1);
    CHECK(es_comparison(z3_in_gl2f2(), 6).status == VerdictStatus::vacuous);
    auto six = es_comparison(z2_regular_copies(3), 8);
    CHECK(six.status == VerdictStatus::pass);
    CHECK(quantity(six, "bound") == 5);
    CHECK(quantity(six, "equality") == 1);
}

TEST_CASE("duflot_lifting_check examples")
{
    auto g = swap_group();
    const Subspace diag(FieldPrime(2), 2, mat({{1, 1}}));
    // x1 + x2 vanishes on the diagonal in characteristic 2
    CHECK(duflot_lifting_check(g, diag, {P("x1 + x2", 2, 2)}, 8).status == VerdictStatus::hypothesis_not_satisfied);
    CHECK(duflot_lifting_check(g, diag, {P("x1*x2", 2, 2)}, 8).status == VerdictStatus::pass);
    CHECK(duflot_lifting_check(g, diag, {P("x1*x2", 2, 2), P("x1*x2", 2, 2)}, 8).status ==
          VerdictStatus::hypothesis_not_satisfied);
    CHECK_THROWS_AS(duflot_lifting_check(g, Subspace(FieldPrime(2), 2, mat({{1, 0}})), {P("x1*x2", 2, 2)}, 8),
                    PreconditionError);
    CHECK_THROWS_AS(duflot_lifting_check(g, diag, {P("x1", 2, 2)}, 8), PreconditionError);
}

TEST_CASE("duflot lifting on random sequences")
{
    std::mt19937_64 rng(31);
    for (const auto& e : modular_corpus()) {
        CAPTURE(e.name);
        const int cutoff = e.group->n() >= 6 ? 5 : 6;
        InvariantRing ring(e.group);
        ring.compute_up_to(cutoff);
        const auto candidates = subspaces_within(fixed_subspace(sylow_subgroup(e.group)));
        int hypothesis = 0;
        for (int s = 0; s < 200; ++s) {
            const auto& c = candidates[rng() % candidates.size()];
            std::vector<Polynomial> seq;
            const auto k = c.dim() == 0 ? 1 : 1 + rng() % c.dim();
            for (std::size_t i = 0; i < k; ++i)
                if (auto y = random_invariant(ring, 1 + static_cast<int>(rng() % 4), rng); !y.is_zero())
                    seq.push_back(y);
            if (seq.empty())
                continue;
            const auto v = duflot_lifting_check(ring, c, seq, cutoff);
            REQUIRE(v.status != VerdictStatus::fail);
            hypothesis += v.status == VerdictStatus::pass;
        }
        CHECK(hypothesis > 0);
    }
}

TEST_CASE("stabilizer_component_check examples")
{
    const FieldPrime f2(2);
    auto g = swap_group();
    auto zero = stabilizer_component_check(g, Subspace::zero(f2, 2), 6);
    CHECK(zero.status == VerdictStatus::pass);
    CHECK(quantity(zero, "stabilizer_order") == 2);
    auto axis = stabilizer_component_check(g, Subspace(f2, 2, mat({{1, 0}})), 6);
    CHECK(axis.status == VerdictStatus::pass);
    CHECK(quantity(axis, "stabilizer_order") == 1);
    auto diag = stabilizer_component_check(g, Subspace(f2, 2, mat({{1, 1}})), 6);
    CHECK(diag.status == VerdictStatus::pass);
    CHECK(quantity(diag, "stabilizer_order") == 2);
    CHECK_FALSE(diag.note.empty());
}

TEST_CASE("stabilizer Hilbert series are monotone in U")
{
    for (const auto& g : {gl2f2(), z2_regular_copies(2), klein_regular()}) {
        const auto& f = g->field();
        std::vector<Subspace> all;
        for (std::size_t s = 0; s <= g->n(); ++s)
            for (auto& u : subspaces_of_dim(f, g->n(), s))
                all.push_back(u);
        for (const auto& u : all)
            for (const auto& w : all) {
                if (u.dim() + 1 != w.dim() || !u.is_subspace_of(w))
                    continue;
                auto hu = hilbert_coefficients(pointwise_stabilizer(g, u).as_group(), 5);
                auto hw = hilbert_coefficients(pointwise_stabilizer(g, w).as_group(), 5);
                for (std::size_t d = 0; d < hu.size(); ++d)
                    CHECK(hu[d] <= hw[d]);
            }
    }
}

TEST_CASE("carlson_detection_check examples")
{
    auto s0 = carlson_detection_check(swap_group(), 0, 6);
    CHECK(s0.status == VerdictStatus::pass);
    CHECK(quantity(s0, "subspaces") == 1);
    auto sw = carlson_detection_check(swap_group(), 1, 6, 2);
    CHECK(sw.status == VerdictStatus::pass);
    CHECK(quantity(sw, "kernel_dimension") == 0);
    CHECK(quantity(sw, "depth_at_least_s") == 1);
    CHECK(carlson_detection_check(gl2f2(), 1, 6).status == VerdictStatus::pass);
    CHECK_THROWS_AS(carlson_detection_check(swap_group(), 3, 6), PreconditionError);
    CHECK_THROWS_AS(carlson_detection_check(z2_regular_copies(3), 3, 4), CapacityError);
}

TEST_CASE("carlson detection over the corpus")
{
    for (const auto& e : modular_corpus())
        for (std::size_t s = 1; s <= e.group->n(); ++s) {
            if (gaussian_binomial(static_cast<std::int64_t>(e.group->field().p()), e.group->n(), s) > 200)
                continue;
            CAPTURE(e.name);
            CAPTURE(s);
            CHECK(carlson_detection_check(e.group, s, 5).status == VerdictStatus::pass);
        }
}
