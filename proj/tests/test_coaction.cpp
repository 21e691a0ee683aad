#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "modinv/coaction.hpp"
#include "modinv/invariants.hpp"

using namespace modinv;
using namespace modinv::testing;

namespace {

SubgroupHandle whole(const GroupPtr& g)
{
    std::vector<std::size_t> all(g->order());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    return SubgroupHandle(g, all);
}

}  // namespace

TEST_CASE("restriction examples")
{
    const FieldPrime f2(2);
    const Subspace diag(f2, 2, mat({{1, 1}}));
    CHECK(restrict_to_subspace(P("x1*x2", 2, 2), diag) == P("x1^2", 1, 2));
    CHECK(restrict_to_subspace(P("x1 + x2", 2, 2), diag).is_zero());
    CHECK(restrict_to_subspace(P("x1 + x2", 2, 2), Subspace(f2, 2, mat({{1, 0}}))) == P("x1", 1, 2));
    CHECK(restrict_to_subspace(P("x1*x2 + x1", 2, 2), Subspace::full(f2, 2)) == P("x1*x2 + x1", 2, 2));
    CHECK(restrict_to_subspace(P("x1 + 1", 2, 2), Subspace::zero(f2, 2)) == P("1", 0, 2));
}

TEST_CASE("restriction is a ring map")
{
    std::mt19937_64 rng(29);
    const FieldPrime f3(3);
    auto subs = subspaces_of_dim(f3, 3, 2);
    for (int s = 0; s < 200; ++s) {
        auto a = random_polynomial(rng, 3, f3, 3, 4);
        auto b = random_polynomial(rng, 3, f3, 3, 4);
        const auto& u = subs[static_cast<std::size_t>(s) % subs.size()];
        REQUIRE(restrict_to_subspace(a * b, u) == restrict_to_subspace(a, u) * restrict_to_subspace(b, u));
        REQUIRE(restrict_to_subspace(a + b, u) == restrict_to_subspace(a, u) + restrict_to_subspace(b, u));
    }
}

TEST_CASE("coaction examples")
{
    auto g = swap_group();
    auto p = whole(g);
    const Subspace c = fixed_subspace(p);
    REQUIRE(c.dim() == 1);
    auto psi = coaction(P("x1 + x2", 2, 2), c, p);
    CHECK(psi.terms().size() == 1);
    CHECK(psi.right_factor(Monomial(1)) == P("x1 + x2", 2, 2));

    auto q = coaction(P("x1*x2", 2, 2), c, p);
    CHECK(q.right_factor(Monomial(std::vector<Exponent>{0})) == P("x1*x2", 2, 2));
    CHECK(q.right_factor(Monomial(std::vector<Exponent>{1})) == P("x1 + x2", 2, 2));
    CHECK(q.right_factor(Monomial(std::vector<Exponent>{2})) == P("1", 2, 2));

    auto one = coaction(P("1", 2, 2), c, p);
    CHECK(one.terms().size() == 1);
    CHECK(one.right_factor(Monomial(1)) == P("1", 2, 2));
    CHECK(counit_check(P("1", 2, 2), c, p));
    CHECK(coassociativity_check(P("1", 2, 2), c, p));
    CHECK(counit_check(P("x1*x2", 2, 2), c, p));
    CHECK(coassociativity_check(P("x1*x2", 2, 2), c, p));

    CHECK_THROWS_AS(coaction(P("x1", 2, 2), c, p), PreconditionError);
    CHECK_THROWS_AS(coaction(P("x1*x2", 2, 2), Subspace(FieldPrime(2), 2, mat({{1, 0}})), p), PreconditionError);
}

TEST_CASE("coaction identities over the corpus")
{
    for (const auto& e : modular_corpus()) {
        CAPTURE(e.name);
        auto p = sylow_subgroup(e.group);
        const auto v = fixed_subspace(p);
        auto pg = p.as_group();
        const int top = e.group->n() >= 6 ? 2 : 3;
        for (const auto& c : subspaces_within(v)) {
            for (int d = 1; d <= top; ++d)
                for (const auto& f : invariant_basis(pg, d)) {
                    CHECK(counit_check(f, c, p));
                    CHECK(coassociativity_check(f, c, p));
                    auto psi = coaction(f, c, p);
                    // Evaluating the right factors at v = 0 recovers the restriction to C.
                    Polynomial at_zero(c.dim(), e.group->field());
                    for (const auto& [m, right] : psi.terms())
                        at_zero += Polynomial::monomial(e.group->field(), m, right.coefficient(Monomial(e.group->n())));
                    CHECK(at_zero == restrict_to_subspace(f, c));
                    for (const auto& [m, right] : psi.terms())
                        CHECK(is_invariant(right, pg->generators()));
                }
        }
    }
}

TEST_CASE("tensor element flattening")
{
    auto flat = P("x1*x3 + x2^2*x3 + x1 + x4", 4, 3);
    auto t = TensorElement::from_flat(flat, 2);
    CHECK(t.left_vars() == 2);
    CHECK(t.right_vars() == 2);
    CHECK(t.flatten() == flat);
    CHECK(t.right_factor(Monomial(std::vector<Exponent>{1, 0})) == P("x1 + 1", 2, 3));
}

TEST_CASE("coaction is multiplicative")
{
    std::mt19937_64 rng(43);
    for (const auto& g : {swap_group(), z2_regular_copies(2), klein_regular(), z3_regular()}) {
        auto p = whole(g);
        InvariantRing ring(g);
        ring.compute_up_to(4);
        for (const auto& c : subspaces_within(fixed_subspace(p)))
            for (int s = 0; s < 10; ++s) {
                auto a = random_invariant(ring, 1 + static_cast<int>(rng() % 3), rng);
                auto b = random_invariant(ring, 1 + static_cast<int>(rng() % 3), rng);
                if (a.is_zero() || b.is_zero())
                    continue;
                CHECK(coaction(a * b, c, p).flatten() == coaction(a, c, p).flatten() * coaction(b, c, p).flatten());
            }
    }
}
