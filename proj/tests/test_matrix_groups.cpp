#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "modinv/matrix_group.hpp"

using namespace modinv;
using namespace modinv::testing;

namespace {

// Brute-force fixed vectors: enumerate all of F_p^n.
std::size_t count_fixed_vectors(const std::vector<Matrix>& elems, std::int64_t p, std::size_t n)
{
    const FieldPrime f(p);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i)
        total *= static_cast<std::size_t>(p);
    std::size_t fixed = 0;
    for (std::size_t code = 0; code < total; ++code) {
        Vector v(static_cast<Eigen::Index>(n));
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            v(static_cast<Eigen::Index>(i)) = static_cast<std::int64_t>(c % static_cast<std::size_t>(p));
            c /= static_cast<std::size_t>(p);
        }
        bool ok = true;
        for (const auto& g : elems)
            if (Matrix(reduce_mod(g * v, f)) != Matrix(v))
                ok = false;
        fixed += ok;
    }
    return fixed;
}

std::size_t ipow(std::size_t b, std::size_t e)
{
    std::size_t r = 1;
    while (e--)
        r *= b;
    return r;
}

}  // namespace

TEST_CASE("enumerate_group examples")
{
    CHECK(swap_group()->order() == 2);
    CHECK(z3_in_gl2f2()->order() == 3);
    CHECK(gl2f2()->order() == 6);
    CHECK(trivial_group(3, 2)->order() == 1);
    CHECK(klein_regular()->order() == 4);
    CHECK(z3_regular()->order() == 3);
}

TEST_CASE("enumerate_group errors")
{
    CHECK_THROWS_AS(MatrixGroup::enumerate(FieldPrime(2), 2, {mat({{1, 1}, {1, 1}})}), StructuralError);
    CHECK_THROWS_AS(MatrixGroup::enumerate(FieldPrime(2), 2, {mat({{1, 0, 0}, {0, 1, 0}})}), StructuralError);
    // GL_2(F_3) has order 48
    const auto gl23 = std::vector<Matrix>{mat({{1, 1}, {0, 1}}), mat({{0, 1}, {2, 0}}), mat({{2, 0}, {0, 1}})};
    CHECK(MatrixGroup::enumerate(FieldPrime(3), 2, gl23)->order() == 48);
    CHECK_THROWS_AS(MatrixGroup::enumerate(FieldPrime(3), 2, gl23, 40), CapacityError);
}

TEST_CASE("element list is closed and deterministic")
{
    auto g = gl2f2();
    CHECK(g->element(0) == identity_matrix(2));
    for (std::size_t a = 0; a < g->order(); ++a) {
        CHECK(g->index_of(inverse_mod(g->element(a), g->field())).has_value());
        for (std::size_t b = 0; b < g->order(); ++b)
            CHECK(g->index_of(mul_mod(g->element(a), g->element(b), g->field())).has_value());
    }
    // Generator order does not change the element list.
    auto h = MatrixGroup::enumerate(FieldPrime(2), 2, {mat({{0, 1}, {1, 1}}), mat({{0, 1}, {1, 0}})});
    for (std::size_t i = 0; i < g->order(); ++i)
        CHECK(g->element(i) == h->element(i));
}

TEST_CASE("sylow_subgroup")
{
    CHECK(sylow_subgroup(gl2f2()).order() == 2);
    CHECK(sylow_subgroup(trivial_group(2, 2)).order() == 1);
    CHECK(sylow_subgroup(z3_in_gl2f2()).order() == 1);
    CHECK(sylow_subgroup(klein_regular()).order() == 4);
    // GL_3(F_2): order 168, Sylow 2-subgroup of order 8
    auto gl32 = MatrixGroup::enumerate(FieldPrime(2), 3,
                                       {mat({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), permutation_matrix({1, 2, 0})});
    REQUIRE(gl32->order() == 168);
    auto s = sylow_subgroup(gl32);
    CHECK(s.order() == 8);
    CHECK(fixed_subspace(s).dim() >= 1);
    // GL_2(F_3): Sylow 3 has order 3, Sylow is found for the field characteristic only
    auto gl23 = MatrixGroup::enumerate(FieldPrime(3), 2, {mat({{1, 1}, {0, 1}}), mat({{0, 1}, {2, 0}}), mat({{2, 0}, {0, 1}})});
    CHECK(sylow_subgroup(gl23).order() == 3);
}

TEST_CASE("Lagrange and Sylow order over the corpus")
{
    for (const auto& e : modular_corpus()) {
        auto s = sylow_subgroup(e.group);
        const std::size_t p = e.group->field().p();
        CHECK(e.group->order() % s.order() == 0);
        CHECK(s.order() == p_part(e.group->order(), p));
        // a p-group fixes a nonzero vector
        CHECK(fixed_subspace(s).dim() >= 1);
    }
}

TEST_CASE("fixed_subspace against brute force")
{
    const FieldPrime f2(2);
    CHECK(fixed_subspace(f2, 2, {identity_matrix(2)}).dim() == 2);
    auto sw = fixed_subspace(f2, 2, swap_group()->elements());
    CHECK(sw.dim() == 1);
    CHECK(sw == Subspace(f2, 2, mat({{1, 1}})));
    CHECK(fixed_subspace(f2, 2, z3_in_gl2f2()->elements()).dim() == 0);
    for (const auto& e : modular_corpus()) {
        const auto p = static_cast<std::int64_t>(e.group->field().p());
        const auto n = e.group->n();
        auto v = fixed_subspace(e.group->field(), n, e.group->elements());
        CHECK(ipow(static_cast<std::size_t>(p), v.dim()) == count_fixed_vectors(e.group->elements(), p, n));
    }
}

TEST_CASE("pointwise_stabilizer")
{
    const FieldPrime f2(2);
    auto g = swap_group();
    CHECK(pointwise_stabilizer(g, Subspace::zero(f2, 2)).order() == 2);
    CHECK(pointwise_stabilizer(g, Subspace(f2, 2, mat({{1, 1}}))).order() == 2);
    CHECK(pointwise_stabilizer(g, Subspace(f2, 2, mat({{1, 0}}))).order() == 1);
}

TEST_CASE("pointwise_stabilizer is monotone")
{
    auto g = z2_regular_copies(2);
    const auto& f = g->field();
    for (std::size_t s = 0; s + 1 <= 4; ++s)
        for (const auto& u : subspaces_of_dim(f, 4, s))
            for (const auto& w : subspaces_of_dim(f, 4, s + 1)) {
                if (!u.is_subspace_of(w))
                    continue;
                auto gu = pointwise_stabilizer(g, u);
                auto gw = pointwise_stabilizer(g, w);
                for (auto m : gw.members())
                    CHECK(gu.contains(m));
            }
}

TEST_CASE("subspaces_of_dim")
{
    const FieldPrime f2(2), f3(3);
    CHECK(subspaces_of_dim(f2, 2, 1).size() == 3);
    CHECK(subspaces_of_dim(f2, 2, 2).size() == 1);
    CHECK(subspaces_of_dim(f3, 2, 1).size() == 4);
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t s = 0; s <= n; ++s) {
            auto subs = subspaces_of_dim(f3, n, s);
            CHECK(static_cast<std::int64_t>(subs.size()) == gaussian_binomial(3, n, s));
            for (std::size_t i = 0; i < subs.size(); ++i) {
                CHECK(subs[i].dim() == s);
                for (std::size_t j = i + 1; j < subs.size(); ++j)
                    CHECK_FALSE(subs[i] == subs[j]);
            }
        }
    CHECK_THROWS_AS(subspaces_of_dim(f2, 6, 3, 200), CapacityError);
    CHECK_THROWS_AS(subspaces_of_dim(f2, 2, 3), PreconditionError);
}

TEST_CASE("subspaces_within a fixed space")
{
    const FieldPrime f2(2);
    auto w = fixed_subspace(f2, 6, z2_regular_copies(3)->elements());
    REQUIRE(w.dim() == 3);
    auto all = subspaces_within(w);
    CHECK(all.size() == 16);  // 1 + 7 + 7 + 1
    for (const auto& c : all)
        CHECK(c.is_subspace_of(w));
}

TEST_CASE("act_on_polynomial")
{
    auto g = swap_group();
    const auto x = P("x1", 2, 2);
    CHECK(act_on_polynomial(identity_matrix(2), x) == x);
    CHECK(act_on_polynomial(g->element(1), x) == P("x2", 2, 2));
    // g = [[0,1],[1,1]] acts by its inverse [[1,1],[1,0]]: x1 -> x1 + x2
    CHECK(act_on_polynomial(mat({{0, 1}, {1, 1}}), x) == P("x1 + x2", 2, 2));
    CHECK_THROWS_AS(act_on_polynomial(identity_matrix(3), x), StructuralError);
}

TEST_CASE("act_on_polynomial is a left action")
{
    std::mt19937_64 rng(3);
    for (const auto& grp : {gl2f2(), z3_regular(), klein_regular()}) {
        std::uniform_int_distribution<std::size_t> pick(0, grp->order() - 1);
        for (int s = 0; s < 100; ++s) {
            const auto& a = grp->element(pick(rng));
            const auto& b = grp->element(pick(rng));
            auto f = random_polynomial(rng, grp->n(), grp->field(), 3, 4);
            REQUIRE(act_on_polynomial(a, act_on_polynomial(b, f)) ==
                    act_on_polynomial(mul_mod(a, b, grp->field()), f));
        }
    }
}

TEST_CASE("stable grading")
{
    CHECK(z2_regular_copies(3)->stable_grading().blocks() == 3);
    CHECK(klein_regular()->stable_grading().blocks() == 1);
    CHECK(trivial_group(2, 3)->stable_grading().blocks() == 3);
}
