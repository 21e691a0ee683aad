#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "corpus.hpp"
#include "oracles.hpp"
#include "modinv/invariants.hpp"

using namespace modinv;
using namespace modinv::testing;

TEST_CASE("invariant_basis examples")
{
    auto sw = swap_group();
    auto b1 = invariant_basis(sw, 1);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0] == P("x1 + x2", 2, 2));
    auto b2 = invariant_basis(sw, 2);
    CHECK(b2.size() == 2);
    CHECK(invariant_basis(trivial_group(2, 2), 2).size() == 3);
    CHECK(invariant_basis(z3_in_gl2f2(), 1).empty());
    CHECK(invariant_basis(sw, 0).size() == 1);
}

TEST_CASE("hilbert examples")
{
    CHECK(hilbert_coefficients(swap_group(), 6) == HilbertCoefficients{1, 1, 2, 2, 3, 3, 4});
    CHECK(hilbert_coefficients(z3_in_gl2f2(), 4) == HilbertCoefficients{1, 0, 1, 2, 1});
    CHECK(hilbert_coefficients(gl2f2(), 6) == product_series({2, 3}, 6));
    CHECK(hilbert_coefficients(trivial_group(2, 2), 5) == HilbertCoefficients{1, 2, 3, 4, 5, 6});
}

TEST_CASE("degree cap")
{
    InvariantRing ring(swap_group());
    ring.compute_up_to(3);
    CHECK_THROWS_AS(ring.basis_polynomials(5), CapacityError);
    CHECK_THROWS_AS(hilbert_coefficients(z2_regular_copies(3), 40, 500), CapacityError);
}

TEST_CASE("minimal_generators examples")
{
    auto gens = minimal_generators(gl2f2(), 6);
    REQUIRE(gens.size() == 2);
    CHECK(gens[0].degree == 2);
    CHECK(gens[1].degree == 3);
    auto triv = minimal_generators(trivial_group(3, 3), 5);
    REQUIRE(triv.size() == 3);
    for (const auto& g : triv)
        CHECK(g.degree == 1);
    auto sw = minimal_generators(swap_group(), 6);
    REQUIRE(sw.size() == 2);
    CHECK(sw[0].degree == 1);
    CHECK(sw[1].degree == 2);
}

TEST_CASE("dickson_invariants examples")
{
    auto d = dickson_invariants(FieldPrime(2), 2);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == P("x1^2 + x1*x2 + x2^2", 2, 2));
    CHECK(d[1] == P("x1^2*x2 + x1*x2^2", 2, 2));
    auto f2 = dickson_invariants(FieldPrime(2), 1);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0] == P("x1", 1, 2));
    auto d1 = dickson_invariants(FieldPrime(3), 1);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].degree() == 2);
}

TEST_CASE("dickson invariants are invariant and independent")
{
    for (auto [p, n] : std::vector<std::pair<std::int64_t, std::size_t>>{{2, 2}, {2, 3}, {3, 2}, {5, 1}}) {
        const FieldPrime f(p);
        auto d = dickson_invariants(f, n);
        REQUIRE(d.size() == n);
        // GL_n(F_p) is generated by elementary transvections and diagonal scalings.
        std::vector<Matrix> gens;
        for (std::size_t i = 0; i < n; ++i) {
            Matrix s = identity_matrix(static_cast<Eigen::Index>(n));
            s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p == 2 ? 1 : 2;
            gens.push_back(s);
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) {
                    Matrix t = identity_matrix(static_cast<Eigen::Index>(n));
                    t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1;
                    gens.push_back(t);
                }
        }
        std::vector<int> degrees;
        std::int64_t pn = 1;
        for (std::size_t i = 0; i < n; ++i)
            pn *= p;
        std::int64_t pi = pn / p;
        for (const auto& poly : d) {
            CHECK(is_invariant(poly, gens));
            CHECK(poly.degree() == pn - pi);
            degrees.push_back(poly.degree());
            pi /= p;
        }
        const int top = std::min(degrees.back() + 2, 10);
        CHECK(subalgebra_hilbert(d, top) == product_series(degrees, top));
    }
}

TEST_CASE("dickson ring equals the GL_2(F_2) invariants")
{
    auto d = dickson_invariants(FieldPrime(2), 2);
    CHECK(subalgebra_hilbert(d, 8) == hilbert_coefficients(gl2f2(), 8));
}

TEST_CASE("kernel oracle over the corpus")
{
    for (const auto& e : modular_corpus()) {
        CAPTURE(e.name);
        const int top = e.group->n() >= 6 ? 3 : 5;
        auto h = hilbert_coefficients(e.group, top);
        for (int d = 0; d <= top; ++d)
            CHECK(h[static_cast<std::size_t>(d)] == dense_invariant_dim(e.group, d));
        for (int d = 0; d <= top; ++d)
            for (const auto& poly : invariant_basis(e.group, d))
                CHECK(is_invariant(poly, e.group->elements()));
    }
}

TEST_CASE("averaging projector oracle in the nonmodular case")
{
    auto g = z3_in_gl2f2();
    auto h = hilbert_coefficients(g, 8);
    for (int d = 0; d <= 8; ++d)
        CHECK(h[static_cast<std::size_t>(d)] == reynolds_rank(g, d));
}

TEST_CASE("hilbert series is a conjugation invariant")
{
    std::mt19937_64 rng(5);
    for (const auto& g : {klein_regular(), z3_regular(), gl2f2()}) {
        const auto& f = g->field();
        Matrix h;
        do
            h = random_matrix(rng, g->n(), g->n(), f);
        while (rank_mod(h, f) < static_cast<Eigen::Index>(g->n()));
        const Matrix hinv = inverse_mod(h, f);
        std::vector<Matrix> conj;
        for (const auto& gen : g->generators())
            conj.push_back(mul_mod(mul_mod(h, gen, f), hinv, f));
        auto c = MatrixGroup::enumerate(f, g->n(), conj);
        CHECK(hilbert_coefficients(c, 6) == hilbert_coefficients(g, 6));
    }
}

TEST_CASE("multigraded and total computations agree")
{
    auto g = z2_regular_copies(2);
    InvariantRing fine(g);
    fine.compute_up_to(6);
    InvariantRing coarse(g, Grading::total(g->n()));
    coarse.compute_up_to(6);
    CHECK(fine.hilbert(6) == coarse.hilbert(6));
    CHECK(fine.coarsened().basis_polynomials(5) == coarse.basis_polynomials(5));
}

TEST_CASE("transfer")
{
    auto swap = swap_group();
    CHECK(transfer(swap, subgroup_closure(swap, {}), P("x1", 2, 2)) == P("x1 + x2", 2, 2));
    CHECK(transfer(swap, subgroup_closure(swap, {1}), P("x1*x2", 2, 2)) == P("x1*x2", 2, 2));

    auto g = gl2f2();
    auto trivial = subgroup_closure(g, {});
    CHECK(left_transversal(trivial).size() == 6);
    // Tr(x1) over the trivial subgroup is the orbit sum, which vanishes
    CHECK(transfer(g, trivial, P("x1", 2, 2)).is_zero());
    auto s = sylow_subgroup(g);
    const Polynomial one = P("1", 2, 2);
    CHECK(transfer(g, s, one) == one);  // index 3 = 1 mod 2
    int rejected = 0;
    for (const auto& x : {P("x1", 2, 2), P("x2", 2, 2)})
        if (!is_invariant(x, s.element_matrices())) {
            CHECK_THROWS_AS(transfer(g, s, x), PreconditionError);
            ++rejected;
        }
    CHECK(rejected >= 1);
}

TEST_CASE("transfer of G-invariants multiplies by the index")
{
    for (const auto& e : modular_corpus()) {
        CAPTURE(e.name);
        auto sub = sylow_subgroup(e.group);
        auto trivial = subgroup_closure(e.group, {});
        const auto& f = e.group->field();
        const Coeff idx = static_cast<Coeff>((e.group->order() / sub.order()) % f.p());
        for (const auto& poly : invariant_basis(e.group, 2)) {
            CHECK(transfer(e.group, sub, poly) == poly.scaled(idx));
            CHECK(is_invariant(transfer(e.group, trivial, poly * poly), e.group->elements()));
        }
    }
}

TEST_CASE("total square preserves invariants")
{
    for (const auto& g : {swap_group(), gl2f2(), klein_regular()})
        for (int d = 1; d <= 4; ++d)
            for (const auto& poly : invariant_basis(g, d))
                CHECK(is_invariant(steenrod_total_square(poly), g->generators()));
}

TEST_CASE("transfer output is G-invariant")
{
    std::mt19937_64 rng(41);
    for (const auto& e : modular_corpus()) {
        if (e.group->n() > 4)
            continue;
        auto trivial = subgroup_closure(e.group, {});
        for (int s = 0; s < 20; ++s) {
            auto f = random_polynomial(rng, e.group->n(), e.group->field(), 3, 4);
            CHECK(is_invariant(transfer(e.group, trivial, f), e.group->generators()));
        }
    }
}

TEST_CASE("total square keeps Dickson invariants in the Dickson algebra")
{
    for (std::size_t n : {2u, 3u}) {
        const FieldPrime f(2);
        auto d = dickson_invariants(f, n);
        for (const auto& di : d) {
            const auto sq = steenrod_total_square(di);
            for (int k = di.degree(); k <= 2 * di.degree(); ++k) {
                const auto part = sq.component(k);
                if (part.is_zero())
                    continue;
                // span of Dickson monomials of degree k, plus the component
                std::vector<Polynomial> span;
                std::function<void(std::size_t, int, Polynomial)> grow = [&](std::size_t i, int left, Polynomial acc) {
                    if (left == 0) {
                        span.push_back(acc);
                        return;
                    }
                    if (i == d.size())
                        return;
                    grow(i + 1, left, acc);
                    if (d[i].degree() <= left)
                        grow(i, left - d[i].degree(), acc * d[i]);
                };
                grow(0, k, P("1", n, 2));
                const auto basis = monomial_basis(n, k);
                Matrix a = Matrix::Zero(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(span.size()) + 1);
                for (std::size_t c = 0; c < span.size(); ++c)
                    a.col(static_cast<Eigen::Index>(c)) = coordinates(span[c], basis);
                const auto before = rank_mod(a, f);
                a.col(a.cols() - 1) = coordinates(part, basis);
                CHECK(rank_mod(a, f) == before);
            }
        }
    }
}
