#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "modinv/groebner.hpp"

using namespace modinv;
using namespace modinv::testing;

namespace {

// Degree-d part of a homogeneous ideal, spanned by monomial multiples of the generators.
Matrix ideal_piece(const std::vector<Polynomial>& gens, std::size_t n, int d, const std::vector<Monomial>& basis)
{
    std::vector<Polynomial> span;
    for (const auto& g : gens) {
        const int e = d - g.degree();
        if (e < 0)
            continue;
        for (const auto& m : monomial_basis(n, e))
            span.push_back(Polynomial::monomial(g.field(), m) * g);
    }
    Matrix a = Matrix::Zero(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(span.size()) + 1);
    for (std::size_t c = 0; c < span.size(); ++c)
        for (std::size_t r = 0; r < basis.size(); ++r)
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = span[c].coefficient(basis[r]);
    return a;
}

bool in_ideal_oracle(const Polynomial& f, const std::vector<Polynomial>& gens)
{
    const auto basis = monomial_basis(f.nvars(), f.degree());
    Matrix a = ideal_piece(gens, f.nvars(), f.degree(), basis);
    const auto without = rank_mod(a, f.field());
    for (std::size_t r = 0; r < basis.size(); ++r)
        a(static_cast<Eigen::Index>(r), a.cols() - 1) = f.coefficient(basis[r]);
    return rank_mod(a, f.field()) == without;
}

// Homogeneous random polynomial of degree d.
Polynomial random_form(std::mt19937_64& rng, std::size_t n, const FieldPrime& f, int d)
{
    std::uniform_int_distribution<std::int64_t> c(0, static_cast<std::int64_t>(f.p()) - 1);
    std::vector<Term> terms;
    for (const auto& m : monomial_basis(n, d))
        if (auto v = c(rng))
            terms.push_back({m, static_cast<Coeff>(v)});
    return Polynomial::from_terms(n, f, std::move(terms));
}

}  // namespace

TEST_CASE("buchberger examples")
{
    auto gb = buchberger({P("x1*x2", 2, 2), P("x1^2", 2, 2)});
    CHECK(gb.generators().size() == 2);
    CHECK(normal_form(P("x1^3 + x1*x2^2", 2, 2), gb).is_zero());
    CHECK(normal_form(P("x2^2", 2, 2), gb) == P("x2^2", 2, 2));
    auto unit = buchberger({P("x1 + 1", 1, 3), P("x1", 1, 3)});
    REQUIRE(unit.generators().size() == 1);
    CHECK(unit.generators()[0] == P("1", 1, 3));
    CHECK(krull_dimension(unit) == -1);
    CHECK_THROWS_AS(buchberger({}), PreconditionError);
    CHECK(buchberger({}, {}, 2, FieldPrime(2)).generators().empty());
    CHECK_THROWS_AS(buchberger({P("x1", 2, 2), P("x1", 2, 3)}), StructuralError);
}

TEST_CASE("small reduced bases")
{
    auto x = buchberger({P("x1", 2, 2)});
    CHECK(x.generators() == std::vector<Polynomial>{P("x1", 2, 2)});
    auto mono = buchberger({P("x1^2", 2, 2), P("x1*x2", 2, 2)});
    CHECK(mono.generators() == std::vector<Polynomial>{P("x1^2", 2, 2), P("x1*x2", 2, 2)});
    auto lin = buchberger({P("x1 + x2", 2, 3), P("x2", 2, 3)});
    CHECK(lin.generators() == std::vector<Polynomial>{P("x1", 2, 3), P("x2", 2, 3)});
    CHECK(normal_form(P("x2", 2, 2), x) == P("x2", 2, 2));
    CHECK(normal_form(P("x1^2 + x1*x2", 2, 2), mono).is_zero());
}

TEST_CASE("normal forms are idempotent")
{
    std::mt19937_64 rng(19);
    const FieldPrime f(3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Polynomial> gens{random_form(rng, 3, f, 2), random_form(rng, 3, f, 3)};
        std::erase_if(gens, [](const Polynomial& g) { return g.is_zero(); });
        if (gens.empty())
            continue;
        auto gb = buchberger(gens, {}, 3, f);
        for (int s = 0; s < 10; ++s) {
            auto h = random_polynomial(rng, 3, f, 4, 6);
            CHECK(normal_form(h - normal_form(h, gb), gb).is_zero());
        }
    }
}

TEST_CASE("krull dimension is invariant under linear changes of variables")
{
    std::mt19937_64 rng(37);
    const FieldPrime f(2);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Polynomial> gens{random_form(rng, 3, f, 2), random_form(rng, 3, f, 2)};
        std::erase_if(gens, [](const Polynomial& g) { return g.is_zero(); });
        if (gens.empty())
            continue;
        Matrix a;
        do
            a = random_matrix(rng, 3, 3, f);
        while (rank_mod(a, f) < 3);
        std::vector<Polynomial> moved;
        for (const auto& g : gens)
            moved.push_back(apply_linear_substitution(g, a));
        CHECK(krull_dimension(buchberger(gens)) == krull_dimension(buchberger(moved)));
    }
}

TEST_CASE("pair cap")
{
    std::vector<Polynomial> gens{P("x1^3 + x2*x3*x4 + x1*x2", 4, 5), P("x2^3 + x1*x3^2 + x4", 4, 5),
                                 P("x3^3 + x1*x2*x4 + x3", 4, 5), P("x4^3 + x1^2*x2 + 1", 4, 5)};
    CHECK_THROWS_AS(buchberger(gens, {}, 4, FieldPrime(5), 2), CapacityError);
}

TEST_CASE("krull_dimension")
{
    CHECK(krull_dimension(buchberger({P("x1", 3, 2)})) == 2);
    CHECK(krull_dimension(buchberger({P("x1*x2", 3, 2)})) == 2);
    CHECK(krull_dimension(buchberger({P("x1^2 + x2^2", 2, 3), P("x1*x2", 2, 3)})) == 0);
    CHECK(krull_dimension(buchberger({}, {}, 3, FieldPrime(2))) == 3);
    CHECK(krull_dimension(buchberger({P("x1", 2, 2)})) == 1);
    CHECK(krull_dimension(buchberger({P("x1^2 + x1*x2 + x2^2", 2, 2)})) == 1);
    // Dickson generators for GL_2(F_2) form a system of parameters
    CHECK(krull_dimension(buchberger({P("x1^2 + x1*x2 + x2^2", 2, 2), P("x1^2*x2 + x1*x2^2", 2, 2)})) == 0);
}

TEST_CASE("ideal membership against linear algebra")
{
    std::mt19937_64 rng(17);
    for (auto [n, p] : std::vector<std::pair<std::size_t, std::int64_t>>{{3, 2}, {3, 3}, {2, 5}}) {
        const FieldPrime f(p);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Polynomial> gens{random_form(rng, n, f, 2), random_form(rng, n, f, 2), random_form(rng, n, f, 3)};
            std::erase_if(gens, [](const Polynomial& g) { return g.is_zero(); });
            if (gens.empty())
                continue;
            for (auto kind : {OrderKind::graded_lex, OrderKind::graded_revlex}) {
                auto gb = buchberger(gens, MonomialOrder{kind, {}, std::nullopt}, n, f);
                for (const auto& g : gens)
                    REQUIRE(normal_form(g, gb).is_zero());
                for (int d = 1; d <= 5; ++d) {
                    // Standard monomials count the quotient dimension.
                    const auto basis = monomial_basis(n, d);
                    const auto leads = gb.leading_monomials();
                    std::int64_t standard = 0;
                    for (const auto& m : basis)
                        standard += std::none_of(leads.begin(), leads.end(),
                                                 [&m](const Monomial& l) { return l.divides(m); });
                    const auto rank = rank_mod(ideal_piece(gens, n, d, basis), f);
                    REQUIRE(standard == static_cast<std::int64_t>(basis.size()) - rank);
                    auto h = random_form(rng, n, f, d);
                    if (!h.is_zero())
                        REQUIRE(normal_form(h, gb).is_zero() == in_ideal_oracle(h, gens));
                }
            }
        }
    }
}

TEST_CASE("exact_divide")
{
    CHECK(exact_divide(P("x1^2 + x1*x2", 2, 3), P("x1", 2, 3)) == P("x1 + x2", 2, 3));
    CHECK_FALSE(exact_divide(P("x1^2 + x2", 2, 3), P("x1", 2, 3)).has_value());
    CHECK_THROWS_AS(exact_divide(P("x1", 2, 3), Polynomial(2, FieldPrime(3))), PreconditionError);
}

TEST_CASE("is_nonzerodivisor")
{
    CHECK_FALSE(is_nonzerodivisor(P("x1", 2, 2), {P("x1*x2", 2, 2)}));
    CHECK(is_nonzerodivisor(P("x1 + x2", 2, 2), {P("x1*x2", 2, 2)}));
    CHECK(is_nonzerodivisor(P("x2", 2, 3), {P("x1^2", 2, 3)}));
    CHECK_FALSE(is_nonzerodivisor(P("x1", 3, 2), {P("x1*x2", 3, 2), P("x1*x3", 3, 2)}));
    CHECK(is_nonzerodivisor(P("x3", 3, 2), {P("x1*x2", 3, 2), P("x1^2", 3, 2)}));
    CHECK(is_nonzerodivisor(P("x1", 2, 2), {}));
}

TEST_CASE("nonzerodivisor against a degreewise oracle")
{
    // x is a zerodivisor mod I iff some homogeneous h outside I has x h in I; checked up to degree 8.
    std::mt19937_64 rng(23);
    const FieldPrime f(2);
    const std::size_t n = 3;
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Polynomial> gens{random_form(rng, n, f, 2), random_form(rng, n, f, 2)};
        std::erase_if(gens, [](const Polynomial& g) { return g.is_zero(); });
        auto x = random_form(rng, n, f, 1);
        if (gens.empty() || x.is_zero())
            continue;
        bool witness = false;
        for (int d = 0; d <= 8 && !witness; ++d) {
            const auto src = monomial_basis(n, d);
            const auto dst = monomial_basis(n, d + 1);
            // kernel of h -> x h modulo I_{d+1}, compared with I_d
            Matrix id = ideal_piece(gens, n, d + 1, dst);
            Matrix big(id.rows(), id.cols() + static_cast<Eigen::Index>(src.size()));
            big << id, Matrix::Zero(id.rows(), static_cast<Eigen::Index>(src.size()));
            for (std::size_t c = 0; c < src.size(); ++c) {
                auto prod = x * Polynomial::monomial(f, src[c]);
                for (std::size_t r = 0; r < dst.size(); ++r)
                    big(static_cast<Eigen::Index>(r), id.cols() + static_cast<Eigen::Index>(c)) = prod.coefficient(dst[r]);
            }
            const auto kernel = big.cols() - rank_mod(big, f) - (id.cols() - rank_mod(id, f));
            const auto id_d = rank_mod(ideal_piece(gens, n, d, src), f);
            witness = kernel > id_d;
        }
        const bool nzd = is_nonzerodivisor(x, gens);
        if (witness)
            CHECK_FALSE(nzd);
        if (nzd)
            CHECK_FALSE(witness);
    }
}
