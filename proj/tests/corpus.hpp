#pragma once

// Test groups shared by the unit and acceptance suites.

#include <random>
#include <string>
#include <vector>

#include "modinv/invariants.hpp"
#include "modinv/matrix_group.hpp"
#include "modinv/polynomial.hpp"

namespace modinv::testing {

inline Matrix mat(std::initializer_list<std::initializer_list<std::int64_t>> rows)
{
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index r = 0;
    for (const auto& row : rows) {
        Eigen::Index c = 0;
        for (auto v : row)
            m(r, c++) = v;
        ++r;
    }
    return m;
}

/// Permutation matrix sending basis vector e_i to e_{perm[i]}.
inline Matrix permutation_matrix(const std::vector<int>& perm)
{
    const auto n = static_cast<Eigen::Index>(perm.size());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        m(perm[static_cast<std::size_t>(i)], i) = 1;
    return m;
}

inline GroupPtr trivial_group(std::int64_t p, std::size_t n)
{
    return MatrixGroup::enumerate(FieldPrime(p), n, {});
}

inline GroupPtr swap_group()
{
    return MatrixGroup::enumerate(FieldPrime(2), 2, {mat({{0, 1}, {1, 0}})});
}

/// Z/3 inside GL_2(F_2); p does not divide the order.
inline GroupPtr z3_in_gl2f2()
{
    return MatrixGroup::enumerate(FieldPrime(2), 2, {mat({{0, 1}, {1, 1}})});
}

inline GroupPtr gl2f2()
{
    return MatrixGroup::enumerate(FieldPrime(2), 2, {mat({{0, 1}, {1, 0}}), mat({{0, 1}, {1, 1}})});
}

/// Z/2 acting on k copies of its regular representation, F_2^{2k}.
inline GroupPtr z2_regular_copies(int k)
{
    std::vector<int> perm;
    for (int c = 0; c < k; ++c) {
        perm.push_back(2 * c + 1);
        perm.push_back(2 * c);
    }
    return MatrixGroup::enumerate(FieldPrime(2), static_cast<std::size_t>(2 * k), {permutation_matrix(perm)});
}

/// Z/3 regular representation on F_3^3 (cyclic coordinate shift).
inline GroupPtr z3_regular()
{
    return MatrixGroup::enumerate(FieldPrime(3), 3, {permutation_matrix({1, 2, 0})});
}

/// Klein four group acting on F_2^4 by its regular permutation representation.
inline GroupPtr klein_regular()
{
    return MatrixGroup::enumerate(FieldPrime(2), 4, {permutation_matrix({1, 0, 3, 2}), permutation_matrix({2, 3, 0, 1})});
}

struct CorpusEntry {
    std::string name;
    GroupPtr group;
    int cutoff;
};

/// The modular groups every theorem check runs on.
inline std::vector<CorpusEntry> modular_corpus()
{
    return {
        {"swap on F_2^2", swap_group(), 10},
        {"GL_2(F_2)", gl2f2(), 10},
        {"Klein four regular on F_2^4", klein_regular(), 10},
        {"Z/3 regular on F_3^3", z3_regular(), 10},
        {"Z/2 x1 regular on F_2^2", z2_regular_copies(1), 10},
        {"Z/2 x2 regular on F_2^4", z2_regular_copies(2), 10},
        {"Z/2 x3 regular on F_2^6", z2_regular_copies(3), 8},
    };
}

inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t n, const FieldPrime& f, int max_deg, int max_terms)
{
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> exp(0, max_deg);
    std::uniform_int_distribution<std::int64_t> coeff(1, static_cast<std::int64_t>(f.p()) - 1);
    std::vector<Term> terms;
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Monomial m(n);
        int budget = max_deg;
        for (std::size_t v = 0; v < n; ++v) {
            std::uniform_int_distribution<int> e(0, budget);
            m[v] = static_cast<Exponent>(e(rng));
            budget -= m[v];
        }
        terms.push_back({std::move(m), static_cast<Coeff>(coeff(rng))});
    }
    return Polynomial::from_terms(n, f, std::move(terms));
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, const FieldPrime& f)
{
    std::uniform_int_distribution<std::int64_t> d(0, static_cast<std::int64_t>(f.p()) - 1);
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            m(r, c) = d(rng);
    return m;
}

/// Random nonzero element of (F[V]^G)_d, or zero when that piece vanishes. Needs ring computed to d.
inline Polynomial random_invariant(const InvariantRing& ring, int d, std::mt19937_64& rng)
{
    const auto basis = ring.basis_polynomials(d);
    Polynomial out(ring.nvars(), ring.field());
    if (basis.empty())
        return out;
    std::uniform_int_distribution<std::int64_t> c(0, static_cast<std::int64_t>(ring.field().p()) - 1);
    while (out.is_zero())
        for (const auto& b : basis)
            out += b.scaled(static_cast<Coeff>(c(rng)));
    return out;
}

inline Polynomial P(const std::string& text, std::size_t n, std::int64_t p)
{
    return parse_polynomial(text, n, FieldPrime(p));
}

}  // namespace modinv::testing
