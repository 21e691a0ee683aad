#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modinv/field.hpp"

namespace modinv {

using Exponent = std::uint16_t;

/// Exponent vector of fixed length n. Comparison is lexicographic on the exponents.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t n) : exps_(n, 0) {}
    explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

    std::size_t size() const { return exps_.size(); }
    int degree() const;
    Exponent operator[](std::size_t i) const { return exps_[i]; }
    Exponent& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<Exponent>& exponents() const { return exps_; }

    bool divides(const Monomial& other) const;
    bool is_one() const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// Requires b | a.
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend Monomial lcm(const Monomial& a, const Monomial& b);

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

private:
    std::vector<Exponent> exps_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const;
};

struct Term {
    Monomial mono;
    Coeff coeff;
    bool operator==(const Term&) const = default;
};

/// Sparse polynomial over F_p in n variables.
///
/// Terms are kept sorted with the lex-largest monomial first and carry nonzero canonical
/// residues, so two polynomials are equal iff their term lists are equal.
class Polynomial {
public:
    Polynomial(std::size_t n, FieldPrime field) : n_(n), field_(field) {}

    /// Combines duplicates, reduces coefficients, prunes zeros.
    static Polynomial from_terms(std::size_t n, FieldPrime field, std::vector<Term> terms);
    static Polynomial constant(std::size_t n, FieldPrime field, std::int64_t c);
    static Polynomial variable(std::size_t n, FieldPrime field, std::size_t i);
    static Polynomial monomial(FieldPrime field, Monomial m, Coeff c = 1);

    std::size_t nvars() const { return n_; }
    const FieldPrime& field() const { return field_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous() const;
    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    /// Homogeneous part of degree d.
    Polynomial component(int d) const;
    /// Coefficient of `m` (0 when absent).
    Coeff coefficient(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial scaled(Coeff c) const;
    Polynomial pow(unsigned e) const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }
    friend Polynomial multiply(const Polynomial& a, const Polynomial& b);

    bool operator==(const Polynomial& o) const { return n_ == o.n_ && field_ == o.field_ && terms_ == o.terms_; }

    /// Renders with variables x1..xn unless names are supplied.
    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    void check_compatible(const Polynomial& o) const;
    std::size_t n_;
    FieldPrime field_;
    std::vector<Term> terms_;
};

/// Which degree convention is used when degrees are reported.
enum class GradingConvention { algebraic, topological };

/// Degree as displayed: generators in degree 1 (algebraic) or 2 (topological).
inline int displayed_degree(int algebraic_degree, GradingConvention g)
{
    return g == GradingConvention::topological ? 2 * algebraic_degree : algebraic_degree;
}

/// Replaces x_i by sum_j a(i, j) y_j. `a` is n x m; the result has m variables.
Polynomial apply_linear_substitution(const Polynomial& f, const Matrix& a);

/// Monomials of degree d in n variables, lex-largest first.
std::vector<Monomial> monomial_basis(std::size_t n, int d);

/// Binomial coefficient as an exact integer; saturates at INT64_MAX.
std::int64_t binomial(std::int64_t n, std::int64_t k);

/// Total Steenrod square in algebraic grading: the ring map with Sq(x_i) = x_i + x_i^2. p = 2 only.
Polynomial steenrod_total_square(const Polynomial& f);

/// Parses sums of terms like "2*x1^2*x3 - x2 + 1" with variables x1..xn.
/// Throws InputError with the offending position on malformed text.
Polynomial parse_polynomial(std::string_view text, std::size_t n, FieldPrime field);

/// Re-embeds f into a ring with `new_n` variables, sending x_i to x_{offset + i}.
Polynomial shift_variables(const Polynomial& f, std::size_t new_n, std::size_t offset);

}  // namespace modinv
