#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "modinv/polynomial.hpp"

namespace modinv {

inline constexpr std::size_t kDefaultPairCap = 200000;

enum class OrderKind { graded_lex, graded_revlex };

/// Degree-compatible monomial order. `priority` lists variables from most to least significant
/// (identity when empty). When `eliminate` is set, that variable's exponent is compared first,
/// giving a block order suitable for eliminating it.
struct MonomialOrder {
    OrderKind kind = OrderKind::graded_lex;
    std::vector<std::size_t> priority;
    std::optional<std::size_t> eliminate;

    /// Strict "a is larger than b".
    bool greater(const Monomial& a, const Monomial& b) const;
};

/// A reduced Groebner basis: monic generators sorted by leading monomial, largest first.
class GroebnerBasis {
public:
    GroebnerBasis(std::size_t nvars, FieldPrime field, MonomialOrder order, std::vector<Polynomial> gens);

    std::size_t nvars() const { return nvars_; }
    const FieldPrime& field() const { return field_; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    std::vector<Monomial> leading_monomials() const;

private:
    std::size_t nvars_;
    FieldPrime field_;
    MonomialOrder order_;
    std::vector<Polynomial> gens_;
};

/// Leading monomial of a nonzero f under `order`.
Monomial leading_monomial(const Polynomial& f, const MonomialOrder& order);

/// Reduced Groebner basis of the ideal. `nvars`/`field` are used when the list is empty.
/// Throws CapacityError after `pair_cap` S-pair reductions.
GroebnerBasis buchberger(const std::vector<Polynomial>& ideal, const MonomialOrder& order, std::size_t nvars,
                         FieldPrime field, std::size_t pair_cap = kDefaultPairCap);
GroebnerBasis buchberger(const std::vector<Polynomial>& ideal, const MonomialOrder& order = {});

/// Remainder of f modulo b; zero iff f lies in the ideal.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& b);

/// Krull dimension of F[x]/ideal(b) read from the initial ideal; -1 for the unit ideal.
int krull_dimension(const GroebnerBasis& b);

/// Exact quotient a / b; nullopt when b does not divide a.
std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);

/// Whether (I : x) == I, with (I : x) obtained as (I cap (x)) / x by eliminating an auxiliary variable.
bool is_nonzerodivisor(const Polynomial& x, const std::vector<Polynomial>& ideal);

}  // namespace modinv
