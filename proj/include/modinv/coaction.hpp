#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "modinv/matrix_group.hpp"
#include "modinv/polynomial.hpp"

namespace modinv {

/// Polynomial part of the cohomology of an elementary abelian group of rank r: F_p[t_1..t_r] with
/// generators in algebraic degree 1. At odd p the exterior classes are not modelled.
struct ElemAbelianModel {
    std::size_t rank;
    FieldPrime field;

    Polynomial generator(std::size_t i) const { return Polynomial::variable(rank, field, i); }
    int generator_degree(GradingConvention g) const { return displayed_degree(1, g); }
};

/// i_U: f restricted to U, as a polynomial in the coordinates lambda_1..lambda_s of U's echelon basis.
Polynomial restrict_to_subspace(const Polynomial& f, const Subspace& u);

/// An element of F[C] (x) F[V] in normal form: distinct left monomials, nonzero right factors.
class TensorElement {
public:
    TensorElement(std::size_t left_vars, std::size_t right_vars, FieldPrime field);

    /// Splits a polynomial in left_vars + right_vars variables (left variables first).
    static TensorElement from_flat(const Polynomial& flat, std::size_t left_vars);

    std::size_t left_vars() const { return left_vars_; }
    std::size_t right_vars() const { return right_vars_; }
    const std::map<Monomial, Polynomial>& terms() const { return terms_; }
    /// Right factor paired with the left monomial m (zero when absent).
    Polynomial right_factor(const Monomial& m) const;
    Polynomial flatten() const;
    std::string to_string() const;

    bool operator==(const TensorElement& o) const { return flatten() == o.flatten(); }

private:
    std::size_t left_vars_;
    std::size_t right_vars_;
    FieldPrime field_;
    std::map<Monomial, Polynomial> terms_;
};

/// Psi(f): f(c + v) with c = sum mu_i c_i over C's echelon basis, split as sum m(mu) (x) g_m(v).
///
/// Requires C inside V^P and f P-invariant; the right factors are checked to be P-invariant.
TensorElement coaction(const Polynomial& f, const Subspace& c, const SubgroupHandle& p);

/// (eps (x) 1) o Psi == id: setting every mu_i to zero returns f.
bool counit_check(const Polynomial& f, const Subspace& c, const SubgroupHandle& p);

/// (Delta (x) 1) o Psi == (1 (x) Psi) o Psi, both compared with f(c + c' + v).
bool coassociativity_check(const Polynomial& f, const Subspace& c, const SubgroupHandle& p);

}  // namespace modinv
