#include "modinv/coaction.hpp"

#include <sstream>

namespace modinv {

Polynomial restrict_to_subspace(const Polynomial& f, const Subspace& u)
{
    if (u.ambient() != f.nvars())
        throw StructuralError("restriction: subspace of F_p^" + std::to_string(u.ambient()) +
                              " cannot restrict a polynomial in " + std::to_string(f.nvars()) + " variables");
    return apply_linear_substitution(f, u.basis().transpose());
}

TensorElement::TensorElement(std::size_t left_vars, std::size_t right_vars, FieldPrime field)
    : left_vars_(left_vars), right_vars_(right_vars), field_(field)
{
}

TensorElement TensorElement::from_flat(const Polynomial& flat, std::size_t left_vars)
{
    if (left_vars > flat.nvars())
        throw StructuralError("tensor split point beyond the variable count");
    const std::size_t right_vars = flat.nvars() - left_vars;
    TensorElement out(left_vars, right_vars, flat.field());
    std::map<Monomial, std::vector<Term>> grouped;
    for (const auto& t : flat.terms()) {
        Monomial l(left_vars), r(right_vars);
        for (std::size_t i = 0; i < left_vars; ++i)
            l[i] = t.mono[i];
        for (std::size_t i = 0; i < right_vars; ++i)
            r[i] = t.mono[left_vars + i];
        grouped[l].push_back({std::move(r), t.coeff});
    }
    for (auto& [l, terms] : grouped) {
        Polynomial right = Polynomial::from_terms(right_vars, flat.field(), std::move(terms));
        if (!right.is_zero())
            out.terms_.emplace(l, std::move(right));
    }
    return out;
}

Polynomial TensorElement::right_factor(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Polynomial(right_vars_, field_) : it->second;
}

Polynomial TensorElement::flatten() const
{
    const std::size_t total = left_vars_ + right_vars_;
    Polynomial out(total, field_);
    for (const auto& [l, r] : terms_)
        out += shift_variables(Polynomial::monomial(field_, l), total, 0) * shift_variables(r, total, left_vars_);
    return out;
}

std::string TensorElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::vector<std::string> mu;
    for (std::size_t i = 0; i < left_vars_; ++i)
        mu.push_back("mu" + std::to_string(i + 1));
    std::ostringstream os;
    bool first = true;
    // Highest left monomial first, matching polynomial rendering.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first)
            os << " + ";
        first = false;
        os << Polynomial::monomial(field_, it->first).to_string(mu) << " (x) (" << it->second.to_string() << ")";
    }
    return os.str();
}

namespace {

void check_coaction_preconditions(const Polynomial& f, const Subspace& c, const SubgroupHandle& p)
{
    if (c.ambient() != f.nvars() || p.parent()->n() != f.nvars())
        throw StructuralError("coaction: dimension mismatch between polynomial, subspace and group");
    if (!c.is_subspace_of(fixed_subspace(p)))
        throw PreconditionError("coaction: " + c.to_string() + " is not contained in the fixed subspace V^P");
    if (!is_invariant(f, p.generating_set()))
        throw PreconditionError("coaction: " + f.to_string() + " is not P-invariant");
}

// f(c + v) in variables (mu_1..mu_s, x_1..x_n).
Polynomial translate(const Polynomial& f, const Subspace& c)
{
    const auto n = static_cast<Eigen::Index>(f.nvars());
    const auto s = static_cast<Eigen::Index>(c.dim());
    Matrix a = Matrix::Zero(n, s + n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < s; ++i)
            a(j, i) = c.basis()(i, j);
        a(j, s + j) = 1;
    }
    return apply_linear_substitution(f, a);
}

}  // namespace

TensorElement coaction(const Polynomial& f, const Subspace& c, const SubgroupHandle& p)
{
    check_coaction_preconditions(f, c, p);
    TensorElement psi = TensorElement::from_flat(translate(f, c), c.dim());
    const auto gens = p.generating_set();
    for (const auto& [l, r] : psi.terms())
        if (!is_invariant(r, gens))
            throw InconsistencyError("coaction right factor " + r.to_string() + " is not P-invariant");
    return psi;
}

bool counit_check(const Polynomial& f, const Subspace& c, const SubgroupHandle& p)
{
    TensorElement psi = coaction(f, c, p);
    return psi.right_factor(Monomial(c.dim())) == f;
}

bool coassociativity_check(const Polynomial& f, const Subspace& c, const SubgroupHandle& p)
{
    const std::size_t s = c.dim();
    const std::size_t n = f.nvars();
    const std::size_t total = 2 * s + n;
    const FieldPrime& field = f.field();
    TensorElement psi = coaction(f, c, p);

    // Comultiplication on F[C]: mu_i -> mu_i + nu_i.
    Matrix delta = Matrix::Zero(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(2 * s));
    for (std::size_t i = 0; i < s; ++i) {
        delta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1;
        delta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s + i)) = 1;
    }

    Polynomial lhs(total, field);
    Polynomial rhs(total, field);
    for (const auto& [l, r] : psi.terms()) {
        const Polynomial left = Polynomial::monomial(field, l);
        lhs += shift_variables(apply_linear_substitution(left, delta), total, 0) * shift_variables(r, total, 2 * s);
        rhs += shift_variables(left, total, 0) * shift_variables(coaction(r, c, p).flatten(), total, s);
    }

    // f(c + c' + v) directly.
    const auto ni = static_cast<Eigen::Index>(n);
    const auto si = static_cast<Eigen::Index>(s);
    Matrix a = Matrix::Zero(ni, static_cast<Eigen::Index>(total));
    for (Eigen::Index j = 0; j < ni; ++j) {
        for (Eigen::Index i = 0; i < si; ++i) {
            a(j, i) = c.basis()(i, j);
            a(j, si + i) = c.basis()(i, j);
        }
        a(j, 2 * si + j) = 1;
    }
    const Polynomial direct = apply_linear_substitution(f, a);
    return lhs == rhs && lhs == direct;
}

}  // namespace modinv
