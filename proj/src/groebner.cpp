#include "modinv/groebner.hpp"

#include <algorithm>
#include <string>

namespace modinv {

bool MonomialOrder::greater(const Monomial& a, const Monomial& b) const
{
    if (eliminate) {
        const auto e = *eliminate;
        if (a[e] != b[e])
            return a[e] > b[e];
    }
    const int da = a.degree(), db = b.degree();
    if (da != db)
        return da > db;
    const std::size_t n = a.size();
    auto var = [this](std::size_t k) { return priority.empty() ? k : priority[k]; };
    if (kind == OrderKind::graded_lex) {
        for (std::size_t k = 0; k < n; ++k) {
            const auto v = var(k);
            if (a[v] != b[v])
                return a[v] > b[v];
        }
    } else {
        for (std::size_t k = n; k-- > 0;) {
            const auto v = var(k);
            if (a[v] != b[v])
                return a[v] < b[v];
        }
    }
    return false;
}

namespace {

using OPoly = std::vector<Term>;

OPoly to_ordered(const Polynomial& f, const MonomialOrder& order)
{
    OPoly p = f.terms();
    std::sort(p.begin(), p.end(), [&order](const Term& a, const Term& b) { return order.greater(a.mono, b.mono); });
    return p;
}

Polynomial from_ordered(const OPoly& p, std::size_t n, const FieldPrime& field)
{
    return Polynomial::from_terms(n, field, p);
}

// p - c * m * g, all sorted by `order`.
OPoly sub_multiple(const OPoly& p, Coeff c, const Monomial& m, const OPoly& g, const MonomialOrder& order,
                   const FieldPrime& f)
{
    OPoly out;
    out.reserve(p.size() + g.size());
    std::size_t i = 0, j = 0;
    const Coeff negc = f.neg(c);
    while (i < p.size() || j < g.size()) {
        if (j == g.size()) {
            out.push_back(p[i++]);
            continue;
        }
        Monomial gm = g[j].mono * m;
        if (i < p.size() && order.greater(p[i].mono, gm)) {
            out.push_back(p[i++]);
        } else if (i < p.size() && p[i].mono == gm) {
            Coeff s = f.add(p[i].coeff, f.mul(negc, g[j].coeff));
            if (s != 0)
                out.push_back({std::move(gm), s});
            ++i;
            ++j;
        } else {
            out.push_back({std::move(gm), f.mul(negc, g[j].coeff)});
            ++j;
        }
    }
    return out;
}

void make_monic(OPoly& p, const FieldPrime& f)
{
    if (p.empty())
        return;
    const Coeff s = f.inv(p.front().coeff);
    for (auto& t : p)
        t.coeff = f.mul(t.coeff, s);
}

// Full reduction of p by the (monic) basis, skipping index `skip`.
OPoly reduce(OPoly p, const std::vector<OPoly>& basis, const MonomialOrder& order, const FieldPrime& f,
             std::size_t skip = static_cast<std::size_t>(-1))
{
    OPoly rem;
    while (!p.empty()) {
        const Term lead = p.front();
        bool divided = false;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (k == skip || basis[k].empty())
                continue;
            if (basis[k].front().mono.divides(lead.mono)) {
                p = sub_multiple(p, lead.coeff, lead.mono / basis[k].front().mono, basis[k], order, f);
                divided = true;
                break;
            }
        }
        if (!divided) {
            rem.push_back(lead);
            p.erase(p.begin());
        }
    }
    return rem;
}

}  // namespace

GroebnerBasis::GroebnerBasis(std::size_t nvars, FieldPrime field, MonomialOrder order, std::vector<Polynomial> gens)
    : nvars_(nvars), field_(field), order_(std::move(order)), gens_(std::move(gens))
{
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const
{
    std::vector<Monomial> out;
    for (const auto& g : gens_)
        out.push_back(leading_monomial(g, order_));
    return out;
}

Monomial leading_monomial(const Polynomial& f, const MonomialOrder& order)
{
    if (f.is_zero())
        throw PreconditionError("leading monomial of the zero polynomial");
    const auto& terms = f.terms();
    const Monomial* best = &terms.front().mono;
    for (const auto& t : terms)
        if (order.greater(t.mono, *best))
            best = &t.mono;
    return *best;
}

GroebnerBasis buchberger(const std::vector<Polynomial>& ideal, const MonomialOrder& order, std::size_t nvars,
                         FieldPrime field, std::size_t pair_cap)
{
    for (const auto& g : ideal)
        if (g.nvars() != nvars || g.field() != field)
            throw StructuralError("ideal generators over different rings");

    std::vector<OPoly> basis;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    auto add = [&](OPoly p) {
        make_monic(p, field);
        for (std::size_t k = 0; k < basis.size(); ++k)
            pairs.emplace_back(k, basis.size());
        basis.push_back(std::move(p));
    };
    for (const auto& g : ideal) {
        OPoly r = reduce(to_ordered(g, order), basis, order, field);
        if (!r.empty())
            add(std::move(r));
    }

    std::size_t processed = 0;
    while (!pairs.empty()) {
        // Normal selection: smallest lcm first.
        std::size_t best = 0;
        Monomial best_lcm = lcm(basis[pairs[0].first].front().mono, basis[pairs[0].second].front().mono);
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            Monomial l = lcm(basis[pairs[k].first].front().mono, basis[pairs[k].second].front().mono);
            if (order.greater(best_lcm, l)) {
                best = k;
                best_lcm = std::move(l);
            }
        }
        const auto [i, j] = pairs[best];
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));

        const Monomial& li = basis[i].front().mono;
        const Monomial& lj = basis[j].front().mono;
        if (li * lj == best_lcm)
            continue;  // coprime leading monomials
        if (++processed > pair_cap)
            throw CapacityError("Buchberger pair queue exceeded the cap of " + std::to_string(pair_cap));
        OPoly s = sub_multiple(OPoly{}, field.neg(1), best_lcm / li, basis[i], order, field);
        s = sub_multiple(s, 1, best_lcm / lj, basis[j], order, field);
        OPoly r = reduce(std::move(s), basis, order, field);
        if (!r.empty())
            add(std::move(r));
    }

    // Minimize, then inter-reduce.
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = 0; b < basis.size() && keep[a]; ++b) {
            if (a == b || !keep[b])
                continue;
            const auto& la = basis[a].front().mono;
            const auto& lb = basis[b].front().mono;
            if (lb.divides(la) && (lb != la || b < a))
                keep[a] = false;
        }
    }
    std::vector<OPoly> minimal;
    for (std::size_t a = 0; a < basis.size(); ++a)
        if (keep[a])
            minimal.push_back(basis[a]);
    for (std::size_t a = 0; a < minimal.size(); ++a) {
        OPoly tail(minimal[a].begin() + 1, minimal[a].end());
        OPoly red = reduce(std::move(tail), minimal, order, field, a);
        red.insert(red.begin(), minimal[a].front());
        minimal[a] = std::move(red);
    }
    std::sort(minimal.begin(), minimal.end(),
              [&order](const OPoly& a, const OPoly& b) { return order.greater(a.front().mono, b.front().mono); });
    std::vector<Polynomial> gens;
    for (const auto& p : minimal)
        gens.push_back(from_ordered(p, nvars, field));
    return GroebnerBasis(nvars, field, order, std::move(gens));
}

GroebnerBasis buchberger(const std::vector<Polynomial>& ideal, const MonomialOrder& order)
{
    if (ideal.empty())
        throw PreconditionError("buchberger: pass the ring explicitly for an empty generator list");
    return buchberger(ideal, order, ideal.front().nvars(), ideal.front().field());
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& b)
{
    if (f.nvars() != b.nvars() || f.field() != b.field())
        throw StructuralError("normal_form: polynomial and basis live in different rings");
    std::vector<OPoly> basis;
    for (const auto& g : b.generators())
        basis.push_back(to_ordered(g, b.order()));
    return from_ordered(reduce(to_ordered(f, b.order()), basis, b.order(), b.field()), b.nvars(), b.field());
}

int krull_dimension(const GroebnerBasis& b)
{
    const auto leads = b.leading_monomials();
    for (const auto& m : leads)
        if (m.is_one())
            return -1;
    const std::size_t n = b.nvars();
    if (n > 20)
        throw CapacityError("krull_dimension enumerates variable subsets; too many variables");
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size <= best)
            continue;
        bool independent = true;
        for (const auto& m : leads) {
            bool inside = true;
            for (std::size_t v = 0; v < n && inside; ++v)
                if (m[v] > 0 && !(mask & (1u << v)))
                    inside = false;
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent)
            best = size;
    }
    return best;
}

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero())
        throw PreconditionError("division by the zero polynomial");
    const MonomialOrder order;
    OPoly rem = to_ordered(a, order);
    const OPoly div = to_ordered(b, order);
    const FieldPrime& f = a.field();
    const Coeff inv_lead = f.inv(div.front().coeff);
    std::vector<Term> quotient;
    while (!rem.empty()) {
        if (!div.front().mono.divides(rem.front().mono))
            return std::nullopt;
        const Monomial m = rem.front().mono / div.front().mono;
        const Coeff c = f.mul(rem.front().coeff, inv_lead);
        quotient.push_back({m, c});
        rem = sub_multiple(rem, c, m, div, order, f);
    }
    return Polynomial::from_terms(a.nvars(), f, std::move(quotient));
}

bool is_nonzerodivisor(const Polynomial& x, const std::vector<Polynomial>& ideal)
{
    if (x.is_zero())
        throw PreconditionError("is_nonzerodivisor: x = 0");
    const std::size_t n = x.nvars();
    const FieldPrime& field = x.field();
    std::vector<Polynomial> gens;
    for (const auto& g : ideal)
        if (!g.is_zero())
            gens.push_back(g);
    if (gens.empty())
        return true;
    const MonomialOrder base{OrderKind::graded_revlex, {}, std::nullopt};
    const GroebnerBasis gb = buchberger(gens, base, n, field);
    if (krull_dimension(gb) < 0)
        return true;  // zero ring

    // I cap (x) = (t I + (1 - t) x) cap F[x]
    const std::size_t m = n + 1;
    const Polynomial t = Polynomial::variable(m, field, n);
    const Polynomial one = Polynomial::constant(m, field, 1);
    std::vector<Polynomial> elim;
    for (const auto& g : gens)
        elim.push_back(t * shift_variables(g, m, 0));
    elim.push_back((one - t) * shift_variables(x, m, 0));
    const MonomialOrder block{OrderKind::graded_revlex, {}, n};
    const GroebnerBasis eb = buchberger(elim, block, m, field);
    for (const auto& g : eb.generators()) {
        bool uses_t = std::any_of(g.terms().begin(), g.terms().end(), [n](const Term& tm) { return tm.mono[n] > 0; });
        if (uses_t)
            continue;
        std::vector<Term> terms;
        for (const auto& tm : g.terms()) {
            Monomial mono(n);
            for (std::size_t v = 0; v < n; ++v)
                mono[v] = tm.mono[v];
            terms.push_back({std::move(mono), tm.coeff});
        }
        const Polynomial h = Polynomial::from_terms(n, field, std::move(terms));
        auto q = exact_divide(h, x);
        if (!q)
            throw InconsistencyError("intersection generator " + h.to_string() + " is not divisible by " + x.to_string());
        if (!normal_form(*q, gb).is_zero())
            return false;
    }
    return true;
}

}  // namespace modinv
