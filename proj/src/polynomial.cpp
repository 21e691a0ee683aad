#include "modinv/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace modinv {

int Monomial::degree() const
{
    int d = 0;
    for (auto e : exps_)
        d += e;
    return d;
}

bool Monomial::divides(const Monomial& other) const
{
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i])
            return false;
    return true;
}

bool Monomial::is_one() const
{
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial r = a;
    for (std::size_t i = 0; i < r.exps_.size(); ++i)
        r.exps_[i] = static_cast<Exponent>(r.exps_[i] + b.exps_[i]);
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b)
{
    Monomial r = a;
    for (std::size_t i = 0; i < r.exps_.size(); ++i)
        r.exps_[i] = static_cast<Exponent>(r.exps_[i] - b.exps_[i]);
    return r;
}

Monomial lcm(const Monomial& a, const Monomial& b)
{
    Monomial r = a;
    for (std::size_t i = 0; i < r.exps_.size(); ++i)
        r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    return r;
}

std::size_t MonomialHash::operator()(const Monomial& m) const
{
    std::size_t h = 1469598103934665603ull;
    for (auto e : m.exponents()) {
        h ^= e;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

bool lex_greater(const Term& a, const Term& b)
{
    return a.mono > b.mono;
}

// Sorts, combines equal monomials, drops zero coefficients.
void normalize(std::vector<Term>& terms, const FieldPrime& f)
{
    std::sort(terms.begin(), terms.end(), lex_greater);
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        Coeff c = 0;
        std::size_t j = i;
        for (; j < terms.size() && terms[j].mono == terms[i].mono; ++j)
            c = f.add(c, terms[j].coeff);
        if (c != 0) {
            if (out != i)
                terms[out].mono = std::move(terms[i].mono);
            terms[out].coeff = c;
            ++out;
        }
        i = j;
    }
    terms.resize(out);
}

}  // namespace

Polynomial Polynomial::from_terms(std::size_t n, FieldPrime field, std::vector<Term> terms)
{
    Polynomial r(n, field);
    for (auto& t : terms) {
        if (t.mono.size() != n)
            throw StructuralError("monomial length does not match variable count");
        t.coeff = field.reduce(t.coeff);
    }
    normalize(terms, field);
    r.terms_ = std::move(terms);
    return r;
}

Polynomial Polynomial::constant(std::size_t n, FieldPrime field, std::int64_t c)
{
    Polynomial r(n, field);
    Coeff v = field.reduce(c);
    if (v != 0)
        r.terms_.push_back({Monomial(n), v});
    return r;
}

Polynomial Polynomial::variable(std::size_t n, FieldPrime field, std::size_t i)
{
    if (i >= n)
        throw StructuralError("variable index out of range");
    Monomial m(n);
    m[i] = 1;
    Polynomial r(n, field);
    r.terms_.push_back({std::move(m), 1});
    return r;
}

Polynomial Polynomial::monomial(FieldPrime field, Monomial m, Coeff c)
{
    Polynomial r(m.size(), field);
    c = field.reduce(c);
    if (c != 0)
        r.terms_.push_back({std::move(m), c});
    return r;
}

bool Polynomial::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    const int d = terms_.front().mono.degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.mono.degree() == d; });
}

int Polynomial::degree() const
{
    int d = -1;
    for (const auto& t : terms_)
        d = std::max(d, t.mono.degree());
    return d;
}

Polynomial Polynomial::component(int d) const
{
    Polynomial r(n_, field_);
    for (const auto& t : terms_)
        if (t.mono.degree() == d)
            r.terms_.push_back(t);
    return r;
}

Coeff Polynomial::coefficient(const Monomial& m) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.mono > key; });
    return (it != terms_.end() && it->mono == m) ? it->coeff : 0;
}

void Polynomial::check_compatible(const Polynomial& o) const
{
    if (n_ != o.n_)
        throw StructuralError("polynomials have different variable counts (" + std::to_string(n_) + " vs " +
                              std::to_string(o.n_) + ")");
    if (field_ != o.field_)
        throw StructuralError("polynomials are over different fields");
}

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto& t : r.terms_)
        t.coeff = field_.neg(t.coeff);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    check_compatible(o);
    if (&o == this) {
        const Polynomial copy = o;
        return *this += copy;
    }
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].mono > o.terms_[j].mono)) {
            merged.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].mono > terms_[i].mono) {
            merged.push_back(o.terms_[j++]);
        } else {
            Coeff c = field_.add(terms_[i].coeff, o.terms_[j].coeff);
            if (c != 0)
                merged.push_back({std::move(terms_[i].mono), c});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    return *this += -o;
}

Polynomial Polynomial::scaled(Coeff c) const
{
    c = field_.reduce(c);
    Polynomial r(n_, field_);
    if (c == 0)
        return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_)
        t.coeff = field_.mul(t.coeff, c);
    return r;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b)
{
    a.check_compatible(b);
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_)
            prod.push_back({s.mono * t.mono, a.field_.mul(s.coeff, t.coeff)});
    normalize(prod, a.field_);
    Polynomial r(a.n_, a.field_);
    r.terms_ = std::move(prod);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const
{
    Polynomial result = constant(n_, field_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first)
            os << " + ";
        first = false;
        bool wrote = false;
        if (t.coeff != 1 || t.mono.is_one()) {
            os << t.coeff;
            wrote = true;
        }
        for (std::size_t i = 0; i < n_; ++i) {
            const auto e = t.mono[i];
            if (e == 0)
                continue;
            if (wrote)
                os << '*';
            if (i < names.size())
                os << names[i];
            else
                os << 'x' << (i + 1);
            if (e > 1)
                os << '^' << e;
            wrote = true;
        }
    }
    return os.str();
}

Polynomial apply_linear_substitution(const Polynomial& f, const Matrix& a)
{
    const std::size_t n = f.nvars();
    if (static_cast<std::size_t>(a.rows()) != n)
        throw StructuralError("substitution matrix has " + std::to_string(a.rows()) + " rows, polynomial has " +
                              std::to_string(n) + " variables");
    const std::size_t m = static_cast<std::size_t>(a.cols());
    const FieldPrime& field = f.field();

    std::vector<Polynomial> forms;
    forms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Term> terms;
        for (std::size_t j = 0; j < m; ++j) {
            Coeff c = field.reduce(a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            if (c == 0)
                continue;
            Monomial mono(m);
            mono[j] = 1;
            terms.push_back({std::move(mono), c});
        }
        forms.push_back(Polynomial::from_terms(m, field, std::move(terms)));
    }

    // powers[i][e] = forms[i]^e, filled on demand.
    std::vector<std::vector<Polynomial>> powers(n);
    auto power = [&](std::size_t i, Exponent e) -> const Polynomial& {
        auto& tab = powers[i];
        if (tab.empty())
            tab.push_back(Polynomial::constant(m, field, 1));
        while (tab.size() <= e)
            tab.push_back(tab.back() * forms[i]);
        return tab[e];
    };

    Polynomial result(m, field);
    for (const auto& t : f.terms()) {
        Polynomial img = Polynomial::constant(m, field, t.coeff);
        for (std::size_t i = 0; i < n && !img.is_zero(); ++i)
            if (t.mono[i] > 0)
                img = img * power(i, t.mono[i]);
        result += img;
    }
    return result;
}

namespace {

void enumerate_monomials(std::size_t n, int d, std::size_t pos, Monomial& cur, std::vector<Monomial>& out)
{
    if (pos + 1 == n) {
        cur[pos] = static_cast<Exponent>(d);
        out.push_back(cur);
        return;
    }
    for (int e = d; e >= 0; --e) {
        cur[pos] = static_cast<Exponent>(e);
        enumerate_monomials(n, d - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

}  // namespace

std::vector<Monomial> monomial_basis(std::size_t n, int d)
{
    std::vector<Monomial> out;
    if (n == 0 || d < 0)
        return out;
    Monomial cur(n);
    enumerate_monomials(n, d, 0, cur, out);
    return out;
}

std::int64_t binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) / i is exact at every step
        const std::int64_t num = n - k + i;
        if (r > std::numeric_limits<std::int64_t>::max() / num)
            return std::numeric_limits<std::int64_t>::max();
        r = r * num / i;
    }
    return r;
}

Polynomial steenrod_total_square(const Polynomial& f)
{
    if (f.field().p() != 2)
        throw UnsupportedError("total Steenrod square is implemented for p = 2 only");
    const std::size_t n = f.nvars();
    Polynomial result(n, f.field());
    for (const auto& t : f.terms()) {
        Polynomial img = Polynomial::constant(n, f.field(), t.coeff);
        for (std::size_t i = 0; i < n; ++i) {
            if (t.mono[i] == 0)
                continue;
            Polynomial x = Polynomial::variable(n, f.field(), i);
            img = img * (x + x * x).pow(t.mono[i]);
        }
        result += img;
    }
    return result;
}

Polynomial shift_variables(const Polynomial& f, std::size_t new_n, std::size_t offset)
{
    if (offset + f.nvars() > new_n)
        throw StructuralError("variable shift out of range");
    std::vector<Term> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) {
        Monomial m(new_n);
        for (std::size_t i = 0; i < f.nvars(); ++i)
            m[offset + i] = t.mono[i];
        terms.push_back({std::move(m), t.coeff});
    }
    return Polynomial::from_terms(new_n, f.field(), std::move(terms));
}

}  // namespace modinv

namespace modinv {

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, std::size_t n, FieldPrime field) : s_(text), n_(n), field_(field) {}

    Polynomial parse()
    {
        Polynomial result(n_, field_);
        skip();
        if (pos_ == s_.size())
            fail("empty polynomial");
        bool negate = false;
        if (peek() == '-' || peek() == '+') {
            negate = peek() == '-';
            ++pos_;
        }
        while (true) {
            Polynomial t = term();
            result += negate ? -t : t;
            skip();
            if (pos_ == s_.size())
                break;
            if (peek() != '+' && peek() != '-')
                fail("expected '+' or '-'");
            negate = peek() == '-';
            ++pos_;
        }
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw InputError("polynomial \"" + std::string(s_) + "\" at position " + std::to_string(pos_) + ": " + why);
    }
    void skip()
    {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t'))
            ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    std::int64_t number()
    {
        skip();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected a number");
        std::int64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s_[pos_++] - '0');
            if (v > (1ll << 40))
                fail("number too large");
        }
        return v;
    }
    Polynomial factor()
    {
        skip();
        if (peek() == 'x') {
            ++pos_;
            const auto idx = number();
            if (idx < 1 || static_cast<std::size_t>(idx) > n_)
                fail("variable index out of range 1.." + std::to_string(n_));
            std::int64_t e = 1;
            skip();
            if (peek() == '^') {
                ++pos_;
                e = number();
            }
            Monomial m(n_);
            m[static_cast<std::size_t>(idx - 1)] = static_cast<Exponent>(e);
            return Polynomial::monomial(field_, std::move(m));
        }
        return Polynomial::constant(n_, field_, number());
    }
    Polynomial term()
    {
        Polynomial t = factor();
        while (true) {
            skip();
            if (peek() != '*')
                return t;
            ++pos_;
            t = t * factor();
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t n_;
    FieldPrime field_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t n, FieldPrime field)
{
    return PolyParser(text, n, field).parse();
}

}  // namespace modinv
