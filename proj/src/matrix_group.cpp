#include "modinv/matrix_group.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

namespace modinv {

std::size_t FlatHash::operator()(const std::vector<std::uint16_t>& v) const
{
    std::size_t h = 1469598103934665603ull;
    for (auto e : v) {
        h ^= e;
        h *= 1099511628211ull;
    }
    return h;
}

std::shared_ptr<const MatrixGroup> MatrixGroup::enumerate(FieldPrime field, std::size_t n, std::vector<Matrix> generators,
                                                          std::size_t order_cap)
{
    auto grp = std::shared_ptr<MatrixGroup>(new MatrixGroup());
    grp->field_ = field;
    grp->n_ = n;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        auto& g = generators[i];
        if (static_cast<std::size_t>(g.rows()) != n || static_cast<std::size_t>(g.cols()) != n)
            throw StructuralError("generator " + std::to_string(i + 1) + " is not " + std::to_string(n) + "x" +
                                  std::to_string(n));
        g = reduce_mod(g, field);
        if (rank_mod(g, field) != static_cast<Eigen::Index>(n))
            throw StructuralError("generator " + std::to_string(i + 1) + " is singular over F_" +
                                  std::to_string(field.p()));
    }
    std::sort(generators.begin(), generators.end(),
              [](const Matrix& a, const Matrix& b) { return flatten(a) < flatten(b); });
    generators.erase(std::unique(generators.begin(), generators.end(),
                                 [](const Matrix& a, const Matrix& b) { return flatten(a) == flatten(b); }),
                     generators.end());
    grp->generators_ = generators;

    auto add = [&](Matrix m) -> bool {
        auto key = flatten(m);
        if (grp->index_.count(key))
            return false;
        if (grp->elements_.size() >= order_cap)
            throw CapacityError("group closure exceeds the order cap of " + std::to_string(order_cap));
        grp->index_.emplace(std::move(key), grp->elements_.size());
        grp->elements_.push_back(std::move(m));
        return true;
    };
    add(identity_matrix(static_cast<Eigen::Index>(n)));
    for (std::size_t head = 0; head < grp->elements_.size(); ++head) {
        const Matrix current = grp->elements_[head];
        for (const auto& s : grp->generators_)
            add(mul_mod(s, current, field));
    }
    return grp;
}

std::optional<std::size_t> MatrixGroup::index_of(const Matrix& g) const
{
    auto it = index_.find(flatten(reduce_mod(g, field_)));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t MatrixGroup::product_index(std::size_t a, std::size_t b) const
{
    return *index_of(mul_mod(elements_[a], elements_[b], field_));
}

std::size_t MatrixGroup::inverse_index(std::size_t a) const
{
    return *index_of(inverse_mod(elements_[a], field_));
}

Grading MatrixGroup::stable_grading() const
{
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (const auto& g : generators_)
        for (Eigen::Index i = 0; i < g.rows(); ++i)
            for (Eigen::Index j = 0; j < g.cols(); ++j)
                if (g(i, j) != 0) {
                    int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
                    if (a != b)
                        parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
                }
    std::vector<int> block(n_);
    for (std::size_t i = 0; i < n_; ++i)
        block[i] = find(static_cast<int>(i));
    return Grading(std::move(block));
}

SubgroupHandle::SubgroupHandle(GroupPtr parent, std::vector<std::size_t> members)
    : parent_(std::move(parent)), members_(std::move(members))
{
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool SubgroupHandle::contains(std::size_t element_index) const
{
    return std::binary_search(members_.begin(), members_.end(), element_index);
}

std::vector<Matrix> SubgroupHandle::element_matrices() const
{
    std::vector<Matrix> out;
    out.reserve(members_.size());
    for (auto i : members_)
        out.push_back(parent_->element(i));
    return out;
}

std::vector<Matrix> SubgroupHandle::generating_set() const
{
    std::vector<std::size_t> gens;
    std::size_t spanned = 1;
    for (auto m : members_) {
        if (spanned == members_.size())
            break;
        if (m == 0 || subgroup_closure(parent_, gens).contains(m))
            continue;
        gens.push_back(m);
        spanned = subgroup_closure(parent_, gens).order();
    }
    std::vector<Matrix> out;
    for (auto g : gens)
        out.push_back(parent_->element(g));
    return out;
}

GroupPtr SubgroupHandle::as_group() const
{
    return MatrixGroup::enumerate(parent_->field(), parent_->n(), generating_set(), members_.size() + 1);
}

SubgroupHandle subgroup_closure(const GroupPtr& parent, const std::vector<std::size_t>& seeds)
{
    std::vector<char> in(parent->order(), 0);
    std::vector<std::size_t> members{0};
    in[0] = 1;
    std::vector<std::size_t> gens;
    for (auto s : seeds)
        if (s != 0)
            gens.push_back(s);
    for (std::size_t head = 0; head < members.size(); ++head) {
        const auto cur = members[head];
        for (auto s : gens) {
            const auto prod = parent->product_index(s, cur);
            if (!in[prod]) {
                in[prod] = 1;
                members.push_back(prod);
            }
        }
    }
    return SubgroupHandle(parent, std::move(members));
}

Subspace::Subspace(FieldPrime field, std::size_t n, const Matrix& spanning) : field_(field), n_(n)
{
    if (spanning.rows() > 0 && static_cast<std::size_t>(spanning.cols()) != n)
        throw StructuralError("subspace spanning vectors have length " + std::to_string(spanning.cols()) +
                              ", expected " + std::to_string(n));
    if (spanning.rows() == 0)
        basis_ = Matrix(0, static_cast<Eigen::Index>(n));
    else
        basis_ = rref_mod(spanning, field);
}

Subspace Subspace::zero(FieldPrime field, std::size_t n)
{
    return Subspace(field, n, Matrix(0, static_cast<Eigen::Index>(n)));
}

Subspace Subspace::full(FieldPrime field, std::size_t n)
{
    return Subspace(field, n, identity_matrix(static_cast<Eigen::Index>(n)));
}

bool Subspace::contains(const Vector& v) const
{
    Matrix stacked(basis_.rows() + 1, static_cast<Eigen::Index>(n_));
    stacked << basis_, v.transpose();
    return rank_mod(stacked, field_) == basis_.rows();
}

bool Subspace::is_subspace_of(const Subspace& other) const
{
    if (dim() == 0)
        return true;
    Matrix stacked(basis_.rows() + other.basis_.rows(), static_cast<Eigen::Index>(n_));
    stacked << other.basis_, basis_;
    return rank_mod(stacked, field_) == other.basis_.rows();
}

std::string Subspace::to_string() const
{
    std::ostringstream os;
    os << "span{";
    for (Eigen::Index r = 0; r < basis_.rows(); ++r) {
        if (r)
            os << ", ";
        os << '(';
        for (Eigen::Index c = 0; c < basis_.cols(); ++c)
            os << (c ? "," : "") << basis_(r, c);
        os << ')';
    }
    os << '}';
    return os.str();
}

bool Subspace::operator==(const Subspace& o) const
{
    return field_ == o.field_ && n_ == o.n_ && basis_.rows() == o.basis_.rows() && basis_ == o.basis_;
}

std::size_t p_part(std::size_t m, std::size_t p)
{
    std::size_t r = 1;
    while (m > 0 && m % p == 0) {
        m /= p;
        r *= p;
    }
    return r;
}

namespace {

bool is_p_power(std::size_t m, std::size_t p)
{
    return p_part(m, p) == m;
}

std::size_t element_order(const GroupPtr& g, std::size_t idx)
{
    std::size_t ord = 1;
    std::size_t cur = idx;
    while (cur != 0) {
        cur = g->product_index(idx, cur);
        ++ord;
    }
    return ord;
}

bool normalizes(const GroupPtr& g, std::size_t h, const SubgroupHandle& s)
{
    const auto hinv = g->inverse_index(h);
    for (auto m : s.members())
        if (!s.contains(g->product_index(g->product_index(h, m), hinv)))
            return false;
    return true;
}

}  // namespace

SubgroupHandle sylow_subgroup(const GroupPtr& g)
{
    const std::size_t p = g->field().p();
    const std::size_t target = p_part(g->order(), p);
    if (target == 1)
        return SubgroupHandle(g, {0});

    std::vector<std::size_t> p_elements;
    std::vector<std::size_t> orders(g->order(), 1);
    for (std::size_t i = 1; i < g->order(); ++i) {
        orders[i] = element_order(g, i);
        if (is_p_power(orders[i], p))
            p_elements.push_back(i);
    }
    std::size_t start = p_elements.front();
    for (auto i : p_elements)
        if (orders[i] > orders[start])
            start = i;

    std::vector<std::size_t> gens{start};
    SubgroupHandle current = subgroup_closure(g, gens);
    while (current.order() < target) {
        bool grown = false;
        for (auto h : p_elements) {
            if (current.contains(h) || !normalizes(g, h, current))
                continue;
            auto trial_gens = gens;
            trial_gens.push_back(h);
            auto trial = subgroup_closure(g, trial_gens);
            if (!is_p_power(trial.order(), p))
                continue;
            gens = std::move(trial_gens);
            current = std::move(trial);
            grown = true;
            break;
        }
        if (!grown)
            throw InconsistencyError("Sylow growth stalled at order " + std::to_string(current.order()));
    }
    return current;
}

Subspace fixed_subspace(FieldPrime field, std::size_t n, const std::vector<Matrix>& elements)
{
    const auto ni = static_cast<Eigen::Index>(n);
    if (elements.empty())
        return Subspace::full(field, n);
    Matrix stacked(ni * static_cast<Eigen::Index>(elements.size()), ni);
    for (std::size_t k = 0; k < elements.size(); ++k)
        stacked.middleRows(static_cast<Eigen::Index>(k) * ni, ni) = elements[k] - identity_matrix(ni);
    Matrix kernel = nullspace_mod(stacked, field);
    return Subspace(field, n, kernel);
}

Subspace fixed_subspace(const SubgroupHandle& s)
{
    return fixed_subspace(s.parent()->field(), s.parent()->n(), s.element_matrices());
}

SubgroupHandle pointwise_stabilizer(const GroupPtr& g, const Subspace& u)
{
    if (u.ambient() != g->n())
        throw StructuralError("subspace ambient dimension does not match the group");
    std::vector<std::size_t> members;
    const Matrix ut = u.basis().transpose();
    for (std::size_t i = 0; i < g->order(); ++i)
        if (u.dim() == 0 || mul_mod(g->element(i), ut, g->field()) == ut)
            members.push_back(i);
    return SubgroupHandle(g, std::move(members));
}

std::int64_t gaussian_binomial(std::int64_t p, std::size_t n, std::size_t s)
{
    if (s > n)
        return 0;
    // Product formula with exact integer division at every step.
    std::int64_t num = 1;
    const std::int64_t big = std::numeric_limits<std::int64_t>::max();
    auto pw = [p, big](std::size_t e) {
        std::int64_t r = 1;
        for (std::size_t i = 0; i < e; ++i) {
            if (r > big / p)
                return big;
            r *= p;
        }
        return r;
    };
    for (std::size_t i = 0; i < s; ++i) {
        const std::int64_t a = pw(n - i) - 1;
        const std::int64_t b = pw(i + 1) - 1;
        if (a == big - 1 || num > big / a)
            return big;
        num = num * a / b;
    }
    return num;
}

namespace {

void enumerate_rref(const FieldPrime& field, std::size_t n, std::size_t s, std::vector<std::size_t>& pivots,
                    std::size_t next_col, std::vector<Subspace>& out)
{
    if (pivots.size() == s) {
        // Free positions: (row r, col c) with c > pivots[r] and c not a pivot column.
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t r = 0; r < s; ++r)
            for (std::size_t c = pivots[r] + 1; c < n; ++c)
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
                    free.emplace_back(r, c);
        std::vector<Coeff> digits(free.size(), 0);
        while (true) {
            Matrix m = Matrix::Zero(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(n));
            for (std::size_t r = 0; r < s; ++r)
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(pivots[r])) = 1;
            for (std::size_t k = 0; k < free.size(); ++k)
                m(static_cast<Eigen::Index>(free[k].first), static_cast<Eigen::Index>(free[k].second)) = digits[k];
            out.emplace_back(field, n, m);
            std::size_t k = 0;
            while (k < free.size() && ++digits[k] == field.p())
                digits[k++] = 0;
            if (k == free.size())
                return;
        }
    }
    for (std::size_t c = next_col; c + (s - pivots.size()) <= n; ++c) {
        pivots.push_back(c);
        enumerate_rref(field, n, s, pivots, c + 1, out);
        pivots.pop_back();
    }
}

}  // namespace

std::vector<Subspace> subspaces_of_dim(FieldPrime field, std::size_t n, std::size_t s, std::size_t cap)
{
    if (s > n)
        throw PreconditionError("subspace dimension " + std::to_string(s) + " exceeds ambient dimension " +
                                std::to_string(n));
    const auto count = gaussian_binomial(field.p(), n, s);
    if (count > static_cast<std::int64_t>(cap))
        throw CapacityError("there are " + std::to_string(count) + " subspaces of dimension " + std::to_string(s) +
                            " in F_" + std::to_string(field.p()) + "^" + std::to_string(n) + ", above the cap of " +
                            std::to_string(cap));
    std::vector<Subspace> out;
    out.reserve(static_cast<std::size_t>(count));
    if (s == 0) {
        out.push_back(Subspace::zero(field, n));
        return out;
    }
    std::vector<std::size_t> pivots;
    enumerate_rref(field, n, s, pivots, 0, out);
    return out;
}

std::vector<Subspace> subspaces_within(const Subspace& w, std::size_t cap)
{
    std::vector<Subspace> out;
    const std::size_t k = w.dim();
    for (std::size_t s = 0; s <= k; ++s) {
        for (const auto& coords : subspaces_of_dim(w.field(), k, s, cap)) {
            if (out.size() >= cap)
                throw CapacityError("subspace lattice exceeds the cap of " + std::to_string(cap));
            if (s == 0)
                out.push_back(Subspace::zero(w.field(), w.ambient()));
            else
                out.emplace_back(w.field(), w.ambient(), mul_mod(coords.basis(), w.basis(), w.field()));
        }
    }
    return out;
}

Polynomial act_on_polynomial(const Matrix& g, const Polynomial& f)
{
    if (static_cast<std::size_t>(g.rows()) != f.nvars() || g.rows() != g.cols())
        throw StructuralError("group element of size " + std::to_string(g.rows()) + " cannot act on a polynomial in " +
                              std::to_string(f.nvars()) + " variables");
    return apply_linear_substitution(f, inverse_mod(g, f.field()));
}

bool is_invariant(const Polynomial& f, const std::vector<Matrix>& generators)
{
    return std::all_of(generators.begin(), generators.end(),
                       [&f](const Matrix& g) { return act_on_polynomial(g, f) == f; });
}

}  // namespace modinv
