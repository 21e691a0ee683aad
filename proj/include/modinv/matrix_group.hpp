#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "modinv/field.hpp"
#include "modinv/grading.hpp"
#include "modinv/polynomial.hpp"

namespace modinv {

/// Default cap on enumerated group orders; well above |GL_2(F_7)| = 2016.
inline constexpr std::size_t kDefaultOrderCap = 20736;
inline constexpr std::size_t kDefaultSubspaceCap = 100000;

struct FlatHash {
    std::size_t operator()(const std::vector<std::uint16_t>& v) const;
};

/// A finite subgroup of GL_n(F_p) with its full element list.
///
/// Elements are listed in breadth-first order from the identity, applying the generators
/// (sorted by their row-major entries) on the left.
class MatrixGroup {
public:
    /// Throws StructuralError for a singular or misshapen generator, CapacityError past `order_cap`.
    static std::shared_ptr<const MatrixGroup> enumerate(FieldPrime field, std::size_t n, std::vector<Matrix> generators,
                                                        std::size_t order_cap = kDefaultOrderCap);

    const FieldPrime& field() const { return field_; }
    std::size_t n() const { return n_; }
    const std::vector<Matrix>& generators() const { return generators_; }
    const std::vector<Matrix>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }
    const Matrix& element(std::size_t i) const { return elements_[i]; }

    std::optional<std::size_t> index_of(const Matrix& g) const;
    std::size_t product_index(std::size_t a, std::size_t b) const;
    std::size_t inverse_index(std::size_t a) const;

    /// Finest partition of the coordinates into blocks preserved by every generator.
    Grading stable_grading() const;

private:
    MatrixGroup() : field_(2) {}
    FieldPrime field_;
    std::size_t n_ = 0;
    std::vector<Matrix> generators_;
    std::vector<Matrix> elements_;
    std::unordered_map<std::vector<std::uint16_t>, std::size_t, FlatHash> index_;
};

using GroupPtr = std::shared_ptr<const MatrixGroup>;

/// A subgroup of an enumerated group, as a sorted list of element indices.
class SubgroupHandle {
public:
    /// `members` must already be closed under products; see `subgroup_closure`.
    SubgroupHandle(GroupPtr parent, std::vector<std::size_t> members);

    const GroupPtr& parent() const { return parent_; }
    const std::vector<std::size_t>& members() const { return members_; }
    std::size_t order() const { return members_.size(); }
    bool contains(std::size_t element_index) const;
    std::vector<Matrix> element_matrices() const;
    /// A small generating set, chosen greedily in element order.
    std::vector<Matrix> generating_set() const;
    /// The subgroup as a stand-alone enumerated group.
    GroupPtr as_group() const;

private:
    GroupPtr parent_;
    std::vector<std::size_t> members_;
};

/// Smallest subgroup of `parent` containing the given element indices.
SubgroupHandle subgroup_closure(const GroupPtr& parent, const std::vector<std::size_t>& seeds);

/// A subspace of F_p^n stored by its reduced row echelon basis, so equal subspaces compare equal.
class Subspace {
public:
    /// Rows of `spanning` span the subspace; they need not be independent.
    Subspace(FieldPrime field, std::size_t n, const Matrix& spanning);
    static Subspace zero(FieldPrime field, std::size_t n);
    static Subspace full(FieldPrime field, std::size_t n);

    const FieldPrime& field() const { return field_; }
    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(basis_.rows()); }
    /// dim x n matrix in RREF.
    const Matrix& basis() const { return basis_; }

    bool contains(const Vector& v) const;
    bool is_subspace_of(const Subspace& other) const;
    std::string to_string() const;

    bool operator==(const Subspace& o) const;

private:
    FieldPrime field_;
    std::size_t n_;
    Matrix basis_;
};

/// Largest p-power order subgroup, grown from a p-element of maximal order by adjoining normalizing
/// p-elements. Trivial when p does not divide |G|.
SubgroupHandle sylow_subgroup(const GroupPtr& g);

/// Intersection of ker(g - I) over the given matrices.
Subspace fixed_subspace(FieldPrime field, std::size_t n, const std::vector<Matrix>& elements);
Subspace fixed_subspace(const SubgroupHandle& s);

/// G_U: the elements fixing U pointwise.
SubgroupHandle pointwise_stabilizer(const GroupPtr& g, const Subspace& u);

/// Gaussian binomial [n choose s]_p, saturating.
std::int64_t gaussian_binomial(std::int64_t p, std::size_t n, std::size_t s);

/// All s-dimensional subspaces of F_p^n in a fixed order (pivot columns lexicographic, then
/// free entries counting up). Throws CapacityError when the count exceeds `cap`.
std::vector<Subspace> subspaces_of_dim(FieldPrime field, std::size_t n, std::size_t s,
                                       std::size_t cap = kDefaultSubspaceCap);

/// All subspaces of a given subspace W (every dimension 0..dim W), as subspaces of the ambient space.
std::vector<Subspace> subspaces_within(const Subspace& w, std::size_t cap = kDefaultSubspaceCap);

/// (g . f)(v) = f(g^{-1} v): substitution by the inverse matrix, a left action.
Polynomial act_on_polynomial(const Matrix& g, const Polynomial& f);

/// True iff every matrix fixes f.
bool is_invariant(const Polynomial& f, const std::vector<Matrix>& generators);

/// Largest power of p dividing m.
std::size_t p_part(std::size_t m, std::size_t p);

}  // namespace modinv
