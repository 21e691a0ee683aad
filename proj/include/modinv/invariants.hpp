#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "modinv/grading.hpp"
#include "modinv/matrix_group.hpp"
#include "modinv/polynomial.hpp"
#include "modinv/sparse_linalg.hpp"

namespace modinv {

inline constexpr std::size_t kDefaultPieceCap = 60000;
inline constexpr int kDefaultDegreeCap = 12;

using HilbertCoefficients = std::vector<std::int64_t>;

/// Degree-by-degree bases of F[V]^G.
///
/// Each graded piece (for the ring's grading, by default the finest block grading the group
/// preserves) holds the RREF basis of the invariant subspace in the piece's monomial coordinates.
/// The invariant subspace is the common kernel of (g^* - 1) over the generators only.
class InvariantRing {
public:
    explicit InvariantRing(GroupPtr group, std::size_t piece_cap = kDefaultPieceCap);
    /// `grading` must be preserved by the group (a coarsening of its stable grading).
    InvariantRing(GroupPtr group, Grading grading, std::size_t piece_cap = kDefaultPieceCap);

    const GroupPtr& group() const { return group_; }
    const MonomialSpace& space() const { return *space_; }
    const Grading& grading() const { return space_->grading(); }
    const FieldPrime& field() const { return space_->field(); }
    std::size_t nvars() const { return space_->nvars(); }
    std::size_t piece_cap() const { return cap_; }

    /// Highest total degree whose pieces are all computed; -1 before any computation.
    int computed_up_to() const { return computed_up_to_; }
    /// Computes every piece of total degree <= d.
    void compute_up_to(int d);

    /// RREF basis of the invariants of multidegree alpha. Throws CapacityError if not yet computed.
    const std::vector<SparseVec>& basis(const Multidegree& alpha) const;
    std::size_t dim(const Multidegree& alpha) const { return basis(alpha).size(); }
    /// Invariants of total degree d as polynomials, in RREF over the lex monomial basis.
    std::vector<Polynomial> basis_polynomials(int d) const;
    HilbertCoefficients hilbert(int up_to) const;

    /// Same ring, re-expressed in the total-degree grading without recomputation.
    InvariantRing coarsened() const;

    /// Computed pieces, for serialization.
    const std::map<Multidegree, std::vector<SparseVec>>& pieces() const { return pieces_; }
    /// Rebuilds a ring from serialized pieces; every piece up to `computed_up_to` must be present.
    static InvariantRing from_pieces(GroupPtr group, Grading grading, std::map<Multidegree, std::vector<SparseVec>> pieces,
                                     int computed_up_to, std::size_t piece_cap = kDefaultPieceCap);

    /// Throws CapacityError naming `needed` when pieces above computed_up_to would be required.
    void require_degree(int needed, const char* what) const;

private:
    void compute_piece(const Multidegree& alpha);
    const std::vector<SparseVec>& action_images(std::size_t gen, const Multidegree& alpha);

    GroupPtr group_;
    std::shared_ptr<MonomialSpace> space_;
    std::size_t cap_;
    int computed_up_to_ = -1;
    std::vector<Matrix> substitutions_;  // inverse generators
    std::map<Multidegree, std::vector<SparseVec>> pieces_;
    std::map<std::pair<std::size_t, Multidegree>, std::vector<SparseVec>> images_;
};

/// Basis of (F[V]^G)_d in RREF over the lex monomial basis.
std::vector<Polynomial> invariant_basis(const GroupPtr& g, int d, std::size_t piece_cap = kDefaultPieceCap);

HilbertCoefficients hilbert_coefficients(const GroupPtr& g, int max_degree, std::size_t piece_cap = kDefaultPieceCap);

struct Generator {
    int degree;
    Polynomial poly;
};

/// Algebra generators up to `max_degree`: per degree, basis elements not in the span of products
/// of earlier generators with invariants, chosen greedily in RREF order.
std::vector<Generator> minimal_generators(InvariantRing& ring, int max_degree);
std::vector<Generator> minimal_generators(const GroupPtr& g, int max_degree, std::size_t piece_cap = kDefaultPieceCap);

/// The n Dickson invariants of GL_n(F_p), ordered by the exponent index i = n-1, ..., 0
/// (degrees p^n - p^i ascending). Read off the orbit product prod_{v in V*} (X + v).
std::vector<Polynomial> dickson_invariants(FieldPrime field, std::size_t n, std::size_t max_factors = 4096);

/// Sum of g . f over a left transversal of H in G. Requires f to be H-invariant.
Polynomial transfer(const GroupPtr& g, const SubgroupHandle& h, const Polynomial& f);

/// Left coset representatives of H in its parent, in element order.
std::vector<std::size_t> left_transversal(const SubgroupHandle& h);

/// Hilbert coefficients of the subalgebra generated by the given homogeneous polynomials, by
/// spanning products degree by degree.
HilbertCoefficients subalgebra_hilbert(const std::vector<Polynomial>& gens, int max_degree,
                                       std::size_t piece_cap = kDefaultPieceCap);

}  // namespace modinv
