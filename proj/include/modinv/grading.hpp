#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "modinv/polynomial.hpp"
#include "modinv/sparse_linalg.hpp"

namespace modinv {

using Multidegree = std::vector<int>;

int total_degree(const Multidegree& a);
Multidegree operator+(const Multidegree& a, const Multidegree& b);
/// Componentwise a - b; nullopt if any component goes negative.
std::optional<Multidegree> subtract(const Multidegree& a, const Multidegree& b);

/// A partition of the variables into blocks. F[V] is N^blocks-graded by the degree in each block.
///
/// The single-block grading is the ordinary total degree. A group whose generators are
/// block diagonal for a partition preserves the finer grading, and so does its invariant ring.
class Grading {
public:
    static Grading total(std::size_t n);
    /// block_of[i] is the block of variable i; blocks are numbered 0..k-1 in order of first use.
    explicit Grading(std::vector<int> block_of);

    std::size_t nvars() const { return block_of_.size(); }
    int blocks() const { return blocks_; }
    int block_of(std::size_t var) const { return block_of_[var]; }
    const std::vector<int>& block_map() const { return block_of_; }

    Multidegree multidegree(const Monomial& m) const;
    /// Multidegree of a nonzero polynomial homogeneous for this grading; nullopt otherwise.
    std::optional<Multidegree> homogeneous_degree(const Polynomial& f) const;
    /// All multidegrees of total degree t, in lex-descending order.
    std::vector<Multidegree> multidegrees_of_total(int t) const;
    /// Block sizes.
    std::vector<std::size_t> block_sizes() const;

    bool operator==(const Grading&) const = default;

private:
    std::vector<int> block_of_;
    int blocks_ = 0;
};

/// The monomials of one multidegree, lex-largest first, with reverse lookup.
class PieceIndex {
public:
    PieceIndex(const Grading& grading, Multidegree alpha);

    const Multidegree& multidegree() const { return alpha_; }
    std::size_t size() const { return monomials_.size(); }
    const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    std::optional<std::uint32_t> find(const Monomial& m) const;

private:
    Multidegree alpha_;
    std::vector<Monomial> monomials_;
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> index_;
};

/// Number of monomials of multidegree alpha (product of block binomials).
std::int64_t piece_dimension(const Grading& g, const Multidegree& alpha);

/// Coordinates for the graded pieces of F[V], created on demand and cached.
/// Not thread-safe: concurrent callers must synchronize piece creation.
class MonomialSpace {
public:
    MonomialSpace(Grading grading, FieldPrime field, std::size_t piece_cap);

    const Grading& grading() const { return grading_; }
    const FieldPrime& field() const { return field_; }
    std::size_t nvars() const { return grading_.nvars(); }

    /// Throws CapacityError when the piece exceeds the configured cap.
    const PieceIndex& piece(const Multidegree& alpha) const;

    /// Coordinates of f in the piece alpha. Throws StructuralError if f has a term outside it.
    SparseVec to_vector(const Polynomial& f, const Multidegree& alpha) const;
    Polynomial to_polynomial(const SparseVec& v, const Multidegree& alpha) const;

private:
    Grading grading_;
    FieldPrime field_;
    std::size_t cap_;
    mutable std::map<Multidegree, std::unique_ptr<PieceIndex>> pieces_;
};

}  // namespace modinv
