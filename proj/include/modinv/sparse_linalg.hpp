#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "modinv/field.hpp"

namespace modinv {

struct SparseEntry {
    std::uint32_t idx;
    Coeff val;
    bool operator==(const SparseEntry&) const = default;
};

/// Sparse vector over F_p: entries sorted by index, no zero values.
using SparseVec = std::vector<SparseEntry>;

/// v + c * w.
SparseVec axpy(const SparseVec& v, Coeff c, const SparseVec& w, const FieldPrime& f);

SparseVec scale(const SparseVec& v, Coeff c, const FieldPrime& f);

/// Incrementally built echelon basis of a subspace of F_p^ambient.
///
/// Every stored row has its pivot (smallest index) normalized to 1 and no two rows share a
/// pivot. Rows are only semi-reduced until `reduced_rows()` is called.
class EchelonBasis {
public:
    EchelonBasis(std::size_t ambient, FieldPrime field);

    std::size_t ambient() const { return ambient_; }
    std::size_t rank() const { return rows_.size(); }
    const FieldPrime& field() const { return field_; }

    SparseVec reduce(SparseVec v) const;
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    /// Returns true when `v` enlarged the span.
    bool insert(SparseVec v);

    /// The unique reduced row echelon basis, ordered by pivot.
    std::vector<SparseVec> reduced_rows() const;

private:
    std::size_t ambient_;
    FieldPrime field_;
    std::vector<SparseVec> rows_;
    std::vector<std::int32_t> pivot_row_;
};

/// Echelon basis that remembers, for each row, which combination of inserted vectors produced it.
/// Inserting a dependent vector yields a kernel relation among the inputs.
class TrackedEchelon {
public:
    TrackedEchelon(std::size_t ambient, FieldPrime field);

    /// Inserts v with label vector `combo` (usually the unit vector of the input's position).
    /// Returns the relation when v reduces to zero, else nullopt.
    std::optional<SparseVec> insert(SparseVec v, SparseVec combo);

    std::size_t rank() const { return rows_.size(); }

private:
    std::size_t ambient_;
    FieldPrime field_;
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> combos_;
    std::vector<std::int32_t> pivot_row_;
};

/// Basis (RREF rows) of the kernel of the map sending unit vector k to images[k].
std::vector<SparseVec> kernel_of_images(const std::vector<SparseVec>& images, std::size_t target_dim,
                                        const FieldPrime& f);

/// Dimension of the span of `vectors`.
std::size_t span_rank(const std::vector<SparseVec>& vectors, std::size_t ambient, const FieldPrime& f);

/// Returns sum_k coeffs[k] * vectors[k] for a sparse coefficient vector.
SparseVec combine(const SparseVec& coeffs, const std::vector<SparseVec>& vectors, const FieldPrime& f);

}  // namespace modinv
