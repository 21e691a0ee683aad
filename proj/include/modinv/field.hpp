#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "modinv/error.hpp"

namespace modinv {

using Coeff = std::uint32_t;

/// Dense integer matrix; entries are kept as canonical residues by the mod-p helpers below.
using Matrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// The prime field F_p. Construction rejects composite moduli.
class FieldPrime {
public:
    explicit FieldPrime(std::int64_t p);

    Coeff p() const { return p_; }

    Coeff reduce(std::int64_t a) const
    {
        std::int64_t r = a % static_cast<std::int64_t>(p_);
        return static_cast<Coeff>(r < 0 ? r + p_ : r);
    }
    Coeff add(Coeff a, Coeff b) const
    {
        Coeff s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Coeff sub(Coeff a, Coeff b) const { return a >= b ? a - b : a + p_ - b; }
    Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
    Coeff mul(Coeff a, Coeff b) const
    {
        return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Coeff pow(Coeff a, std::uint64_t e) const;
    Coeff inv(Coeff a) const;

    bool operator==(const FieldPrime& o) const { return p_ == o.p_; }
    bool operator!=(const FieldPrime& o) const { return p_ != o.p_; }

private:
    Coeff p_;
};

bool is_prime(std::int64_t p);

/// Reduces every entry into [0, p).
Matrix reduce_mod(const Matrix& a, const FieldPrime& f);

/// Product reduced mod p.
Matrix mul_mod(const Matrix& a, const Matrix& b, const FieldPrime& f);

Matrix identity_matrix(Eigen::Index n);

/// Reduced row echelon form over F_p, zero rows dropped.
Matrix rref_mod(const Matrix& a, const FieldPrime& f);

Eigen::Index rank_mod(const Matrix& a, const FieldPrime& f);

/// Throws StructuralError when `a` is singular.
Matrix inverse_mod(const Matrix& a, const FieldPrime& f);

/// Basis of {v : a v = 0} as the rows of the returned matrix, in RREF.
Matrix nullspace_mod(const Matrix& a, const FieldPrime& f);

/// Row-major flattening, used for hashing and ordering group elements.
std::vector<std::uint16_t> flatten(const Matrix& a);

}  // namespace modinv
