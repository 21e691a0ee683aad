#include "modinv/field.hpp"

#include <string>
#include <utility>

namespace modinv {

bool is_prime(std::int64_t p)
{
    if (p < 2)
        return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

FieldPrime::FieldPrime(std::int64_t p)
{
    if (!is_prime(p))
        throw StructuralError("characteristic " + std::to_string(p) + " is not prime");
    if (p >= (1 << 16))
        throw UnsupportedError("characteristic " + std::to_string(p) + " exceeds the supported range p < 65536");
    p_ = static_cast<Coeff>(p);
}

Coeff FieldPrime::pow(Coeff a, std::uint64_t e) const
{
    Coeff result = 1 % p_;
    Coeff base = a % p_;
    while (e) {
        if (e & 1)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Coeff FieldPrime::inv(Coeff a) const
{
    if (a % p_ == 0)
        throw StructuralError("division by zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
}

Matrix reduce_mod(const Matrix& a, const FieldPrime& f)
{
    return a.unaryExpr([&f](std::int64_t x) { return static_cast<std::int64_t>(f.reduce(x)); });
}

Matrix mul_mod(const Matrix& a, const Matrix& b, const FieldPrime& f)
{
    if (a.cols() != b.rows())
        throw StructuralError("matrix product shape mismatch");
    return reduce_mod(a * b, f);
}

Matrix identity_matrix(Eigen::Index n)
{
    return Matrix::Identity(n, n);
}

namespace {

// In-place RREF; returns pivot columns.
std::vector<Eigen::Index> rref_in_place(Matrix& m, const FieldPrime& f)
{
    m = reduce_mod(m, f);
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index sel = -1;
        for (Eigen::Index r = row; r < m.rows(); ++r)
            if (m(r, col) != 0) {
                sel = r;
                break;
            }
        if (sel < 0)
            continue;
        m.row(sel).swap(m.row(row));
        const std::int64_t s = f.inv(static_cast<Coeff>(m(row, col)));
        m.row(row) = (m.row(row) * s).unaryExpr([&f](std::int64_t x) { return static_cast<std::int64_t>(f.reduce(x)); });
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0)
                continue;
            const std::int64_t c = m(r, col);
            m.row(r) = (m.row(r) - c * m.row(row)).unaryExpr([&f](std::int64_t x) { return static_cast<std::int64_t>(f.reduce(x)); });
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

Matrix rref_mod(const Matrix& a, const FieldPrime& f)
{
    Matrix m = a;
    auto pivots = rref_in_place(m, f);
    return m.topRows(static_cast<Eigen::Index>(pivots.size()));
}

Eigen::Index rank_mod(const Matrix& a, const FieldPrime& f)
{
    Matrix m = a;
    return static_cast<Eigen::Index>(rref_in_place(m, f).size());
}

Matrix inverse_mod(const Matrix& a, const FieldPrime& f)
{
    if (a.rows() != a.cols())
        throw StructuralError("inverse of a non-square matrix");
    const Eigen::Index n = a.rows();
    Matrix aug(n, 2 * n);
    aug << a, identity_matrix(n);
    auto pivots = rref_in_place(aug, f);
    if (static_cast<Eigen::Index>(pivots.size()) < n || pivots[n - 1] != n - 1)
        throw StructuralError("matrix is singular over F_" + std::to_string(f.p()));
    return aug.rightCols(n);
}

Matrix nullspace_mod(const Matrix& a, const FieldPrime& f)
{
    Matrix m = a;
    auto pivots = rref_in_place(m, f);
    const Eigen::Index n = a.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (auto c : pivots)
        is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<Vector> basis;
    for (Eigen::Index free = 0; free < n; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)])
            continue;
        Vector v = Vector::Zero(n);
        v(free) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v(pivots[r]) = f.neg(static_cast<Coeff>(m(static_cast<Eigen::Index>(r), free)));
        basis.push_back(std::move(v));
    }
    Matrix out(static_cast<Eigen::Index>(basis.size()), n);
    for (std::size_t i = 0; i < basis.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = basis[i].transpose();
    return rref_mod(out, f);
}

std::vector<std::uint16_t> flatten(const Matrix& a)
{
    std::vector<std::uint16_t> out;
    out.reserve(static_cast<std::size_t>(a.size()));
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.push_back(static_cast<std::uint16_t>(a(r, c)));
    return out;
}

}  // namespace modinv
