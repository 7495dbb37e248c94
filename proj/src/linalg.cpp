#include "vac/linalg.hpp"

#include <stdexcept>

namespace vac {

QMatrix QMatrix::identity(int n)
{
    QMatrix I(n, n);
    for (int i = 0; i < n; ++i)
        I.at(i, i) = 1;
    return I;
}

QVec QMatrix::apply(const QVec& v) const
{
    QVec out = zero_vec(rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (data[i][static_cast<size_t>(j)] != 0)
                out[static_cast<size_t>(i)] += data[static_cast<size_t>(i)][static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
    return out;
}

QMatrix QMatrix::mul(const QMatrix& other) const
{
    QMatrix out(rows, other.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Rational& a = at(i, k);
            if (a == 0)
                continue;
            for (int j = 0; j < other.cols; ++j)
                out.at(i, j) += a * other.at(k, j);
        }
    return out;
}

QMatrix QMatrix::transposed() const
{
    QMatrix out(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            out.at(j, i) = at(i, j);
    return out;
}

bool QMatrix::is_zero_matrix() const
{
    for (const auto& row : data)
        if (!is_zero(row))
            return false;
    return true;
}

std::optional<int> nilpotency_index(const QMatrix& A)
{
    if (A.rows != A.cols)
        throw std::invalid_argument("nilpotency_index: square matrix required");
    if (A.is_zero_matrix())
        return 1;
    QMatrix P = A;
    // Cayley-Hamilton: a nilpotent n x n matrix satisfies A^n = 0.
    for (int p = 2; p <= A.rows; ++p) {
        P = P.mul(A);
        if (P.is_zero_matrix())
            return p;
    }
    return std::nullopt;
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
// Pivot rule: scan columns left to right, take the first row with a nonzero
// entry. Fixed rule keeps every downstream representative reproducible.
std::vector<int> rref(QMatrix& A)
{
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        int sel = -1;
        for (int i = r; i < A.rows; ++i)
            if (A.at(i, c) != 0) {
                sel = i;
                break;
            }
        if (sel < 0)
            continue;
        std::swap(A.data[static_cast<size_t>(sel)], A.data[static_cast<size_t>(r)]);
        Rational inv = Rational(1) / A.at(r, c);
        for (int j = c; j < A.cols; ++j)
            A.at(r, j) *= inv;
        for (int i = 0; i < A.rows; ++i) {
            if (i == r || A.at(i, c) == 0)
                continue;
            Rational f = A.at(i, c);
            for (int j = c; j < A.cols; ++j)
                A.at(i, j) -= f * A.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

QMatrix from_rows(const std::vector<QVec>& rows)
{
    QMatrix A(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    A.data = rows;
    return A;
}

} // namespace

int rank(const QMatrix& A)
{
    QMatrix B = A;
    return static_cast<int>(rref(B).size());
}

std::vector<QVec> kernel_basis(const QMatrix& A)
{
    QMatrix B = A;
    std::vector<int> pivots = rref(B);
    std::vector<bool> is_pivot(static_cast<size_t>(A.cols), false);
    for (int c : pivots)
        is_pivot[static_cast<size_t>(c)] = true;
    std::vector<QVec> basis;
    for (int c = 0; c < A.cols; ++c) {
        if (is_pivot[static_cast<size_t>(c)])
            continue;
        QVec v = zero_vec(A.cols);
        v[static_cast<size_t>(c)] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<size_t>(pivots[r])] = -B.at(static_cast<int>(r), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVec> solve(const QMatrix& A, const QVec& b)
{
    if (static_cast<int>(b.size()) != A.rows)
        throw std::invalid_argument("solve: rhs length mismatch");
    QMatrix aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j)
            aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[static_cast<size_t>(i)];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == A.cols)
        return std::nullopt; // row (0 ... 0 | 1): inconsistent
    QVec x = zero_vec(A.cols);
    for (size_t r = 0; r < pivots.size(); ++r)
        x[static_cast<size_t>(pivots[r])] = aug.at(static_cast<int>(r), A.cols);
    return x;
}

int span_dim(const std::vector<QVec>& vecs)
{
    if (vecs.empty())
        return 0;
    return rank(from_rows(vecs));
}

bool in_span(const std::vector<QVec>& basis, const QVec& v)
{
    if (is_zero(v))
        return true;
    if (basis.empty())
        return false;
    std::vector<QVec> rows = basis;
    int d0 = span_dim(rows);
    rows.push_back(v);
    return span_dim(rows) == d0;
}

int quotient_dim(const std::vector<QVec>& Z, const std::vector<QVec>& B)
{
    for (const auto& b : B)
        if (!in_span(Z, b))
            throw std::runtime_error("quotient_dim: coboundary not contained in cocycle space");
    return span_dim(Z) - span_dim(B);
}

std::vector<QVec> quotient_representatives(const std::vector<QVec>& Z, const std::vector<QVec>& B)
{
    std::vector<QVec> accepted = B;
    std::vector<QVec> reps;
    int cur = span_dim(accepted);
    for (const auto& z : Z) {
        accepted.push_back(z);
        int nxt = span_dim(accepted);
        if (nxt > cur) {
            reps.push_back(z);
            cur = nxt;
        } else {
            accepted.pop_back();
        }
    }
    return reps;
}

} // namespace vac
