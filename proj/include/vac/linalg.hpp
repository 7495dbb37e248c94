#pragma once

#include "vac/rational.hpp"

#include <optional>
#include <vector>

namespace vac {

// Dense exact matrix over Q. Row-major.
struct QMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<QVec> data; // rows entries, each of length cols

    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r), zero_vec(c)) {}

    Rational& at(int r, int c) { return data[static_cast<size_t>(r)][static_cast<size_t>(c)]; }
    const Rational& at(int r, int c) const { return data[static_cast<size_t>(r)][static_cast<size_t>(c)]; }

    static QMatrix identity(int n);
    static QMatrix zero(int n) { return QMatrix(n, n); }

    QVec apply(const QVec& v) const; // matrix * vector
    QMatrix mul(const QMatrix& other) const;
    QMatrix transposed() const;
    bool is_zero_matrix() const;

    friend bool operator==(const QMatrix& a, const QMatrix& b)
    {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
};

// Smallest p >= 1 with A^p = 0, or nullopt when A is not nilpotent.
std::optional<int> nilpotency_index(const QMatrix& A);

int rank(const QMatrix& A);

// Basis of { x : Ax = 0 }. Deterministic: reduced row echelon form with the
// first-nonzero pivot rule, free columns in increasing order, pivot of each
// basis vector normalized to 1.
std::vector<QVec> kernel_basis(const QMatrix& A);

// Any particular solution of Ax = b, or nullopt when inconsistent.
std::optional<QVec> solve(const QMatrix& A, const QVec& b);

int span_dim(const std::vector<QVec>& vecs);

// dim span(Z) - dim span(B); requires span(B) subset of span(Z).
// A containment violation means an upstream pipeline bug, so it throws.
int quotient_dim(const std::vector<QVec>& Z, const std::vector<QVec>& B);

// Representatives of span(Z) modulo span(B): vectors of Z reduced against an
// echelonized basis of B and of previously accepted representatives.
std::vector<QVec> quotient_representatives(const std::vector<QVec>& Z, const std::vector<QVec>& B);

// True when v lies in span(basis).
bool in_span(const std::vector<QVec>& basis, const QVec& v);

} // namespace vac
