#pragma once

#include "vac/linalg.hpp"
#include "vac/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace vac {

// Truncation bookkeeping for two-variable identities.
struct Window {
    int low_x = 0, high_x = 0, low_z = 0, high_z = 0;

    Window() = default;
    Window(int lx, int hx, int lz, int hz) : low_x(lx), high_x(hx), low_z(lz), high_z(hz) {}

    Window shrunk(int margin) const { return {low_x, high_x - margin, low_z, high_z - margin}; }
    bool empty() const { return high_x < low_x || high_z < low_z; }
    std::string str() const;
};

// Vector-valued truncated Laurent expansion in one variable.
//
// Coefficients at exponents < low are zero. Coefficients in [low, trunc] are
// known (absent map entries mean zero). Exponents > trunc are unknown unless
// `exact`, in which case the series is a genuine Laurent polynomial and every
// unstored coefficient is zero.
struct VecSeries1 {
    int dim = 0;
    std::map<int, QVec> coeffs;
    int low = 0;
    int trunc = 0;
    bool exact = true;

    static VecSeries1 zero(int dim, int trunc = 0);
    static VecSeries1 constant(const QVec& v);
    static VecSeries1 monomial(const QVec& v, int k);

    const QVec coeff(int k) const;     // zero vector when absent
    bool known(int k) const { return exact || k <= trunc; }
    void set(int k, QVec v);           // drops zero vectors
    bool is_zero_on_known() const;

    VecSeries1 operator+(const VecSeries1& o) const;
    VecSeries1 operator-(const VecSeries1& o) const;
    VecSeries1 scaled(const Rational& c) const;
    VecSeries1 shifted(int m) const;       // multiply by z^m
    VecSeries1 negated_var() const;        // z -> -z
    VecSeries1 mapped(const QMatrix& A) const; // A applied to every coefficient

    int max_stored() const; // low-1 when empty
    std::string str() const;
};

// d/dz: coefficient k of the output is (k+1) * coefficient (k+1) of the input.
VecSeries1 ddz(const VecSeries1& f);

// e^{zT} v = sum_k (T^k v / k!) z^k, computed to `trunc`; exact when T is
// nilpotent (the sum terminates on its own).
VecSeries1 apply_exp(const QMatrix& T, const QVec& v, int trunc);

// e^{zT} applied to a series: coefficient m of the output is
// sum_j (T^j / j!) * (coefficient m-j of s). Exact only when s is exact and
// T nilpotent; otherwise truncated at s.trunc (or `trunc` when s is exact).
VecSeries1 apply_exp_series(const QMatrix& T, const VecSeries1& s, int trunc);

// Two-variable expansion, coefficient of x^i z^j at key (i,j).
struct VecSeries2 {
    int dim = 0;
    std::map<std::pair<int, int>, QVec> coeffs;
    int low_x = 0, low_z = 0;
    int high_x = 0, high_z = 0; // validity bounds; ignored when exact
    bool exact = true;

    static VecSeries2 zero(int dim);

    const QVec coeff(int i, int j) const;
    void set(int i, int j, QVec v);
    bool known(int i, int j) const { return exact || (i <= high_x && j <= high_z); }

    VecSeries2 operator+(const VecSeries2& o) const;
    VecSeries2 operator-(const VecSeries2& o) const;
    VecSeries2 scaled(const Rational& c) const;
    VecSeries2 shifted(int di, int dj) const;
    VecSeries2 mapped(const QMatrix& A) const;
    VecSeries2 transposed() const; // swap the two variable axes

    std::string str() const;
};

// f(z) placed as a series in x (j = 0 throughout) or in z (i = 0).
VecSeries2 lift_x(const VecSeries1& f);
VecSeries2 lift_z(const VecSeries1& f);

// Product with a scalar-valued (dim 1) series, e.g. a binomial multiplier.
VecSeries2 mul_scalar2(const VecSeries2& s, const VecSeries2& f);

// (x+z)^n restricted to w. Nonnegative powers of z ("x major"); with
// swap_major, nonnegative powers of x instead (the z+x reading).
VecSeries2 expand_binomial(int n, const Window& w, bool swap_major = false);

// f(x+z): every z^k of f replaced by the binomial expansion of (x+z)^k.
// swap_major gives f(z+x), expanding with nonnegative powers of x.
// Throws std::runtime_error when the window admits no coefficient at all.
VecSeries2 substitute_shift(const VecSeries1& f, const Window& w, bool swap_major = false);

struct SeriesMismatch {
    int i = 0, j = 0, coord = 0;
    Rational lhs, rhs;
};

struct EqResult {
    bool equal = false;
    bool exact = false;        // decided on full support, not just a window
    Window window;             // region actually compared
    bool window_empty = false; // nothing was comparable
    std::optional<SeriesMismatch> mismatch;
};

// Compares on the intersection of w with both validity regions.
EqResult series2_equal(const VecSeries2& a, const VecSeries2& b, const Window& w);
EqResult series1_equal(const VecSeries1& a, const VecSeries1& b, int low, int high);

} // namespace vac
