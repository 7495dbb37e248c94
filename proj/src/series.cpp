#include "vac/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vac {

namespace {
// Sentinel for "unbounded" validity edges; large enough that window
// arithmetic never overflows, small enough to add safely.
constexpr int kUnb = 1 << 20;

int hi_x_eff(const VecSeries2& s) { return s.exact ? kUnb : s.high_x; }
int hi_z_eff(const VecSeries2& s) { return s.exact ? kUnb : s.high_z; }
int lo_x_eff(const VecSeries2& s) { return s.exact ? -kUnb : s.low_x; }
int lo_z_eff(const VecSeries2& s) { return s.exact ? -kUnb : s.low_z; }
} // namespace

std::string Window::str() const
{
    std::ostringstream os;
    os << "x:[" << low_x << ".." << high_x << "] z:[" << low_z << ".." << high_z << "]";
    return os.str();
}

// ---------------- VecSeries1 ----------------

VecSeries1 VecSeries1::zero(int dim, int trunc)
{
    VecSeries1 s;
    s.dim = dim;
    s.low = 0;
    s.trunc = trunc;
    s.exact = true;
    return s;
}

VecSeries1 VecSeries1::constant(const QVec& v) { return monomial(v, 0); }

VecSeries1 VecSeries1::monomial(const QVec& v, int k)
{
    VecSeries1 s;
    s.dim = static_cast<int>(v.size());
    s.low = std::min(k, 0);
    s.trunc = std::max(k, 0);
    s.exact = true;
    s.set(k, v);
    return s;
}

const QVec VecSeries1::coeff(int k) const
{
    auto it = coeffs.find(k);
    if (it != coeffs.end())
        return it->second;
    return zero_vec(dim);
}

void VecSeries1::set(int k, QVec v)
{
    if (is_zero(v))
        coeffs.erase(k);
    else
        coeffs[k] = std::move(v);
}

bool VecSeries1::is_zero_on_known() const
{
    for (const auto& [k, v] : coeffs)
        if (known(k) && !is_zero(v))
            return false;
    return true;
}

int VecSeries1::max_stored() const
{
    if (coeffs.empty())
        return low - 1;
    return coeffs.rbegin()->first;
}

VecSeries1 VecSeries1::operator+(const VecSeries1& o) const
{
    VecSeries1 r;
    r.dim = dim;
    r.exact = exact && o.exact;
    r.low = std::min(low, o.low);
    int hi = std::min(exact ? kUnb : trunc, o.exact ? kUnb : o.trunc);
    r.trunc = r.exact ? std::max(max_stored(), o.max_stored()) : hi;
    for (const auto& [k, v] : coeffs)
        if (r.exact || (k >= r.low && k <= r.trunc))
            r.set(k, add(r.coeff(k), v));
    for (const auto& [k, v] : o.coeffs)
        if (r.exact || (k >= r.low && k <= r.trunc))
            r.set(k, add(r.coeff(k), v));
    return r;
}

VecSeries1 VecSeries1::operator-(const VecSeries1& o) const { return *this + o.scaled(-1); }

VecSeries1 VecSeries1::scaled(const Rational& c) const
{
    VecSeries1 r = *this;
    if (c == 0) {
        r.coeffs.clear();
        return r;
    }
    for (auto& [k, v] : r.coeffs)
        v = scale(v, c);
    return r;
}

VecSeries1 VecSeries1::shifted(int m) const
{
    VecSeries1 r;
    r.dim = dim;
    r.exact = exact;
    r.low = low + m;
    r.trunc = trunc + m;
    for (const auto& [k, v] : coeffs)
        r.coeffs[k + m] = v;
    return r;
}

VecSeries1 VecSeries1::negated_var() const
{
    VecSeries1 r = *this;
    for (auto& [k, v] : r.coeffs)
        if (k % 2 != 0)
            v = scale(v, -1);
    return r;
}

VecSeries1 VecSeries1::mapped(const QMatrix& A) const
{
    VecSeries1 r;
    r.dim = A.rows;
    r.exact = exact;
    r.low = low;
    r.trunc = trunc;
    for (const auto& [k, v] : coeffs)
        r.set(k, A.apply(v));
    return r;
}

std::string VecSeries1::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : coeffs) {
        if (!first)
            os << " + ";
        os << vec_str(v);
        if (k != 0)
            os << " z^" << k;
        first = false;
    }
    if (first)
        os << "0";
    if (!exact)
        os << "  [valid z<=" << trunc << "]";
    return os.str();
}

VecSeries1 ddz(const VecSeries1& f)
{
    VecSeries1 r;
    r.dim = f.dim;
    r.exact = f.exact;
    r.low = f.low - 1;
    r.trunc = f.trunc - 1;
    for (const auto& [k, v] : f.coeffs)
        if (k != 0)
            r.set(k - 1, scale(v, k));
    return r;
}

VecSeries1 apply_exp(const QMatrix& T, const QVec& v, int trunc)
{
    VecSeries1 r;
    r.dim = static_cast<int>(v.size());
    r.low = 0;
    QVec term = v; // T^k v / k!
    bool terminated = false;
    for (int k = 0; k <= trunc; ++k) {
        if (is_zero(term)) {
            terminated = true;
            break;
        }
        r.set(k, term);
        term = T.apply(term);
        term = scale(term, Rational(1, k + 1));
    }
    if (!terminated && is_zero(term))
        terminated = true;
    r.exact = terminated;
    r.trunc = terminated ? std::max(r.max_stored(), 0) : trunc;
    return r;
}

VecSeries1 apply_exp_series(const QMatrix& T, const VecSeries1& s, int trunc)
{
    bool nil = nilpotency_index(T).has_value();
    VecSeries1 r;
    r.dim = s.dim;
    r.low = s.low;
    r.exact = s.exact && nil;
    int hi = s.exact ? (r.exact ? s.max_stored() + (nil ? *nilpotency_index(T) - 1 : 0) : trunc)
                     : s.trunc;
    r.trunc = hi;
    // coefficient m = sum_j (T^j / j!) s_{m-j}
    std::vector<QMatrix> pows; // T^j / j!
    pows.push_back(QMatrix::identity(T.rows));
    for (const auto& [k, v] : s.coeffs) {
        QVec term = v;
        for (int j = 0; k + j <= hi; ++j) {
            if (is_zero(term))
                break;
            r.set(k + j, add(r.coeff(k + j), term));
            term = T.apply(term);
            term = scale(term, Rational(1, j + 1));
        }
    }
    return r;
}

// ---------------- VecSeries2 ----------------

VecSeries2 VecSeries2::zero(int dim)
{
    VecSeries2 s;
    s.dim = dim;
    s.exact = true;
    return s;
}

const QVec VecSeries2::coeff(int i, int j) const
{
    auto it = coeffs.find({i, j});
    if (it != coeffs.end())
        return it->second;
    return zero_vec(dim);
}

void VecSeries2::set(int i, int j, QVec v)
{
    if (is_zero(v))
        coeffs.erase({i, j});
    else
        coeffs[{i, j}] = std::move(v);
}

VecSeries2 VecSeries2::operator+(const VecSeries2& o) const
{
    VecSeries2 r;
    r.dim = dim;
    r.exact = exact && o.exact;
    r.low_x = std::max(lo_x_eff(*this), lo_x_eff(o));
    r.low_z = std::max(lo_z_eff(*this), lo_z_eff(o));
    r.high_x = std::min(hi_x_eff(*this), hi_x_eff(o));
    r.high_z = std::min(hi_z_eff(*this), hi_z_eff(o));
    auto inside = [&](int i, int j) {
        return r.exact || (i >= r.low_x && i <= r.high_x && j >= r.low_z && j <= r.high_z);
    };
    for (const auto& [key, v] : coeffs)
        if (inside(key.first, key.second))
            r.set(key.first, key.second, add(r.coeff(key.first, key.second), v));
    for (const auto& [key, v] : o.coeffs)
        if (inside(key.first, key.second))
            r.set(key.first, key.second, add(r.coeff(key.first, key.second), v));
    return r;
}

VecSeries2 VecSeries2::operator-(const VecSeries2& o) const { return *this + o.scaled(-1); }

VecSeries2 VecSeries2::scaled(const Rational& c) const
{
    VecSeries2 r = *this;
    if (c == 0) {
        r.coeffs.clear();
        return r;
    }
    for (auto& [k, v] : r.coeffs)
        v = scale(v, c);
    return r;
}

VecSeries2 VecSeries2::shifted(int di, int dj) const
{
    VecSeries2 r;
    r.dim = dim;
    r.exact = exact;
    r.low_x = low_x + di;
    r.low_z = low_z + dj;
    r.high_x = high_x + di;
    r.high_z = high_z + dj;
    for (const auto& [k, v] : coeffs)
        r.coeffs[{k.first + di, k.second + dj}] = v;
    return r;
}

VecSeries2 VecSeries2::mapped(const QMatrix& A) const
{
    VecSeries2 r;
    r.dim = A.rows;
    r.exact = exact;
    r.low_x = low_x;
    r.low_z = low_z;
    r.high_x = high_x;
    r.high_z = high_z;
    for (const auto& [k, v] : coeffs)
        r.set(k.first, k.second, A.apply(v));
    return r;
}

VecSeries2 VecSeries2::transposed() const
{
    VecSeries2 r;
    r.dim = dim;
    r.exact = exact;
    r.low_x = low_z;
    r.high_x = high_z;
    r.low_z = low_x;
    r.high_z = high_x;
    for (const auto& [k, v] : coeffs)
        r.coeffs[{k.second, k.first}] = v;
    return r;
}

std::string VecSeries2::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : coeffs) {
        if (!first)
            os << " + ";
        if (dim == 1)
            os << rat_str(v[0]);
        else
            os << vec_str(v);
        if (k.first != 0)
            os << " x^" << k.first;
        if (k.second != 0)
            os << " z^" << k.second;
        first = false;
    }
    if (first)
        os << "0";
    if (!exact)
        os << "  [valid on " << Window{low_x, high_x, low_z, high_z}.str() << "]";
    return os.str();
}

VecSeries2 lift_x(const VecSeries1& f)
{
    VecSeries2 r;
    r.dim = f.dim;
    r.exact = f.exact;
    r.low_x = f.low;
    r.high_x = f.trunc;
    r.low_z = -kUnb;
    r.high_z = kUnb;
    for (const auto& [k, v] : f.coeffs)
        r.coeffs[{k, 0}] = v;
    return r;
}

VecSeries2 lift_z(const VecSeries1& f)
{
    VecSeries2 r;
    r.dim = f.dim;
    r.exact = f.exact;
    r.low_z = f.low;
    r.high_z = f.trunc;
    r.low_x = -kUnb;
    r.high_x = kUnb;
    for (const auto& [k, v] : f.coeffs)
        r.coeffs[{0, k}] = v;
    return r;
}

VecSeries2 mul_scalar2(const VecSeries2& s, const VecSeries2& f)
{
    if (s.dim != 1)
        throw std::invalid_argument("mul_scalar2: multiplier must be scalar-valued");
    if (!s.exact)
        throw std::invalid_argument("mul_scalar2: multiplier must be exact (finite support)");
    VecSeries2 r;
    r.dim = f.dim;
    if (s.coeffs.empty())
        return VecSeries2::zero(f.dim);
    int a_min = kUnb, a_max = -kUnb, b_min = kUnb, b_max = -kUnb;
    for (const auto& [k, v] : s.coeffs) {
        a_min = std::min(a_min, k.first);
        a_max = std::max(a_max, k.first);
        b_min = std::min(b_min, k.second);
        b_max = std::max(b_max, k.second);
    }
    r.exact = f.exact;
    // the product at (i,j) needs f at (i-a, j-b) for every support point of s
    r.low_x = lo_x_eff(f) + a_max;
    r.high_x = hi_x_eff(f) + a_min;
    r.low_z = lo_z_eff(f) + b_max;
    r.high_z = hi_z_eff(f) + b_min;
    for (const auto& [ks, c] : s.coeffs)
        for (const auto& [kf, v] : f.coeffs) {
            int i = ks.first + kf.first, j = ks.second + kf.second;
            if (!r.exact && (i < r.low_x || i > r.high_x || j < r.low_z || j > r.high_z))
                continue;
            r.set(i, j, add(r.coeff(i, j), scale(v, c[0])));
        }
    return r;
}

VecSeries2 expand_binomial(int n, const Window& w, bool swap_major)
{
    VecSeries2 r;
    r.dim = 1;
    if (n >= 0) {
        r.exact = true;
        for (int k = 0; k <= n; ++k) {
            QVec c{binom(n, k)};
            if (swap_major)
                r.set(k, n - k, c); // x^k z^{n-k}
            else
                r.set(n - k, k, c); // x^{n-k} z^k
        }
        return r;
    }
    r.exact = false;
    // minor-variable exponent k runs over [0, bound]; the major exponent n-k
    // walks down without bound, so the window caps the expansion.
    int kmax = swap_major ? w.high_x : w.high_z;
    if (kmax < 0)
        throw std::runtime_error("expand_binomial: window admits no coefficient");
    for (int k = 0; k <= kmax; ++k) {
        QVec c{binom(n, k)};
        if (swap_major)
            r.set(k, n - k, c);
        else
            r.set(n - k, k, c);
    }
    if (swap_major) {
        r.low_x = 0;
        r.high_x = kmax;
        r.low_z = n - kmax;
        r.high_z = kUnb;
    } else {
        r.low_z = 0;
        r.high_z = kmax;
        r.low_x = n - kmax;
        r.high_x = kUnb;
    }
    return r;
}

VecSeries2 substitute_shift(const VecSeries1& f, const Window& w, bool swap_major)
{
    // f(x+z): coefficient at x^i z^j is binom(i+j, j) f_{i+j} (j >= 0).
    // Swapped, f(z+x): coefficient at x^i z^j is binom(i+j, i) (i >= 0).
    VecSeries2 r;
    r.dim = f.dim;
    if (f.exact && f.low >= 0) {
        r.exact = true;
        for (const auto& [k, v] : f.coeffs)
            for (int m = 0; m <= k; ++m) {
                QVec term = scale(v, binom(k, m));
                if (swap_major)
                    r.set(m, k - m, add(r.coeff(m, k - m), term));
                else
                    r.set(k - m, m, add(r.coeff(k - m, m), term));
            }
        return r;
    }
    r.exact = false;
    r.low_x = w.low_x;
    r.high_x = w.high_x;
    r.low_z = w.low_z;
    r.high_z = w.high_z;
    if (!f.exact) {
        // diagonal cut i + j <= f.trunc; clip the rectangle to honor it
        if (swap_major)
            r.high_x = std::min(r.high_x, f.trunc - r.low_z);
        else
            r.high_z = std::min(r.high_z, f.trunc - r.low_x);
    }
    if (r.high_x < r.low_x || r.high_z < r.low_z)
        throw std::runtime_error("substitute_shift: empty window");
    for (int i = r.low_x; i <= r.high_x; ++i)
        for (int j = r.low_z; j <= r.high_z; ++j) {
            int minor = swap_major ? i : j;
            if (minor < 0)
                continue;
            int k = i + j;
            if (!f.known(k))
                continue; // below f.low: coefficient is zero, nothing to add
            QVec v = f.coeff(k);
            if (is_zero(v))
                continue;
            r.set(i, j, scale(v, binom(k, minor)));
        }
    return r;
}

// ---------------- equality ----------------

EqResult series2_equal(const VecSeries2& a, const VecSeries2& b, const Window& w)
{
    EqResult res;
    res.exact = a.exact && b.exact;
    if (res.exact) {
        res.window = w;
        res.equal = true;
        // complete maps: compare the union of supports
        auto check = [&](const VecSeries2& p, const VecSeries2& q) {
            for (const auto& [k, v] : p.coeffs) {
                QVec u = q.coeff(k.first, k.second);
                for (int c = 0; c < p.dim; ++c)
                    if (v[static_cast<size_t>(c)] != u[static_cast<size_t>(c)]) {
                        if (res.equal) {
                            res.equal = false;
                            res.mismatch = SeriesMismatch{k.first, k.second, c,
                                                          v[static_cast<size_t>(c)],
                                                          u[static_cast<size_t>(c)]};
                        }
                        return;
                    }
            }
        };
        check(a, b);
        if (res.equal)
            check(b, a);
        if (res.mismatch) {
            // normalize to (lhs from a, rhs from b)
            auto& m = *res.mismatch;
            m.lhs = a.coeff(m.i, m.j)[static_cast<size_t>(m.coord)];
            m.rhs = b.coeff(m.i, m.j)[static_cast<size_t>(m.coord)];
        }
        return res;
    }
    Window cw{std::max({w.low_x, lo_x_eff(a), lo_x_eff(b)}),
              std::min({w.high_x, hi_x_eff(a), hi_x_eff(b)}),
              std::max({w.low_z, lo_z_eff(a), lo_z_eff(b)}),
              std::min({w.high_z, hi_z_eff(a), hi_z_eff(b)})};
    res.window = cw;
    if (cw.empty()) {
        res.window_empty = true;
        return res;
    }
    res.equal = true;
    for (int i = cw.low_x; i <= cw.high_x; ++i)
        for (int j = cw.low_z; j <= cw.high_z; ++j) {
            QVec va = a.coeff(i, j), vb = b.coeff(i, j);
            for (int c = 0; c < a.dim; ++c)
                if (va[static_cast<size_t>(c)] != vb[static_cast<size_t>(c)]) {
                    res.equal = false;
                    res.mismatch = SeriesMismatch{i, j, c, va[static_cast<size_t>(c)],
                                                  vb[static_cast<size_t>(c)]};
                    return res;
                }
        }
    return res;
}

EqResult series1_equal(const VecSeries1& a, const VecSeries1& b, int low, int high)
{
    return series2_equal(lift_z(a), lift_z(b), Window{0, 0, low, high});
}

} // namespace vac
