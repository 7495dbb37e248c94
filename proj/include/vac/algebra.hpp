#pragma once

#include "vac/series.hpp"

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace vac {

// Bilinear map given on basis pairs; also used for module action tables.
struct BilinearTable {
    int left_dim = 0, right_dim = 0, out_dim = 0;
    std::vector<std::vector<QVec>> e; // e[i][j], coordinates in the target

    static BilinearTable zero(int l, int r, int o);
    const QVec& entry(int i, int j) const
    {
        return e[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    QVec apply(const QVec& a, const QVec& b) const;
};

// Exact Laurent-polynomial structure: (i, j, k) -> coefficient of z^k in
// e_i product e_j. Unlisted coefficients are zero.
struct ExplicitTable {
    int left_dim = 0, right_dim = 0, out_dim = 0;
    std::map<std::tuple<int, int, int>, QVec> products;

    int max_pole() const; // largest -k over stored negative exponents, >= 0
    VecSeries1 series(const QVec& a, const QVec& b) const;
};

using StructureData = std::variant<BilinearTable, ExplicitTable>;

struct FiniteVertexAlgebra {
    int dim = 0;
    QVec vacuum;
    QMatrix D;
    StructureData structure;
    std::vector<std::string> basis_names;

    bool holomorphic() const { return std::holds_alternative<BilinearTable>(structure); }
    int max_pole() const;
    bool D_nilpotent() const { return nilpotency_index(D).has_value(); }
    QVec basis_vec(int i) const;
    std::string name(int i) const;
};

struct ModuleStructure {
    int dim = 0;
    QMatrix d;
    StructureData action; // left V-basis, right M-basis, valued in M
    std::vector<std::string> basis_names;

    bool holomorphic() const { return std::holds_alternative<BilinearTable>(action); }
    int max_pole() const;
    bool d_nilpotent() const { return nilpotency_index(d).has_value(); }
    QVec basis_vec(int i) const;
};

// The regular module M = V.
ModuleStructure regular_module(const FiniteVertexAlgebra& V);

int default_trunc(const FiniteVertexAlgebra& V, const ModuleStructure* M = nullptr);
Window default_window(const FiniteVertexAlgebra& V, const ModuleStructure* M = nullptr,
                      int l_max = -1);
int default_lmax(const FiniteVertexAlgebra& V);

// a_z b. Holomorphic preset: (e^{zD} a) . b; table: tabulated polynomial.
VecSeries1 zproduct(const FiniteVertexAlgebra& V, const QVec& a, const QVec& b, int trunc);

// a (.)_z u in M.
VecSeries1 module_action(const FiniteVertexAlgebra& V, const ModuleStructure& M, const QVec& a,
                         const QVec& u, int trunc);

// Right action m_z a = e^{zd}(a_{-z} m).
VecSeries1 right_action(const FiniteVertexAlgebra& V, const ModuleStructure& M, const QVec& m,
                        const QVec& a, int trunc);

// ---- checker reports ----

struct LocalityWitness {
    int exponent = 0;
    Window window;
    bool exact = true;
};

enum class Verdict { PassExact, PassTruncated, Fail };

struct CheckItem {
    std::string axiom;
    std::vector<int> indices;
    Verdict verdict = Verdict::Fail;
    std::optional<LocalityWitness> witness;
    std::optional<SeriesMismatch> mismatch;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckItem> items;
    bool passed() const;
    bool all_exact() const;
    std::string str(const std::vector<std::string>* names = nullptr) const;
};

// Unit, translation-derivation, commutativity on basis pairs; associativity
// with smallest multiplier exponent l <= l_max per basis triple.
CheckReport check_axioms(const FiniteVertexAlgebra& V, int l_max, const Window& w);

// The multiplier-free associator identity on basis triples.
CheckReport check_associator(const FiniteVertexAlgebra& V, const Window& w);

// Module axioms plus locality, witness search k <= l_max.
CheckReport check_module(const FiniteVertexAlgebra& V, const ModuleStructure& M, int l_max,
                         const Window& w);

// Structural table scans used by the parse pipeline: unital, commutative,
// associative multiplication; D a derivation with D(vacuum) = 0. Returns
// human-readable diagnostics, empty when sound.
std::vector<std::string> validate_structure(const FiniteVertexAlgebra& V);
std::vector<std::string> validate_module_structure(const FiniteVertexAlgebra& V,
                                                   const ModuleStructure& M);

// CheckItem from a plain equality comparison.
CheckItem item_from_eq(std::string axiom, std::vector<int> idx, const EqResult& eq);

// Shared multiplier-witness search for the "there exists l" identities; mul is
// the multiplier family l -> (x+z)^l or (x-y)^l. Fails hard on an exact
// mismatch (a higher power cannot repair it) and distinguishes that from
// "no witness <= l_max".
CheckItem witness_search(std::string axiom, std::vector<int> idx, const VecSeries2& lhs,
                         const VecSeries2& rhs, int l_max, const Window& w,
                         const std::function<VecSeries2(int)>& mul);

// ---- series-extension helpers shared with the cochain layer ----

// sum_k z^k f(s_k) for a series-valued linear map f; f_low bounds the lowest
// exponent any f output can carry.
VecSeries1 extend_series1(const VecSeries1& s, int out_dim,
                          const std::function<VecSeries1(const QVec&)>& f, int f_low);

// Same, applied to the second (z) variable of a two-variable series.
VecSeries2 extend_series2_z(const VecSeries2& s, int out_dim,
                            const std::function<VecSeries1(const QVec&)>& f, int f_low);

// sum_n z^n * substitute_shift(f(u_n), w, swap): the f_{x+z}(a, u) /
// a (.)_{x+z} u pattern, with u a one-variable series in z.
VecSeries2 extend_substitute(const VecSeries1& u, int out_dim,
                             const std::function<VecSeries1(const QVec&)>& f, const Window& w,
                             bool swap_major = false);

// sum_n z^n (f(u_n) placed along the x axis): the a (.)_x (b (.)_z u) pattern.
VecSeries2 compose_outer_x(const VecSeries1& u, int out_dim,
                           const std::function<VecSeries1(const QVec&)>& f);

// (x-y)^k as an exact polynomial in (x, z)-indexing, k >= 0.
VecSeries2 expand_x_minus_z(int k);

} // namespace vac
