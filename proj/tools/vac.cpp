#include "vac/construct.hpp"
#include "vac/harrison.hpp"
#include "vac/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace vac;

namespace {

struct Opts {
    std::string alg, f1, f2;
    int lmax = -1, nmax = -1, tail = -1, trunc = -1;
    std::string window, out;
};

struct Context {
    AlgebraDocument doc;
    FiniteVertexAlgebra V;
    ModuleStructure M;
    int lmax = 0, nmax = 0, tail = 0, trunc = 0;
    Window w;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Context load(const Opts& o)
{
    Context c;
    c.doc = parse_document(o.alg);
    c.V = c.doc.algebra;
    c.M = c.doc.module ? *c.doc.module : regular_module(c.V);
    c.lmax = o.lmax >= 0 ? o.lmax : default_lmax(c.V);
    c.nmax = o.nmax >= 0 ? o.nmax : default_lmax(c.V);
    c.trunc = o.trunc >= 0 ? o.trunc : default_trunc(c.V, &c.M);
    c.w = default_window(c.V, &c.M, c.lmax);
    if (!o.window.empty()) {
        int X = 0, Z = 0;
        char comma = 0;
        std::istringstream ss(o.window);
        if (!(ss >> X >> comma >> Z) || comma != ',' || !(ss >> std::ws).eof())
            throw UsageError("--window expects X,Z");
        c.w.high_x = X;
        c.w.high_z = Z;
    }
    c.tail = o.tail >= 0 ? o.tail : std::max({0, c.V.max_pole(), c.M.max_pole()});
    return c;
}

TwoCochain load_two(const std::string& path, const Context& c)
{
    auto doc = parse_cochain(path, c.V, c.M);
    if (!doc.two)
        throw UsageError(path + ": expected a two-cochain document");
    return *doc.two;
}

OneCochain load_one(const std::string& path, const Context& c)
{
    auto doc = parse_cochain(path, c.V, c.M);
    if (!doc.one)
        throw UsageError(path + ": expected a one-cochain document");
    return *doc.one;
}

int emit(const Opts& o, const std::string& text, int code)
{
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.out);
        if (!out)
            throw UsageError("cannot open output file " + o.out);
        out << text;
    }
    return code;
}

std::string preamble(const Context& c)
{
    std::ostringstream os;
    os << "window " << c.w.str() << "\n";
    os << "l_max " << c.lmax << "\n";
    return os.str();
}

bool family_equal(const FiniteVertexAlgebra& V, const TwoCochain& a, const TwoCochain& b)
{
    int T = std::max(a.tail_depth, b.tail_depth);
    for (int k = -T; k <= 0; ++k) {
        BilinearTable ta = coefficient(V, a, k), tb = coefficient(V, b, k);
        for (int i = 0; i < V.dim; ++i)
            for (int j = 0; j < V.dim; ++j)
                if (ta.entry(i, j) != tb.entry(i, j))
                    return false;
    }
    return true;
}

int cmd_check(const Opts& o)
{
    Context c = load(o);
    auto rep = check_axioms(c.V, c.lmax, c.w);
    auto assoc = check_associator(c.V, c.w);
    std::ostringstream os;
    os << preamble(c);
    os << "axioms:\n" << rep.str(&c.V.basis_names);
    os << "associator:\n" << assoc.str(&c.V.basis_names);
    bool ok = rep.passed() && assoc.passed();
    os << (ok ? "PASS" : "FAIL") << "\n";
    return emit(o, os.str(), ok ? 0 : 1);
}

int cmd_check_module(const Opts& o)
{
    Context c = load(o);
    auto rep = check_module(c.V, c.M, c.lmax, c.w);
    std::ostringstream os;
    os << preamble(c);
    os << "module axioms:\n" << rep.str(&c.V.basis_names);
    os << (rep.passed() ? "PASS" : "FAIL") << "\n";
    return emit(o, os.str(), rep.passed() ? 0 : 1);
}

int cmd_h(const Opts& o, int degree)
{
    Context c = load(o);
    CohomologyReport rep;
    if (degree == 0)
        rep = h0(c.V, c.M);
    else if (degree == 1)
        rep = h1(c.V, c.M, c.trunc);
    else
        rep = h2(c.V, c.M, c.tail, c.nmax, c.w);
    return emit(o, report_str(rep, c.V), 0);
}

int cmd_cocycle(const Opts& o)
{
    Context c = load(o);
    TwoCochain f = load_two(o.f1, c);
    auto rep = validate_C2(c.V, c.M, f, c.w);
    auto coc = is_cocycle(c.V, c.M, f, c.nmax, c.w);
    std::ostringstream os;
    os << preamble(c) << "n_max " << c.nmax << "\n";
    os << "cochain conditions:\n" << rep.str(&c.V.basis_names);
    os << "cocycle identity:\n" << coc.str(&c.V.basis_names);
    bool ok = rep.passed() && coc.passed();
    os << (ok ? "PASS" : "FAIL") << "\n";
    return emit(o, os.str(), ok ? 0 : 1);
}

int cmd_delta1(const Opts& o)
{
    Context c = load(o);
    OneCochain g = load_one(o.f1, c);
    TwoCochain f = delta1(c.V, c.M, g, c.trunc);
    std::ostringstream os;
    write_two_cochain(os, f);
    return emit(o, os.str(), 0);
}

int cmd_extend(const Opts& o)
{
    Context c = load(o);
    TwoCochain f = load_two(o.f1, c);
    auto ext = build_extension(c.V, c.M, f);
    auto rep = check_axioms(ext.total, default_lmax(ext.total), default_window(ext.total));
    std::ostringstream os;
    os << "total algebra:\n";
    write_algebra(os, ext.total);
    os << "axioms:\n" << rep.str(&ext.total.basis_names);
    os << (rep.passed() ? "PASS" : "FAIL") << "\n";
    return emit(o, os.str(), rep.passed() ? 0 : 1);
}

int cmd_extract(const Opts& o)
{
    Context c = load(o);
    TwoCochain f = load_two(o.f1, c);
    auto ext = build_extension(c.V, c.M, f);
    TwoCochain back = extract_cocycle(ext, canonical_section(ext));
    std::ostringstream os;
    write_two_cochain(os, back);
    bool ok = family_equal(c.V, back, f);
    os << (ok ? "round trip exact" : "round trip MISMATCH") << "\n";
    return emit(o, os.str(), ok ? 0 : 1);
}

int cmd_equiv_ext(const Opts& o)
{
    Context c = load(o);
    TwoCochain f1 = load_two(o.f1, c), f2 = load_two(o.f2, c);
    auto g = extensions_equivalent(c.V, c.M, f1, f2);
    std::ostringstream os;
    if (g) {
        os << "equivalent\n";
        write_one_cochain(os, *g);
    } else {
        os << "inequivalent\n";
    }
    return emit(o, os.str(), g ? 0 : 1);
}

int cmd_deform(const Opts& o)
{
    Context c = load(o);
    auto M = regular_module(c.V);
    auto doc = parse_cochain(o.f1, c.V, M);
    if (!doc.two)
        throw UsageError(o.f1 + ": expected a two-cochain document");
    auto def = build_deformation(c.V, *doc.two);
    std::ostringstream os;
    os << "deformed product over k[t]/(t^2):\n";
    os << def.verdicts.str(&def.total.basis_names);
    os << (def.verdicts.passed() ? "PASS" : "FAIL") << "\n";
    return emit(o, os.str(), def.verdicts.passed() ? 0 : 1);
}

int cmd_equiv_def(const Opts& o)
{
    Context c = load(o);
    auto M = regular_module(c.V);
    auto d1 = parse_cochain(o.f1, c.V, M), d2 = parse_cochain(o.f2, c.V, M);
    if (!d1.two || !d2.two)
        throw UsageError("equiv-def expects two two-cochain documents");
    auto g = deformations_equivalent(c.V, *d1.two, *d2.two);
    std::ostringstream os;
    if (g) {
        os << "equivalent\n";
        write_one_cochain(os, *g);
    } else {
        os << "inequivalent\n";
    }
    return emit(o, os.str(), g ? 0 : 1);
}

int cmd_harrison(const Opts& o)
{
    Context c = load(o);
    auto A = comm_algebra(c.V);
    auto CM = comm_module(c.M);
    auto rep = harrison_h2(A, CM);
    std::ostringstream os;
    os << "dim Harrison H^2 = " << rep.dimension << "\n";
    for (size_t i = 0; i < rep.representatives.size(); ++i) {
        os << "representative " << i + 1 << ":\n";
        const auto& t = rep.representatives[i];
        for (int a = 0; a < t.left_dim; ++a)
            for (int b = 0; b < t.right_dim; ++b) {
                if (is_zero(t.entry(a, b)))
                    continue;
                os << a << " " << b << " :";
                for (const auto& x : t.entry(a, b))
                    os << " " << rat_str(x);
                os << "\n";
            }
    }
    return emit(o, os.str(), 0);
}

int cmd_compare_harrison(const Opts& o)
{
    Context c = load(o);
    auto A = comm_algebra(c.V);
    auto CM = comm_module(c.M);
    auto hrep = harrison_h2(A, CM);
    auto vrep = h2(c.V, c.M, 0, c.nmax, c.w);

    // class-level matching: each lifted Harrison representative must be a
    // combination of the h2 representatives modulo coboundaries
    std::vector<QVec> B;
    for (const auto& g : c1_basis(c.V, c.M))
        B.push_back(cochain_params(delta1(c.V, c.M, g, c.trunc)));
    bool classes_match = true;
    for (const auto& t : hrep.representatives) {
        TwoCochain f = TwoCochain::zero(c.V, c.M);
        f.zero_coeff = t;
        QVec p = cochain_params(f);
        int rows = int(p.size());
        int nr = int(vrep.reps2.size());
        QMatrix S(rows, nr + int(B.size()));
        for (int col = 0; col < nr; ++col) {
            QVec v = cochain_params(vrep.reps2[size_t(col)]);
            for (int r = 0; r < rows; ++r)
                S.at(r, col) = v[size_t(r)];
        }
        for (size_t col = 0; col < B.size(); ++col)
            for (int r = 0; r < rows; ++r)
                S.at(r, nr + int(col)) = B[col][size_t(r)];
        if (!solve(S, p))
            classes_match = false;
    }

    bool agree = hrep.dimension == vrep.dimension && classes_match;
    std::ostringstream os;
    os << "dim H^2 = " << vrep.dimension << "\n";
    os << "dim Harrison H^2 = " << hrep.dimension << "\n";
    os << "classes " << (classes_match ? "match" : "MISMATCH") << "\n";
    os << (agree ? "AGREE" : "DISAGREE") << "\n";
    return emit(o, os.str(), agree ? 0 : 1);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact cohomology of finite-dimensional vertex algebras"};
    app.require_subcommand(1);
    Opts o;
    std::function<int()> run;

    auto common = [&](CLI::App* s, int files) {
        s->add_option("algebra", o.alg, "algebra document")->required();
        if (files >= 1)
            s->add_option("cochain1", o.f1, "cochain document")->required();
        if (files >= 2)
            s->add_option("cochain2", o.f2, "second cochain document")->required();
        s->add_option("--lmax", o.lmax, "largest multiplier exponent searched");
        s->add_option("--nmax", o.nmax, "cocycle witness exponent bound");
        s->add_option("--tail", o.tail, "tail depth T for H^2");
        s->add_option("--window", o.window, "verification window X,Z");
        s->add_option("--trunc", o.trunc, "series truncation order");
        s->add_option("--out", o.out, "write the report to a file");
        return s;
    };

    auto sub = [&](const std::string& name, const std::string& desc, int files,
                   std::function<int()> fn) {
        CLI::App* s = common(app.add_subcommand(name, desc), files);
        s->callback([&run, fn] { run = fn; });
    };

    sub("check", "verify the vertex-algebra axioms", 0, [&] { return cmd_check(o); });
    sub("check-module", "verify the module axioms", 0, [&] { return cmd_check_module(o); });
    sub("h0", "compute H^0", 0, [&] { return cmd_h(o, 0); });
    sub("h1", "compute H^1", 0, [&] { return cmd_h(o, 1); });
    sub("h2", "compute H^2", 0, [&] { return cmd_h(o, 2); });
    sub("cocycle", "test a two-cochain for the cocycle conditions", 1,
        [&] { return cmd_cocycle(o); });
    sub("delta1", "apply delta_1 to a one-cochain", 1, [&] { return cmd_delta1(o); });
    sub("extend", "build the square-zero extension along a cocycle", 1,
        [&] { return cmd_extend(o); });
    sub("extract", "extract the cocycle of the built extension back", 1,
        [&] { return cmd_extract(o); });
    sub("equiv-ext", "decide equivalence of two extensions", 2, [&] { return cmd_equiv_ext(o); });
    sub("deform", "build and verify the first-order deformation", 1,
        [&] { return cmd_deform(o); });
    sub("equiv-def", "decide equivalence of two deformations", 2,
        [&] { return cmd_equiv_def(o); });
    sub("harrison", "degree-2 Harrison cohomology (D = 0 presets)", 0,
        [&] { return cmd_harrison(o); });
    sub("compare-harrison", "compare H^2 against the Harrison oracle", 0,
        [&] { return cmd_compare_harrison(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return run();
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
