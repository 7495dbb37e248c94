#include "vac/io.hpp"

#include <fstream>
#include <sstream>

namespace vac {

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

// Comment-stripped, whitespace-tokenized significant lines of a file.
class LineReader {
public:
    LineReader(std::string path) : path_(std::move(path))
    {
        std::ifstream in(path_);
        if (!in)
            throw ParseError(path_, 0, "cannot open file");
        std::string raw;
        int n = 0;
        while (std::getline(in, raw)) {
            ++n;
            if (auto h = raw.find('#'); h != std::string::npos)
                raw.erase(h);
            std::istringstream ss(raw);
            Line l{n, {}};
            for (std::string t; ss >> t;)
                l.tokens.push_back(std::move(t));
            if (!l.tokens.empty())
                lines_.push_back(std::move(l));
        }
    }

    bool eof() const { return pos_ >= lines_.size(); }
    const Line& peek() const
    {
        if (eof())
            throw ParseError(path_, last_line(), "unexpected end of file");
        return lines_[pos_];
    }
    Line next()
    {
        Line l = peek();
        ++pos_;
        return l;
    }
    int last_line() const { return lines_.empty() ? 0 : lines_.back().number; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const Line& l, const std::string& msg) const
    {
        throw ParseError(path_, l.number, msg);
    }

private:
    std::string path_;
    std::vector<Line> lines_;
    size_t pos_ = 0;
};

Rational rat(LineReader& r, const Line& l, const std::string& tok)
{
    auto v = parse_rational(tok);
    if (!v)
        r.fail(l, "malformed rational '" + tok + "'");
    return *v;
}

int integer(LineReader& r, const Line& l, const std::string& tok)
{
    try {
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used == tok.size())
            return v;
    } catch (...) {
    }
    r.fail(l, "malformed integer '" + tok + "'");
}

QVec rat_row(LineReader& r, const Line& l, size_t from, int dim)
{
    if (int(l.tokens.size() - from) != dim)
        r.fail(l, "expected " + std::to_string(dim) + " coordinates, found " +
                      std::to_string(l.tokens.size() - from));
    QVec v = zero_vec(dim);
    for (int c = 0; c < dim; ++c)
        v[size_t(c)] = rat(r, l, l.tokens[from + size_t(c)]);
    return v;
}

QMatrix matrix_block(LineReader& r, int rows, int cols)
{
    QMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        Line l = r.next();
        QVec row = rat_row(r, l, 0, cols);
        for (int c = 0; c < cols; ++c)
            m.at(i, c) = row[size_t(c)];
    }
    return m;
}

// "table ... end" with lines "i j : coords" (holomorphic) or
// "i j k : coords" (explicit); sparse, absent entries are zero.
StructureData table_block(LineReader& r, bool holomorphic, int ldim, int rdim, int odim,
                          int* table_line)
{
    Line head = r.next();
    if (head.tokens != std::vector<std::string>{"table"})
        r.fail(head, "expected 'table'");
    if (table_line)
        *table_line = head.number;
    BilinearTable bt = BilinearTable::zero(ldim, rdim, odim);
    ExplicitTable et;
    et.left_dim = ldim;
    et.right_dim = rdim;
    et.out_dim = odim;
    int idx = holomorphic ? 2 : 3;
    while (true) {
        Line l = r.next();
        if (l.tokens == std::vector<std::string>{"end"})
            break;
        if (int(l.tokens.size()) < idx + 1 || l.tokens[size_t(idx)] != ":")
            r.fail(l, holomorphic ? "expected 'i j : coordinates'"
                                  : "expected 'i j k : coordinates'");
        int i = integer(r, l, l.tokens[0]);
        int j = integer(r, l, l.tokens[1]);
        if (i < 0 || i >= ldim || j < 0 || j >= rdim)
            r.fail(l, "basis index out of range");
        QVec v = rat_row(r, l, size_t(idx) + 1, odim);
        if (holomorphic)
            bt.e[size_t(i)][size_t(j)] = std::move(v);
        else {
            int k = integer(r, l, l.tokens[2]);
            if (!is_zero(v))
                et.products[{i, j, k}] = std::move(v);
        }
    }
    if (holomorphic)
        return bt;
    return et;
}

} // namespace

AlgebraDocument parse_document(const std::string& path)
{
    LineReader r(path);
    AlgebraDocument doc;
    FiniteVertexAlgebra& V = doc.algebra;

    Line l = r.next();
    if (l.tokens != std::vector<std::string>{"field", "Q"})
        r.fail(l, "expected 'field Q'");
    l = r.next();
    if (l.tokens != std::vector<std::string>{"algebra"})
        r.fail(l, "expected 'algebra'");

    int algebra_table_line = 0;
    bool have_dim = false, have_vacuum = false, have_D = false, have_table = false;
    bool holomorphic = true;
    while (!r.eof() && r.peek().tokens[0] != "module") {
        l = r.peek();
        const std::string& key = l.tokens[0];
        if (key == "dim") {
            r.next();
            V.dim = integer(r, l, l.tokens.size() == 2 ? l.tokens[1] : "");
            if (V.dim <= 0)
                r.fail(l, "dim must be positive");
            have_dim = true;
        } else if (!have_dim) {
            r.fail(l, "'dim' must precede '" + key + "'");
        } else if (key == "basis") {
            r.next();
            if (int(l.tokens.size()) != V.dim + 1)
                r.fail(l, "expected " + std::to_string(V.dim) + " basis names");
            V.basis_names.assign(l.tokens.begin() + 1, l.tokens.end());
        } else if (key == "vacuum") {
            r.next();
            V.vacuum = rat_row(r, l, 1, V.dim);
            have_vacuum = true;
        } else if (key == "D") {
            r.next();
            V.D = matrix_block(r, V.dim, V.dim);
            have_D = true;
        } else if (key == "preset") {
            r.next();
            if (l.tokens.size() != 2 ||
                (l.tokens[1] != "holomorphic" && l.tokens[1] != "explicit"))
                r.fail(l, "expected 'preset holomorphic' or 'preset explicit'");
            holomorphic = l.tokens[1] == "holomorphic";
            V.structure = table_block(r, holomorphic, V.dim, V.dim, V.dim, &algebra_table_line);
            have_table = true;
        } else {
            r.fail(l, "unknown directive '" + key + "'");
        }
    }
    if (!have_dim || !have_vacuum || !have_D || !have_table)
        throw ParseError(path, r.last_line(), "incomplete algebra: need dim, vacuum, D, preset/table");

    auto errs = validate_structure(V);
    if (!errs.empty()) {
        std::string msg = "invalid algebra:";
        for (const auto& e : errs)
            msg += " " + e + ";";
        throw ParseError(path, algebra_table_line, msg);
    }

    if (!r.eof()) {
        r.next(); // 'module'
        ModuleStructure M;
        int module_table_line = 0;
        bool m_dim = false, m_d = false, m_table = false;
        while (!r.eof()) {
            l = r.peek();
            const std::string& key = l.tokens[0];
            if (key == "dim") {
                r.next();
                M.dim = integer(r, l, l.tokens.size() == 2 ? l.tokens[1] : "");
                if (M.dim <= 0)
                    r.fail(l, "dim must be positive");
                m_dim = true;
            } else if (!m_dim) {
                r.fail(l, "'dim' must precede '" + key + "'");
            } else if (key == "basis") {
                r.next();
                if (int(l.tokens.size()) != M.dim + 1)
                    r.fail(l, "expected " + std::to_string(M.dim) + " basis names");
                M.basis_names.assign(l.tokens.begin() + 1, l.tokens.end());
            } else if (key == "d") {
                r.next();
                M.d = matrix_block(r, M.dim, M.dim);
                m_d = true;
            } else if (key == "preset") {
                r.next();
                if (l.tokens.size() != 2 ||
                    (l.tokens[1] != "holomorphic" && l.tokens[1] != "explicit"))
                    r.fail(l, "expected 'preset holomorphic' or 'preset explicit'");
                M.action =
                    table_block(r, l.tokens[1] == "holomorphic", V.dim, M.dim, M.dim,
                                &module_table_line);
                m_table = true;
            } else {
                r.fail(l, "unknown directive '" + key + "'");
            }
        }
        if (!m_dim || !m_d || !m_table)
            throw ParseError(path, r.last_line(), "incomplete module: need dim, d, preset/table");
        auto merrs = validate_module_structure(V, M);
        if (!merrs.empty()) {
            std::string msg = "invalid module:";
            for (const auto& e : merrs)
                msg += " " + e + ";";
            throw ParseError(path, module_table_line, msg);
        }
        doc.module = std::move(M);
    }
    return doc;
}

CochainDocument parse_cochain(const std::string& path, const FiniteVertexAlgebra& V,
                              const ModuleStructure& M)
{
    LineReader r(path);
    CochainDocument doc;
    Line head = r.next();
    if (head.tokens == std::vector<std::string>{"onecochain"}) {
        Line l = r.next();
        if (l.tokens != std::vector<std::string>{"matrix"})
            r.fail(l, "expected 'matrix'");
        OneCochain g{matrix_block(r, M.dim, V.dim)};
        Line e = r.next();
        if (e.tokens != std::vector<std::string>{"end"})
            r.fail(e, "expected 'end'");
        auto errs = validate_C1(V, M, g);
        if (!errs.empty()) {
            std::string msg = "invalid one-cochain:";
            for (const auto& s : errs)
                msg += " " + s + ";";
            throw ParseError(path, head.number, msg);
        }
        doc.one = std::move(g);
    } else if (head.tokens == std::vector<std::string>{"twocochain"}) {
        Line l = r.next();
        if (l.tokens.size() != 2 || l.tokens[0] != "tail")
            r.fail(l, "expected 'tail T'");
        int T = integer(r, l, l.tokens[1]);
        if (T < 0)
            r.fail(l, "tail depth must be nonnegative");
        TwoCochain f = TwoCochain::zero(V, M, T);
        f.zero_coeff = BilinearTable::zero(V.dim, V.dim, M.dim);
        f.tail_gen = BilinearTable::zero(V.dim, V.dim, M.dim);
        bool saw_zero = false;
        while (!r.eof()) {
            Line c = r.next();
            if (c.tokens.size() != 2 || c.tokens[0] != "coeff")
                r.fail(c, "expected 'coeff k'");
            int k = integer(r, c, c.tokens[1]);
            if (k != 0 && k != -T)
                r.fail(c, "only the coefficients at -tail and 0 are free");
            BilinearTable& t = (k == 0) ? f.zero_coeff : f.tail_gen;
            if (k == 0)
                saw_zero = true;
            while (true) {
                Line e = r.next();
                if (e.tokens == std::vector<std::string>{"end"})
                    break;
                if (e.tokens.size() < 3 || e.tokens[2] != ":")
                    r.fail(e, "expected 'i j : coordinates'");
                int i = integer(r, e, e.tokens[0]);
                int j = integer(r, e, e.tokens[1]);
                if (i < 0 || i >= V.dim || j < 0 || j >= V.dim)
                    r.fail(e, "basis index out of range");
                t.e[size_t(i)][size_t(j)] = rat_row(r, e, 3, M.dim);
            }
        }
        if (!saw_zero)
            throw ParseError(path, r.last_line(), "missing 'coeff 0' block");
        doc.two = std::move(f);
    } else {
        r.fail(head, "expected 'onecochain' or 'twocochain'");
    }
    return doc;
}

// ---------------- serialization ----------------

namespace {

void write_row(std::ostream& os, const QVec& v)
{
    for (size_t c = 0; c < v.size(); ++c)
        os << (c ? " " : "") << rat_str(v[c]);
    os << "\n";
}

void write_matrix(std::ostream& os, const QMatrix& m)
{
    for (int i = 0; i < m.rows; ++i)
        write_row(os, m.data[size_t(i)]);
}

void write_bilinear(std::ostream& os, const BilinearTable& t)
{
    for (int i = 0; i < t.left_dim; ++i)
        for (int j = 0; j < t.right_dim; ++j) {
            if (is_zero(t.entry(i, j)))
                continue;
            os << i << " " << j << " : ";
            write_row(os, t.entry(i, j));
        }
}

void write_structure(std::ostream& os, const StructureData& s)
{
    if (std::holds_alternative<BilinearTable>(s)) {
        os << "preset holomorphic\n" << "table\n";
        write_bilinear(os, std::get<BilinearTable>(s));
    } else {
        os << "preset explicit\n" << "table\n";
        for (const auto& [key, v] : std::get<ExplicitTable>(s).products) {
            auto [i, j, k] = key;
            os << i << " " << j << " " << k << " : ";
            write_row(os, v);
        }
    }
    os << "end\n";
}

} // namespace

void write_algebra(std::ostream& os, const FiniteVertexAlgebra& V, const ModuleStructure* M)
{
    os << "field Q\n" << "algebra\n" << "dim " << V.dim << "\n";
    if (!V.basis_names.empty()) {
        os << "basis";
        for (const auto& n : V.basis_names)
            os << " " << n;
        os << "\n";
    }
    os << "vacuum ";
    write_row(os, V.vacuum);
    os << "D\n";
    write_matrix(os, V.D);
    write_structure(os, V.structure);
    if (M) {
        os << "module\n" << "dim " << M->dim << "\n";
        os << "d\n";
        write_matrix(os, M->d);
        write_structure(os, M->action);
    }
}

void write_one_cochain(std::ostream& os, const OneCochain& g)
{
    os << "onecochain\n" << "matrix\n";
    write_matrix(os, g.g);
    os << "end\n";
}

void write_two_cochain(std::ostream& os, const TwoCochain& f)
{
    os << "twocochain\n" << "tail " << f.tail_depth << "\n";
    if (f.tail_depth > 0) {
        os << "coeff " << -f.tail_depth << "\n";
        write_bilinear(os, f.tail_gen);
        os << "end\n";
    }
    os << "coeff 0\n";
    write_bilinear(os, f.zero_coeff);
    os << "end\n";
}

std::string report_str(const CohomologyReport& rep, const FiniteVertexAlgebra& V)
{
    std::ostringstream os;
    os << "degree " << rep.degree << "\n";
    if (rep.degree == 2) {
        os << "tail bound " << rep.tail_bound << "\n";
        os << "n_max " << rep.n_max << "\n";
        os << "window " << rep.window.str() << "\n";
    }
    os << (rep.exact ? "exact" : "to-truncation") << "\n";
    os << "dim H^" << rep.degree << " = " << rep.dimension << "\n";
    for (size_t i = 0; i < rep.reps0.size(); ++i) {
        os << "representative " << i + 1 << ": ";
        os << vec_str(rep.reps0[i]) << "\n";
    }
    for (size_t i = 0; i < rep.reps1.size(); ++i) {
        os << "representative " << i + 1 << ":\n";
        write_one_cochain(os, rep.reps1[i]);
    }
    for (size_t i = 0; i < rep.reps2.size(); ++i) {
        os << "representative " << i + 1;
        if (i < rep.witnesses.size())
            os << " (witness n=" << rep.witnesses[i] << ")";
        os << ":\n";
        write_two_cochain(os, rep.reps2[i]);
    }
    return os.str();
}

} // namespace vac
