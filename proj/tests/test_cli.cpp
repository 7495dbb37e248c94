#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <string>

#include <sys/wait.h>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args)
{
    std::string cmd = std::string(VAC_BIN) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, p))
        r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string fx(const std::string& name) { return std::string(VAC_FIXTURES) + "/" + name; }

bool contains(const std::string& hay, const std::string& needle)
{
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("check passes on the sample algebras")
{
    for (const char* f :
         {"k.alg", "dual.alg", "kx3.alg", "ktimesk.alg", "kxy.alg", "kx3d.alg"}) {
        auto r = run("check " + fx(f));
        CHECK(r.code == 0);
        CHECK(contains(r.out, "PASS"));
        CHECK(contains(r.out, "window"));
    }
    auto r = run("check-module " + fx("dual_mod.alg"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "PASS"));
}

TEST_CASE("invalid documents are rejected with location and reason")
{
    auto r = run("check " + fx("bad_noncomm.alg"));
    CHECK(r.code == 2);
    CHECK(contains(r.out, "bad_noncomm.alg:12"));
    CHECK(contains(r.out, "not commutative on pair (x,x2)"));

    auto r2 = run("check " + fx("bad_leibniz.alg"));
    CHECK(r2.code == 2);
    CHECK(contains(r2.out, "Leibniz"));

    auto r3 = run("check " + fx("no_such_file.alg"));
    CHECK(r3.code == 2);
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run("frobnicate").code == 2);
    CHECK(run("check").code == 2);
    CHECK(run("h2 " + fx("dual.alg") + " --window nope").code == 2);
    CHECK(run("cocycle " + fx("dual.alg") + " " + fx("dual_g.one")).code == 2);
    CHECK(run("harrison " + fx("kx3d.alg")).code == 2); // not a D = 0 preset
}

TEST_CASE("cohomology reports")
{
    auto r = run("h2 " + fx("dual.alg"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "dim H^2 = 1"));
    CHECK(contains(r.out, "representative 1"));
    CHECK(contains(r.out, "1 1 : 1 0"));
    CHECK(contains(r.out, "exact"));

    CHECK(contains(run("h2 " + fx("ktimesk.alg")).out, "dim H^2 = 0"));
    CHECK(contains(run("h0 " + fx("dual.alg")).out, "dim H^0 = 2"));
    CHECK(contains(run("h1 " + fx("dual.alg")).out, "dim H^1 = 1"));
    CHECK(contains(run("h2 " + fx("dual.alg") + " --tail 1").out, "dim H^2 = 1"));
}

TEST_CASE("cocycle and construction commands")
{
    CHECK(run("cocycle " + fx("dual.alg") + " " + fx("dual_rep.coc")).code == 0);
    auto bad = run("cocycle " + fx("dual.alg") + " " + fx("dual_bad.coc"));
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "FAIL"));

    auto ext = run("extend " + fx("dual.alg") + " " + fx("dual_rep.coc"));
    CHECK(ext.code == 0);
    CHECK(contains(ext.out, "dim 4"));

    auto ex = run("extract " + fx("dual.alg") + " " + fx("dual_rep.coc"));
    CHECK(ex.code == 0);
    CHECK(contains(ex.out, "round trip exact"));

    CHECK(run("deform " + fx("dual.alg") + " " + fx("dual_rep.coc")).code == 0);
    CHECK(run("deform " + fx("dual.alg") + " " + fx("dual_bad.coc")).code == 1);

    std::string pair = fx("dual_rep.coc") + " " + fx("zero.coc");
    CHECK(run("equiv-ext " + fx("dual.alg") + " " + pair).code == 1);
    CHECK(run("equiv-def " + fx("dual.alg") + " " + pair).code == 1);
    std::string same = fx("dual_rep.coc") + " " + fx("dual_rep.coc");
    auto eq = run("equiv-def " + fx("dual.alg") + " " + same);
    CHECK(eq.code == 0);
    CHECK(contains(eq.out, "equivalent"));
    CHECK(contains(eq.out, "onecochain"));
}

TEST_CASE("harrison agreement commands")
{
    for (const char* f : {"k.alg", "dual.alg", "kx3.alg", "ktimesk.alg", "kxy.alg"}) {
        auto r = run("compare-harrison " + fx(f));
        CHECK(r.code == 0);
        CHECK(contains(r.out, "AGREE"));
    }
    CHECK(contains(run("harrison " + fx("dual.alg")).out, "dim Harrison H^2 = 1"));
}

TEST_CASE("emitted cochains parse back")
{
    std::string tmp = std::string(VAC_FIXTURES) + "/../../build/delta1_roundtrip.coc";
    auto r = run("delta1 " + fx("dual.alg") + " " + fx("dual_g.one") + " --out " + tmp);
    CHECK(r.code == 0);
    CHECK(run("cocycle " + fx("dual.alg") + " " + tmp).code == 0);
    std::remove(tmp.c_str());
}

TEST_CASE("reports are byte-identical across runs")
{
    for (const std::string cmd :
         {"check " + fx("kx3d.alg"), "h2 " + fx("kxy.alg"),
          "extend " + fx("dual.alg") + " " + fx("dual_rep.coc"),
          "compare-harrison " + fx("kx3.alg"),
          "h1 " + fx("kx3d.alg")}) {
        auto a = run(cmd), b = run(cmd);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}
