#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "symdet/cli.hpp"

using namespace symdet;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/symdet_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("factor decides and exits 0/1", "[cli]") {
    Result yes = run_cli({"factor", "x*y+y*z+z*x"});
    CHECK(yes.code == 0);
    CHECK(yes.out.find("factorizable: yes") != std::string::npos);
    CHECK(yes.out.find("terminal:") != std::string::npos);

    Result no = run_cli({"factor", "x*y+z"});
    CHECK(no.code == 1);
    CHECK(no.out.find("factorizable: no") != std::string::npos);
}

TEST_CASE("reduce applies Mult_l", "[cli]") {
    Result r = run_cli({"reduce", "x^2*y+z^3+x*z+y", "--ell", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "y+x*z\n");

    Result r1 = run_cli({"reduce", "x^2*y+z^3+x*z+y", "--ell", "1"});
    CHECK(r1.out == "z+x*z\n");

    Result rexplicit = run_cli({"reduce", "x^2*y+z^3+x*z+y", "--ell", "0,0,0"});
    CHECK(rexplicit.out == "y+x*z\n");
}

TEST_CASE("census reproduces the R(1,1,1) counts", "[cli]") {
    Result r = run_cli({"census", "-m", "3", "--ell", "1", "--field", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "256 elements, 136 factorizable, 120 not\n");

    Result listed = run_cli({"census", "-m", "2", "--list", "--jobs", "2"});
    CHECK(listed.code == 0);
    CHECK(listed.out.find("16 elements, 16 factorizable, 0 not") == 0);

    Result big = run_cli({"census", "-m", "30"});
    CHECK(big.code == 2);
    CHECK(!big.err.empty());
}

TEST_CASE("sdr then verify round trips", "[cli]") {
    TempFile file("sdr.json");
    Result s = run_cli({"sdr", "x*y+y*z+z*x", "-o", file.path});
    REQUIRE(s.code == 0);

    Result v = run_cli({"verify", file.path, "x*y+y*z+z*x"});
    CHECK(v.code == 0);
    CHECK(v.out.find("match: true") != std::string::npos);

    Result wrong = run_cli({"verify", file.path, "x*y+z"});
    CHECK(wrong.code == 1);
    CHECK(wrong.out.find("match: false") != std::string::npos);

    Result not_rep = run_cli({"sdr", "x*y+z"});
    CHECK(not_rep.code == 1);
}

TEST_CASE("sdr emits DOT on request", "[cli]") {
    TempFile file("sdr2.json");
    TempFile dot("sdr2.dot");
    Result s = run_cli({"sdr", "x+y", "-o", file.path, "--emit-dot", dot.path});
    REQUIRE(s.code == 0);
    std::ifstream in(dot.path);
    std::stringstream dot_text;
    dot_text << in.rdbuf();
    CHECK(dot_text.str().find("graph G {") == 0);

    Result d = run_cli({"emit-dot", file.path});
    CHECK(d.code == 0);
    CHECK(d.out.find("graph G {") == 0);
}

TEST_CASE("extract prints a verified factorization", "[cli]") {
    TempFile file("extract.json");
    REQUIRE(run_cli({"sdr", "x*y+y*z+z*x", "-o", file.path}).code == 0);

    for (const char* ell : {"0", "1"}) {
        Result e = run_cli({"extract", file.path, "--ell", ell});
        CHECK(e.code == 0);
        CHECK(e.out.find("factor: ") != std::string::npos);
        CHECK(e.out.find("verified: true") != std::string::npos);
    }
}

TEST_CASE("alternating and pfaffian commands", "[cli]") {
    Result no = run_cli({"alternating", "x*y+z"});
    CHECK(no.code == 1);
    CHECK(no.out.find("square: no") != std::string::npos);

    TempFile block("alt.json");
    Result yes = run_cli({"alternating", "x^2*y^2+y^2*z^2+z^2*x^2", "-o", block.path});
    CHECK(yes.code == 0);
    CHECK(yes.out.find("square: yes") != std::string::npos);
    CHECK(yes.out.find("sqrt: x*y+x*z+y*z") != std::string::npos);

    // the synthesized block is 26x26, past the pfaffian guard
    Result too_big = run_cli({"pfaffian", block.path});
    CHECK(too_big.code == 2);

    TempFile small("alt_small.json");
    {
        std::ofstream f(small.path);
        f << R"({"field":{"p":2,"k":1,"modulus":null},"vars":["x","y","z"],"n":4,)"
          << R"("entries":[[0,"x",0,"y"],["x",0,1,0],[0,1,0,"z"],["y",0,"z",0]]})";
    }
    Result pf = run_cli({"pfaffian", small.path});
    CHECK(pf.code == 0);
    CHECK(pf.out == "y+x*z\n");
}

TEST_CASE("alternating accepts a caller-supplied witness", "[cli]") {
    // witness [[x]] for P = x^2
    TempFile witness("witness.json");
    {
        std::ofstream f(witness.path);
        f << R"({"field":{"p":2,"k":1,"modulus":null},"vars":["x"],"n":1,"entries":[["x"]]})";
    }
    TempFile block("alt_block.json");
    Result r = run_cli({"alternating", "x^2", "--witness", witness.path, "-o", block.path});
    CHECK(r.code == 0);

    Result pf = run_cli({"pfaffian", block.path});
    CHECK(pf.out == "x\n");

    // a wrong witness is a hard error
    Result bad = run_cli({"alternating", "x^2+1", "--witness", witness.path});
    CHECK(bad.code == 2);
}

TEST_CASE("extension fields through the CLI", "[cli]") {
    Result r = run_cli({"reduce", "3*x^2+x", "--ell", "2", "--field", "2^2", "--vars", "x"});
    CHECK(r.code == 0);
    CHECK(r.out == "1+x\n");  // 3*2 = 1 over GF(4)

    Result census4 = run_cli({"census", "-m", "1", "--field", "2^2"});
    CHECK(census4.code == 0);
    CHECK(census4.out.find("16 elements") == 0);
}

TEST_CASE("errors exit 2 with a diagnostic", "[cli]") {
    CHECK(run_cli({"factor", "x*y+"}).code == 2);
    CHECK(run_cli({"factor", "2*x", "--field", "2"}).code == 2);  // literal out of range
    CHECK(run_cli({"nonsense"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"verify", "/nonexistent.json", "x"}).code == 2);
    CHECK(run_cli({"reduce", "x+y", "--ell", "0,1,0"}).code == 2);  // arity mismatch
    CHECK(run_cli({"factor", "x+y", "--vars", "x"}).code == 2);     // unknown variable y
}

TEST_CASE("help is exit 0", "[cli]") {
    Result r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("census") != std::string::npos);
}
