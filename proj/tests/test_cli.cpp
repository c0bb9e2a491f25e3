#include "aalp/cli/dsl.hpp"
#include "aalp/cli/report.hpp"
#include "aalp/cli/svg.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

using namespace aalp;

namespace {

const std::string data_dir = AALP_DATA_DIR;

struct Run {
    std::string out;
    int code = -1;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(AALP_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string tmp(const std::string& name) { return std::string(AALP_TMP_DIR) + "/" + name; }

std::string section(const std::string& text, const std::string& head)
{
    const auto at = text.find(head + ":\n");
    if (at == std::string::npos)
        return {};
    std::string out;
    std::size_t pos = at + head.size() + 2;
    while (pos < text.size() && text.compare(pos, 2, "  ") == 0) {
        const auto end = text.find('\n', pos);
        out += text.substr(pos + 2, end - pos - 2) + "\n";
        pos = end + 1;
    }
    return out;
}

} // namespace

TEST(Dsl, TextAndJsonAgree)
{
    const auto a = cli::run_script(cli::load_pair_file(data_dir + "/node_blowup.pair"));
    const auto b = cli::run_script(cli::load_pair_file(data_dir + "/node_blowup.json"));
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a.back(), b.back());
}

TEST(Dsl, Diagnostics)
{
    try {
        cli::parse_pair_text("surface F 1\ncurve Z 1 x\n", "f.pair");
        FAIL();
    } catch (const cli::ParseError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("f.pair:2:11:", 0), 0u) << e.what();
    }
    EXPECT_THROW(cli::parse_pair_text("surface G 1\n"), cli::ParseError);
    EXPECT_THROW(cli::parse_pair_text("surface P2\ncurve A 1\ncurve A 1\n"), cli::ParseError);
    EXPECT_THROW(cli::parse_pair_text("{\"surface\": \"F1\", \"boundary\": 3}"), cli::ParseError);
    const auto s = cli::parse_pair_text("surface F 1\ncurve Z 1 0\ncurve F 0 1\nblowup node nope as E\n", "g");
    try {
        cli::run_script(s, "g");
        FAIL();
    } catch (const cli::ParseError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("g:4:", 0), 0u) << e.what();
    }
}

TEST(Cli, CheckVerdicts)
{
    const auto fig = run("check " + data_dir + "/trapezoid.pair");
    EXPECT_EQ(fig.code, 0);
    EXPECT_NE(fig.out.find("  strongly_aldp: no\n  aldp: yes\n"), std::string::npos);
    const auto line = run("check " + data_dir + "/p2_line.pair");
    EXPECT_EQ(line.code, 0);
    EXPECT_NE(line.out.find("log_del_pezzo: yes"), std::string::npos);
    const auto f2 = run("check " + data_dir + "/f2_anticanonical.pair");
    EXPECT_EQ(f2.code, 0);
    EXPECT_NE(f2.out.find("  aldp: no\n"), std::string::npos);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("check " + data_dir + "/bad_reference.pair").code, 1);
    EXPECT_EQ(run("check /nonexistent/file").code, 1);
    EXPECT_EQ(run("check " + data_dir + "/node_blowup.pair").code, 2);
    EXPECT_EQ(run("classify --mode other").code, 1);
    EXPECT_EQ(run("aa " + data_dir + "/trapezoid.pair --slice 1=1/2").code, 1);
    EXPECT_EQ(run("aa " + data_dir + "/aldp_4_2.pair --svg " + tmp("x.svg")).code, 1);
    EXPECT_EQ(run("").code, 1);
}

TEST(Cli, EmptyScriptMatchesCheck)
{
    EXPECT_EQ(run("blowup " + data_dir + "/trapezoid.pair").out, run("check " + data_dir + "/trapezoid.pair").out);
}

TEST(Cli, BlowupReport)
{
    const auto r = run("blowup " + data_dir + "/node_blowup.pair");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("step 1: node p as E\n"), std::string::npos);
    EXPECT_NE(section(r.out, "body").find("b1 + b2 - b3 > 0\n"), std::string::npos);
    EXPECT_NE(r.out.find("exactness: OuterApproximation"), std::string::npos);
    EXPECT_NE(r.out.find("quadratic: L(b)^2 = "), std::string::npos);
    const auto two = run("blowup " + data_dir + "/infinitely_near.pair");
    EXPECT_NE(two.out.find("step 2: node E1-Z as E2\nsurface: "), std::string::npos);
    EXPECT_NE(two.out.find("canonical: -2Z - 3F + E1 + E2\n"), std::string::npos);
}

TEST(Cli, Determinism)
{
    for (const std::string& args : std::vector<std::string>{"check " + data_dir + "/node_blowup.pair", "classify --mode rank2 --n-max 3",
                                    "aa " + data_dir + "/aldp_3_2.pair --slice 1=1/2"})
        EXPECT_EQ(run(args).out, run(args).out) << args;
    run("aa " + data_dir + "/trapezoid.pair --svg " + tmp("a.svg"));
    run("aa " + data_dir + "/trapezoid.pair --svg " + tmp("b.svg"));
    EXPECT_EQ(read_file(tmp("a.svg")), read_file(tmp("b.svg")));
}

TEST(Cli, GridDenomEnv)
{
    const std::string file = data_dir + "/node_blowup.pair";
    unsetenv("AA_GRID_DENOM");
    EXPECT_NE(run("check " + file).out.find("grid 1/16"), std::string::npos);
    setenv("AA_GRID_DENOM", "8", 1);
    EXPECT_NE(run("check " + file).out.find("grid 1/8"), std::string::npos);
    setenv("AA_GRID_DENOM", "1", 1);
    EXPECT_EQ(run("check " + file).code, 1);
    unsetenv("AA_GRID_DENOM");
}

TEST(Cli, AaCanonicalRoundTrip)
{
    for (const char* f : {"trapezoid.pair", "aldp_3_2.pair", "aldp_4_2.pair", "node_blowup.pair"}) {
        const auto r = run(std::string("aa ") + data_dir + "/" + f);
        const std::string body = section(r.out, "body");
        ASSERT_FALSE(body.empty()) << f;
        const std::size_t dim = std::string(f) == "trapezoid.pair" ? 2 : std::string(f) == "aldp_4_2.pair" ? 4 : 3;
        const auto p = parse_canonical(body, dim);
        EXPECT_EQ(canonical_form(remove_redundant(p)), body) << f;
    }
}

TEST(Cli, AaSection)
{
    const auto r = run("aa " + data_dir + "/aldp_3_2.pair --slice 1=1/2");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("section: b1 = 1/2\n"), std::string::npos);
    EXPECT_EQ(section(r.out, "body"), "-b2 + 1 > 0\n-b3 + 1 > 0\nb2 + b3 - 1 > 0\n");
    EXPECT_EQ(section(r.out, "vertices"), "(0, 1)\n(1, 0)\n(1, 1)\n");
}

TEST(Svg, Figure1)
{
    const auto r = run("aa " + data_dir + "/trapezoid.pair --svg " + tmp("fig1.svg"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(section(r.out, "vertices"), "(0, 0)\n(0, 1)\n(1, 1/2)\n(1, 1)\n");
    const auto svg = read_file(tmp("fig1.svg"));
    EXPECT_NE(svg.find("viewBox=\"0 0 512 512\""), std::string::npos);
    EXPECT_NE(svg.find(">(1, 1/2)</text>"), std::string::npos);
    EXPECT_EQ(svg.find("OUTER"), std::string::npos);
    EXPECT_NE(svg.find("<polygon points=\"456.00,56.00 56.00,56.00 56.00,456.00 456.00,256.00\""), std::string::npos);
}

TEST(Svg, OuterWatermarkAndSection)
{
    run("aa " + data_dir + "/node_blowup.pair --slice 3=1/2 --svg " + tmp("outer.svg"));
    const auto svg = read_file(tmp("outer.svg"));
    EXPECT_NE(svg.find(">OUTER</text>"), std::string::npos);
    EXPECT_NE(svg.find(">section b3 = 1/2</text>"), std::string::npos);
}

TEST(Svg, OneDimensionalAndEmpty)
{
    cli::SvgOptions opt{{"b1"}, "AA", true};
    const auto seg = cli::render_svg(closure(unit_cube(1, true)), opt);
    EXPECT_NE(seg.find("<line x1=\"56.00\""), std::string::npos);
    const auto empty = cli::render_svg(canonical_empty(2), opt);
    EXPECT_NE(empty.find(">empty</text>"), std::string::npos);
    EXPECT_THROW(cli::render_svg(unit_cube(3, false), opt), Error);
}

TEST(Report, CheckOnLibraryPair)
{
    const auto r = cli::check_report(fn_pair(2, {{1, 0}}), 16);
    EXPECT_FALSE(r.unknown);
    EXPECT_NE(r.text.find("surface: F2\n"), std::string::npos);
    EXPECT_NE(r.text.find("log_del_pezzo: yes"), std::string::npos);
}
