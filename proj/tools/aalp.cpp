// aalp: bodies of ample angles of log pairs on rational surfaces.

#include "aalp/classify.hpp"
#include "aalp/cli/dsl.hpp"
#include "aalp/cli/report.hpp"
#include "aalp/cli/svg.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace aalp;

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_unknown = 2;

struct Timer {
    std::string what;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~Timer()
    {
        const auto ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        std::cerr << what << ": " << ms << " ms\n";
    }
};

std::optional<cli::Section> parse_section(const std::string& text)
{
    if (text.empty())
        return std::nullopt;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw Error("--slice expects i=p/q");
    std::string idx = text.substr(0, eq);
    if (!idx.empty() && (idx[0] == 'b' || idx[0] == 'B'))
        idx.erase(0, 1);
    const auto i = parse_rational(idx);
    const auto v = parse_rational(text.substr(eq + 1));
    if (!i || denominator(*i) != 1 || *i < 1 || !v)
        throw Error("--slice expects i=p/q with i >= 1");
    return cli::Section{static_cast<std::size_t>(numerator(*i)) - 1, *v};
}

std::string describe(const BlowUpStep& s)
{
    std::string out = to_string(s.kind);
    if (!s.target.empty())
        out += " " + s.target;
    if (!s.tag.empty() && s.tag != s.target)
        out += " at " + s.tag;
    if (s.fiber_tag)
        out += " fiber " + *s.fiber_tag;
    return out + " as " + s.label;
}

int cmd_check(const std::string& file, bool with_steps)
{
    const auto script = cli::load_pair_file(file);
    const auto states = cli::run_script(script, file);
    const long denom = grid_denominator_from_env();
    Timer t{with_steps ? "blowup" : "check"};
    if (with_steps)
        for (std::size_t k = 1; k < states.size(); ++k) {
            std::cout << "step " << k << ": " << describe(script.steps[k - 1].step) << "\n";
            std::cout << cli::lattice_dump(states[k]) << "\n";
        }
    const auto r = cli::check_report(states.back(), denom);
    std::cout << r.text;
    return r.unknown ? exit_unknown : exit_ok;
}

int cmd_aa(const std::string& file, const std::string& svg, const std::string& slice_arg)
{
    const auto section = parse_section(slice_arg);
    const auto states = cli::run_script(cli::load_pair_file(file), file);
    const long denom = grid_denominator_from_env();
    Timer t{"aa"};
    const auto r = cli::aa_report(states.back(), section, denom);
    if (!svg.empty() && r.body.dim() > 2)
        throw Error("--svg needs at most two coordinates; use --slice");
    std::cout << r.text;
    if (!svg.empty()) {
        cli::SvgOptions opt{r.names, r.title, r.body.exactness == Exactness::Exact};
        const HPolytope closed = r.body.empty() ? canonical_empty(r.body.dim()) : remove_redundant(r.body.closed_hull);
        const std::string doc = cli::render_svg(closed, opt);
        std::ofstream out(svg, std::ios::binary);
        if (!out)
            throw Error("cannot write " + svg);
        out << doc;
    }
    return exit_ok;
}

int cmd_classify(const std::string& mode, int n_max)
{
    Timer t{"classify"};
    const auto entries = mode == "maeda" ? enumerate_maeda(n_max) : enumerate_rank2(n_max);
    std::cout << to_tsv(entries);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bodies of ample angles of log pairs"};
    app.require_subcommand(1);

    std::string file, svg, slice, mode = "rank2";
    int n_max = 12;

    auto* check = app.add_subcommand("check", "Verdict report for a pair file");
    check->add_option("file", file, "pair file")->required();
    auto* blowup = app.add_subcommand("blowup", "Step-by-step report for a blow-up script");
    blowup->add_option("file", file, "pair file")->required();
    auto* aa = app.add_subcommand("aa", "Body of ample angles");
    aa->add_option("file", file, "pair file")->required();
    aa->add_option("--svg", svg, "write an SVG figure");
    aa->add_option("--slice", slice, "section b_i = p/q, given as i=p/q");
    auto* cls = app.add_subcommand("classify", "Classification table as TSV");
    cls->add_option("--mode", mode, "maeda or rank2")->check(CLI::IsMember({"maeda", "rank2"}));
    cls->add_option("--n-max", n_max, "largest n")->check(CLI::Range(0, 64));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_input;
    }

    try {
        if (*check)
            return cmd_check(file, false);
        if (*blowup)
            return cmd_check(file, true);
        if (*aa)
            return cmd_aa(file, svg, slice);
        return cmd_classify(mode, n_max);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
}
