#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modinv/error.hpp"
#include "modinv/io.hpp"

using namespace modinv;

namespace {

struct Common {
    std::optional<int> cutoff;
    std::optional<std::uint64_t> seed;
    std::string cache_dir;
    std::string report_out;
    std::string grading;
    bool timings = false;
    std::string scenario;
    std::int64_t p = 0;
    std::size_t n = 0;
    std::vector<std::string> gens;
};

Matrix parse_matrix_arg(const std::string& text, const std::string& what)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(what + ": " + e.what());
    }
    if (!j.is_array())
        throw InputError(what + ": expected a list of rows such as [[0,1],[1,0]]");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw InputError(what + ": rows must be integer lists of equal length");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number_integer())
                throw InputError(what + ": entries must be integers");
            m(r, c) = v.get<std::int64_t>();
        }
    }
    return m;
}

Scenario base_scenario(const Common& c)
{
    Scenario s;
    if (!c.scenario.empty()) {
        s = load_scenario(c.scenario);
    } else {
        if (c.p == 0 || c.n == 0)
            throw InputError("give --scenario, or -p and -n (with --gen for each generator)");
        s.p = c.p;
        s.n = c.n;
        for (std::size_t i = 0; i < c.gens.size(); ++i)
            s.generators.push_back(parse_matrix_arg(c.gens[i], "--gen #" + std::to_string(i + 1)));
        if (s.p >= 2 && s.p < 65536 && is_prime(s.p))
            for (auto& g : s.generators)
                g = reduce_mod(g, FieldPrime(s.p));
    }
    if (c.cutoff)
        s.cutoff = *c.cutoff;
    if (c.seed)
        s.seed = *c.seed;
    if (c.grading == "topological")
        s.grading = GradingConvention::topological;
    else if (c.grading == "algebraic")
        s.grading = GradingConvention::algebraic;
    return s;
}

int emit(const Report& r, const Common& c)
{
    if (c.report_out.empty()) {
        std::cout << r.json;
    } else {
        std::ofstream out(c.report_out, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot write " << c.report_out << "\n";
            return exit_input_error;
        }
        out << r.json;
        std::cout << "status: " << nlohmann::json::parse(r.json).at("status").get<std::string>() << " (exit "
                  << r.exit_code << ")\n";
    }
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Modular invariant rings of finite linear groups: bases, depth and bounded theorem checks."};
    app.require_subcommand(1);
    Common c;

    auto add_common = [&](CLI::App* sub, bool group_required) {
        sub->add_option("--cutoff", c.cutoff, "Degree cutoff (algebraic degrees)")->check(CLI::PositiveNumber);
        sub->add_option("--seed", c.seed, "Seed for the regular-sequence search");
        sub->add_option("--cache-dir", c.cache_dir, "Directory for cached invariant bases");
        sub->add_option("--report-out", c.report_out, "Write the JSON report here instead of stdout");
        sub->add_option("--grading", c.grading, "Degree convention for reported degrees")
            ->check(CLI::IsMember({"algebraic", "topological"}));
        sub->add_flag("--timings", c.timings, "Include per-phase timings in the report");
        if (group_required) {
            sub->add_option("--scenario", c.scenario, "Scenario file supplying the group")->check(CLI::ExistingFile);
            sub->add_option("-p", c.p, "Characteristic");
            sub->add_option("-n", c.n, "Dimension");
            sub->add_option("-g,--gen", c.gens, "Generator matrix as JSON rows, e.g. [[0,1],[1,0]]; repeat per generator")
                ->allow_extra_args(false);
        }
    };

    auto* invariants = app.add_subcommand("invariants", "Minimal algebra generators up to the cutoff");
    auto* hilbert = app.add_subcommand("hilbert", "Hilbert coefficients up to the cutoff");
    auto* dickson = app.add_subcommand("dickson", "Dickson invariants of GL_n(F_p)");
    auto* depth = app.add_subcommand("depth", "Depth by Koszul homology and a certified regular sequence");
    auto* duflot = app.add_subcommand("duflot", "Check depth >= dim V^P");
    auto* carlson = app.add_subcommand("carlson", "Detection on pointwise stabilizers of s-dimensional subspaces");
    auto* coaction_cmd = app.add_subcommand("coaction", "Comodule identities over a subspace of V^P");
    auto* run = app.add_subcommand("run", "Run a full scenario file");
    for (auto* sub : {invariants, hilbert, dickson, depth, duflot, carlson, coaction_cmd})
        add_common(sub, true);
    add_common(run, false);
    run->add_option("scenario", c.scenario, "Scenario file")->required();

    std::vector<std::size_t> carlson_s;
    carlson->add_option("-s", carlson_s, "Subspace dimensions (default: all with at most 200 subspaces)");
    std::string subspace;
    std::vector<std::string> elements;
    int coaction_degree = 0;
    coaction_cmd->add_option("--subspace", subspace, "Basis of C as JSON rows")->required();
    coaction_cmd->add_option("--element", elements, "Invariant polynomial such as x1*x2");
    coaction_cmd->add_option("--degree", coaction_degree, "Check every P-invariant basis element up to this degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input_error;
    }

    RunOptions options;
    if (!c.cache_dir.empty())
        options.cache_dir = c.cache_dir;
    options.timings = c.timings;
    options.log = &std::cerr;

    try {
        if (run->parsed())
            return emit(run_scenario(base_scenario(c), options), c);

        Scenario s = base_scenario(c);
        if (invariants->parsed())
            s.tasks = {"invariants"};
        else if (hilbert->parsed())
            s.tasks = {"hilbert"};
        else if (dickson->parsed()) {
            s.tasks = {"dickson"};
            if (!s.cutoff)
                s.cutoff = 1;
        } else if (depth->parsed())
            s.tasks = {"depth"};
        else if (duflot->parsed())
            s.tasks = {"duflot"};
        else if (carlson->parsed()) {
            s.tasks = {"carlson"};
            s.carlson_s = carlson_s;
        } else if (coaction_cmd->parsed()) {
            s.tasks = {"coaction"};
            CoactionSpec spec;
            spec.subspace = parse_matrix_arg(subspace, "--subspace");
            for (const auto& e : elements)
                spec.elements.push_back(parse_polynomial(e, s.n, FieldPrime(s.p)));
            spec.degree = coaction_degree;
            s.coaction = {spec};
        }
        return emit(run_scenario(s, options), c);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return emit(error_report(e, "parse"), c);
    }
}
