#include "modinv/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include <unistd.h>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "modinv/coaction.hpp"
#include "modinv/error.hpp"

namespace modinv {

using json = nlohmann::ordered_json;

const std::vector<std::string>& scenario_tasks()
{
    static const std::vector<std::string> names{"hilbert",  "invariants", "dickson",    "depth",   "duflot",
                                                "es",       "lifting",    "stabilizer", "carlson", "coaction"};
    return names;
}

namespace {

// ---------------------------------------------------------------- scenario parsing

struct Ctx {
    std::string source;

    [[noreturn]] void fail(const YAML::Node& at, const std::string& field, const std::string& msg) const
    {
        std::string where = source;
        const YAML::Mark m = at.Mark();
        if (!m.is_null())
            where += ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
        throw InputError(where + ": " + field + ": " + msg);
    }

    template <class T>
    T scalar(const YAML::Node& node, const std::string& field, const char* expected) const
    {
        if (!node.IsScalar())
            fail(node, field, std::string("expected ") + expected);
        if constexpr (std::is_unsigned_v<T>)
            if (!node.Scalar().empty() && node.Scalar()[0] == '-')
                fail(node, field, std::string("expected ") + expected);
        try {
            return node.as<T>();
        } catch (const YAML::Exception&) {
            fail(node, field, std::string("expected ") + expected + ", got '" + node.Scalar() + "'");
        }
    }
};

std::string index_field(const std::string& field, std::size_t i)
{
    return field + "[" + std::to_string(i) + "]";
}

std::string matrix_text(const Matrix& m)
{
    std::string out = "[";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out += r ? ", [" : "[";
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out += (c ? ", " : "") + std::to_string(m(r, c));
        out += "]";
    }
    return out + "]";
}

Matrix parse_matrix(const Ctx& ctx, const YAML::Node& node, const std::string& field, std::int64_t p,
                    std::size_t cols)
{
    if (!node.IsSequence())
        ctx.fail(node, field, "expected a list of rows");
    Matrix m(static_cast<Eigen::Index>(node.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < node.size(); ++r) {
        const auto row = node[r];
        const std::string rf = index_field(field, r);
        if (!row.IsSequence())
            ctx.fail(row, rf, "expected a list of integers");
        if (row.size() != cols)
            ctx.fail(row, rf, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
        for (std::size_t c = 0; c < cols; ++c) {
            const auto v = ctx.scalar<long long>(row[c], index_field(rf, c), "an integer");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = ((v % p) + p) % p;
        }
    }
    return m;
}

std::optional<std::string> generator_problem(const Matrix& g, std::int64_t p, std::size_t n)
{
    if (static_cast<std::size_t>(g.rows()) != n || static_cast<std::size_t>(g.cols()) != n)
        return "matrix " + matrix_text(g) + " is not " + std::to_string(n) + "x" + std::to_string(n);
    if (rank_mod(g, FieldPrime(p)) != static_cast<Eigen::Index>(n))
        return "matrix " + matrix_text(g) + " is singular mod " + std::to_string(p);
    return std::nullopt;
}

Polynomial parse_poly(const Ctx& ctx, const YAML::Node& node, const std::string& field, std::size_t n,
                      const FieldPrime& f)
{
    if (node.IsScalar()) {
        try {
            return parse_polynomial(node.Scalar(), n, f);
        } catch (const Error& e) {
            ctx.fail(node, field, e.what());
        }
    }
    if (!node.IsSequence())
        ctx.fail(node, field, "expected a polynomial string or a list of [coefficient, [exponents]] terms");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const auto t = node[i];
        const std::string tf = index_field(field, i);
        if (!t.IsSequence() || t.size() != 2 || !t[1].IsSequence())
            ctx.fail(t, tf, "expected [coefficient, [exponents]]");
        const auto c = ctx.scalar<long long>(t[0], tf, "an integer coefficient");
        if (t[1].size() != n)
            ctx.fail(t[1], tf, "expected " + std::to_string(n) + " exponents");
        std::vector<Exponent> e(n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto x = ctx.scalar<long long>(t[1][k], tf, "a nonnegative exponent");
            if (x < 0 || x > 60000)
                ctx.fail(t[1][k], tf, "exponent out of range");
            e[k] = static_cast<Exponent>(x);
        }
        terms.push_back({Monomial(std::move(e)), f.reduce(c)});
    }
    return Polynomial::from_terms(n, f, std::move(terms));
}

std::optional<std::string> element_problem(const Polynomial& f)
{
    if (f.is_zero() || !f.is_homogeneous() || f.degree() < 1)
        return "'" + f.to_string() + "' is not homogeneous of degree >= 1";
    return std::nullopt;
}

void require_keys(const Ctx& ctx, const YAML::Node& map, const std::string& field, const std::set<std::string>& allowed)
{
    for (auto it = map.begin(); it != map.end(); ++it) {
        const auto key = it->first.as<std::string>();
        if (!allowed.count(key))
            ctx.fail(it->first, field.empty() ? key : field + "." + key, "unknown field");
    }
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& source)
{
    const Ctx ctx{source};
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw InputError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                         ": " + e.msg);
    }
    if (!root.IsMap())
        ctx.fail(root, "scenario", "expected a mapping at the top level");
    require_keys(ctx, root, "",
                 {"name", "p", "n", "generators", "cutoff", "seed", "grading", "tasks", "carlson", "lifting",
                  "stabilizer", "coaction", "limits"});

    Scenario s;
    if (root["name"])
        s.name = ctx.scalar<std::string>(root["name"], "name", "a string");
    if (!root["p"])
        ctx.fail(root, "p", "missing");
    s.p = ctx.scalar<long long>(root["p"], "p", "an integer");
    if (s.p < 2 || !is_prime(s.p) || s.p >= 65536)
        ctx.fail(root["p"], "p", std::to_string(s.p) + " is not a supported prime");
    if (!root["n"])
        ctx.fail(root, "n", "missing");
    const auto n = ctx.scalar<long long>(root["n"], "n", "an integer");
    if (n < 1 || n > 16)
        ctx.fail(root["n"], "n", "must lie in 1..16");
    s.n = static_cast<std::size_t>(n);
    const FieldPrime f(s.p);

    if (root["generators"]) {
        const auto gens = root["generators"];
        if (!gens.IsSequence())
            ctx.fail(gens, "generators", "expected a list of matrices");
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const std::string gf = index_field("generators", i);
            Matrix m = parse_matrix(ctx, gens[i], gf, s.p, s.n);
            if (auto problem = generator_problem(m, s.p, s.n))
                ctx.fail(gens[i], gf, *problem);
            s.generators.push_back(std::move(m));
        }
    }
    if (root["cutoff"]) {
        s.cutoff = ctx.scalar<int>(root["cutoff"], "cutoff", "an integer");
        if (*s.cutoff < 1)
            ctx.fail(root["cutoff"], "cutoff", "must be >= 1");
    }
    if (root["seed"])
        s.seed = ctx.scalar<std::uint64_t>(root["seed"], "seed", "a nonnegative integer");
    if (root["grading"]) {
        const auto g = ctx.scalar<std::string>(root["grading"], "grading", "a string");
        if (g == "algebraic")
            s.grading = GradingConvention::algebraic;
        else if (g == "topological")
            s.grading = GradingConvention::topological;
        else
            ctx.fail(root["grading"], "grading", "expected 'algebraic' or 'topological'");
    }

    if (root["tasks"]) {
        const auto t = root["tasks"];
        if (!t.IsSequence())
            ctx.fail(t, "tasks", "expected a list of task names");
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto name = ctx.scalar<std::string>(t[i], index_field("tasks", i), "a task name");
            const auto& known = scenario_tasks();
            if (std::find(known.begin(), known.end(), name) == known.end())
                ctx.fail(t[i], index_field("tasks", i), "unknown task '" + name + "'");
            s.tasks.push_back(name);
        }
    } else {
        s.tasks = {"hilbert", "depth", "duflot"};
    }

    if (const auto c = root["carlson"]) {
        if (!c.IsMap())
            ctx.fail(c, "carlson", "expected a mapping");
        require_keys(ctx, c, "carlson", {"s"});
        if (const auto sv = c["s"]) {
            if (!sv.IsSequence())
                ctx.fail(sv, "carlson.s", "expected a list of subspace dimensions");
            for (std::size_t i = 0; i < sv.size(); ++i) {
                const auto v = ctx.scalar<long long>(sv[i], index_field("carlson.s", i), "an integer");
                if (v < 1 || v > n)
                    ctx.fail(sv[i], index_field("carlson.s", i),
                             "s = " + std::to_string(v) + " must lie in 1..n = " + std::to_string(n));
                s.carlson_s.push_back(static_cast<std::size_t>(v));
            }
        }
    }
    if (const auto l = root["lifting"]) {
        if (!l.IsSequence())
            ctx.fail(l, "lifting", "expected a list of {subspace, sequence}");
        for (std::size_t i = 0; i < l.size(); ++i) {
            const std::string lf = index_field("lifting", i);
            if (!l[i].IsMap() || !l[i]["subspace"] || !l[i]["sequence"])
                ctx.fail(l[i], lf, "expected a mapping with 'subspace' and 'sequence'");
            require_keys(ctx, l[i], lf, {"subspace", "sequence"});
            LiftingSpec spec;
            spec.subspace = parse_matrix(ctx, l[i]["subspace"], lf + ".subspace", s.p, s.n);
            const auto seq = l[i]["sequence"];
            if (!seq.IsSequence() || seq.size() == 0)
                ctx.fail(seq, lf + ".sequence", "expected a nonempty list of polynomials");
            for (std::size_t k = 0; k < seq.size(); ++k) {
                const std::string pf = index_field(lf + ".sequence", k);
                auto poly = parse_poly(ctx, seq[k], pf, s.n, f);
                if (auto problem = element_problem(poly))
                    ctx.fail(seq[k], pf, *problem);
                spec.sequence.push_back(std::move(poly));
            }
            s.lifting.push_back(std::move(spec));
        }
    }
    if (const auto st = root["stabilizer"]) {
        if (!st.IsSequence())
            ctx.fail(st, "stabilizer", "expected a list of subspaces");
        for (std::size_t i = 0; i < st.size(); ++i)
            s.stabilizer.push_back(parse_matrix(ctx, st[i], index_field("stabilizer", i), s.p, s.n));
    }
    if (const auto co = root["coaction"]) {
        if (!co.IsSequence())
            ctx.fail(co, "coaction", "expected a list of {subspace, degree | elements}");
        for (std::size_t i = 0; i < co.size(); ++i) {
            const std::string cf = index_field("coaction", i);
            if (!co[i].IsMap() || !co[i]["subspace"])
                ctx.fail(co[i], cf, "expected a mapping with 'subspace'");
            require_keys(ctx, co[i], cf, {"subspace", "degree", "elements"});
            CoactionSpec spec;
            spec.subspace = parse_matrix(ctx, co[i]["subspace"], cf + ".subspace", s.p, s.n);
            if (co[i]["degree"]) {
                spec.degree = ctx.scalar<int>(co[i]["degree"], cf + ".degree", "an integer");
                if (spec.degree < 1)
                    ctx.fail(co[i]["degree"], cf + ".degree", "must be >= 1");
            }
            if (const auto el = co[i]["elements"]) {
                if (!el.IsSequence())
                    ctx.fail(el, cf + ".elements", "expected a list of polynomials");
                for (std::size_t k = 0; k < el.size(); ++k) {
                    const std::string pf = index_field(cf + ".elements", k);
                    auto poly = parse_poly(ctx, el[k], pf, s.n, f);
                    if (auto problem = element_problem(poly))
                        ctx.fail(el[k], pf, *problem);
                    spec.elements.push_back(std::move(poly));
                }
            }
            if (spec.degree == 0 && spec.elements.empty())
                ctx.fail(co[i], cf, "give 'degree' or 'elements'");
            s.coaction.push_back(std::move(spec));
        }
    }
    if (const auto lim = root["limits"]) {
        if (!lim.IsMap())
            ctx.fail(lim, "limits", "expected a mapping");
        require_keys(ctx, lim, "limits", {"piece_cap", "subspace_cap"});
        if (lim["piece_cap"])
            s.piece_cap = ctx.scalar<std::size_t>(lim["piece_cap"], "limits.piece_cap", "a positive integer");
        if (lim["subspace_cap"])
            s.subspace_cap = ctx.scalar<std::size_t>(lim["subspace_cap"], "limits.subspace_cap", "a positive integer");
    }

    auto has = [&](const char* t) { return std::find(s.tasks.begin(), s.tasks.end(), t) != s.tasks.end(); };
    if (has("lifting") && s.lifting.empty())
        ctx.fail(root, "lifting", "task requested but no instances given");
    if (has("stabilizer") && s.stabilizer.empty())
        ctx.fail(root, "stabilizer", "task requested but no subspaces given");
    if (has("coaction") && s.coaction.empty())
        ctx.fail(root, "coaction", "task requested but no instances given");

    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError(path.string() + ": cannot read scenario file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

void validate_scenario(Scenario& s)
{
    if (s.p < 2 || s.p >= 65536 || !is_prime(s.p))
        throw InputError("p: " + std::to_string(s.p) + " is not a supported prime");
    if (s.n < 1 || s.n > 16)
        throw InputError("n: must lie in 1..16");
    const FieldPrime f(s.p);
    for (std::size_t i = 0; i < s.generators.size(); ++i) {
        s.generators[i] = reduce_mod(s.generators[i], f);
        if (auto problem = generator_problem(s.generators[i], s.p, s.n))
            throw InputError(index_field("generators", i) + ": " + *problem);
    }
    if (s.cutoff && *s.cutoff < 1)
        throw InputError("cutoff: must be >= 1");
    for (const auto& t : s.tasks) {
        const auto& known = scenario_tasks();
        if (std::find(known.begin(), known.end(), t) == known.end())
            throw InputError("tasks: unknown task '" + t + "'");
    }
    std::vector<std::string> ordered;
    for (const auto& t : scenario_tasks())
        if (std::find(s.tasks.begin(), s.tasks.end(), t) != s.tasks.end())
            ordered.push_back(t);
    s.tasks = std::move(ordered);
    for (auto v : s.carlson_s)
        if (v < 1 || v > s.n)
            throw InputError("carlson.s: s = " + std::to_string(v) + " must lie in 1..n = " + std::to_string(s.n));
    auto check_subspace = [&](const Matrix& m, const std::string& field) {
        if (static_cast<std::size_t>(m.cols()) != s.n && m.rows() > 0)
            throw InputError(field + ": basis vectors must have " + std::to_string(s.n) + " entries");
    };
    for (std::size_t i = 0; i < s.lifting.size(); ++i) {
        check_subspace(s.lifting[i].subspace, index_field("lifting", i));
        if (s.lifting[i].sequence.empty())
            throw InputError(index_field("lifting", i) + ".sequence: empty");
        for (const auto& e : s.lifting[i].sequence) {
            if (e.nvars() != s.n || static_cast<std::int64_t>(e.field().p()) != s.p)
                throw InputError(index_field("lifting", i) + ".sequence: wrong polynomial ring");
            if (auto problem = element_problem(e))
                throw InputError(index_field("lifting", i) + ".sequence: " + *problem);
        }
    }
    for (std::size_t i = 0; i < s.stabilizer.size(); ++i)
        check_subspace(s.stabilizer[i], index_field("stabilizer", i));
    for (std::size_t i = 0; i < s.coaction.size(); ++i) {
        check_subspace(s.coaction[i].subspace, index_field("coaction", i));
        if (s.coaction[i].degree < 0 || (s.coaction[i].degree == 0 && s.coaction[i].elements.empty()))
            throw InputError(index_field("coaction", i) + ": give a degree >= 1 or elements");
        for (const auto& e : s.coaction[i].elements)
            if (auto problem = element_problem(e))
                throw InputError(index_field("coaction", i) + ".elements: " + *problem);
    }
}

// ---------------------------------------------------------------- reports

int exit_code_for(const std::vector<VerdictStatus>& statuses, std::optional<Error::Kind> error)
{
    if (error) {
        switch (*error) {
        case Error::Kind::capacity: return exit_capacity;
        case Error::Kind::inconsistency: return exit_theorem_fail;
        default: return exit_input_error;
        }
    }
    const bool failed = std::find(statuses.begin(), statuses.end(), VerdictStatus::fail) != statuses.end();
    return failed ? exit_theorem_fail : exit_pass;
}

namespace {

json matrix_json(const Matrix& m)
{
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json polys_json(const std::vector<Polynomial>& ps)
{
    json out = json::array();
    for (const auto& p : ps)
        out.push_back(p.to_string());
    return out;
}

json scenario_echo(const Scenario& s)
{
    json j;
    j["name"] = s.name;
    j["p"] = s.p;
    j["n"] = s.n;
    j["generators"] = json::array();
    for (const auto& g : s.generators)
        j["generators"].push_back(matrix_json(g));
    j["cutoff"] = s.cutoff ? json(*s.cutoff) : json(nullptr);
    j["seed"] = s.seed;
    j["grading"] = s.grading == GradingConvention::algebraic ? "algebraic" : "topological";
    j["tasks"] = s.tasks;
    j["carlson"] = {{"s", s.carlson_s}};
    j["lifting"] = json::array();
    for (const auto& l : s.lifting)
        j["lifting"].push_back({{"subspace", matrix_json(l.subspace)}, {"sequence", polys_json(l.sequence)}});
    j["stabilizer"] = json::array();
    for (const auto& u : s.stabilizer)
        j["stabilizer"].push_back(matrix_json(u));
    j["coaction"] = json::array();
    for (const auto& c : s.coaction)
        j["coaction"].push_back(
            {{"subspace", matrix_json(c.subspace)}, {"degree", c.degree}, {"elements", polys_json(c.elements)}});
    j["limits"] = {{"piece_cap", s.piece_cap}, {"subspace_cap", s.subspace_cap}};
    return j;
}

struct Emitter {
    GradingConvention gc;

    int deg(int d) const { return displayed_degree(d, gc); }

    json series(const HilbertCoefficients& h) const
    {
        json out = json::array();
        for (std::size_t d = 0; d < h.size(); ++d)
            out.push_back({deg(static_cast<int>(d)), h[d]});
        return out;
    }

    json graded_polys(const std::vector<Polynomial>& ps) const
    {
        json out = json::array();
        for (const auto& p : ps)
            out.push_back({{"degree", deg(p.degree())}, {"polynomial", p.to_string()}});
        return out;
    }

    json koszul(const KoszulProfile& k) const
    {
        json j;
        j["cutoff"] = k.cutoff;
        j["internal_bound"] = deg(k.internal_bound);
        j["top_nonvanishing"] = k.top_nonvanishing;
        j["depth_claim"] = k.depth_claim();
        json h = json::array();
        for (const auto& [key, dim] : k.homology)
            if (dim != 0)
                h.push_back({{"index", key.first}, {"degree", deg(key.second)}, {"dimension", dim}});
        j["homology"] = std::move(h);
        return j;
    }

    json depth(const DepthReport& d) const
    {
        json j;
        j["depth"] = d.depth;
        j["agreement"] = d.agreement;
        j["hsop_source"] = d.hsop_source;
        j["seed"] = d.seed;
        j["hsop"] = graded_polys(d.koszul.hsop);
        j["certificate"] = {{"method", to_string(d.certificate.method)},
                            {"verified_up_to", d.certificate.verified_up_to},
                            {"sequence", graded_polys(d.certificate.sequence)}};
        j["koszul"] = koszul(d.koszul);
        j["koszul_rerun"] = koszul(d.koszul_rerun);
        j["freeness"] = {{"free", d.freeness.free},
                         {"window_vanishes", d.freeness.window_vanishes},
                         {"first_mismatch", d.freeness.first_mismatch ? json(deg(*d.freeness.first_mismatch))
                                                                      : json(nullptr)},
                         {"quotient_series", series(d.freeness.quotient_series)},
                         {"expected_quotient", series(d.freeness.expected_quotient)}};
        return j;
    }

    json verdict(const TheoremVerdict& v) const
    {
        json j;
        j["theorem"] = v.theorem;
        j["instance"] = v.instance;
        j["status"] = to_string(v.status);
        json q = json::object();
        for (const auto& [k, val] : v.quantities)
            q[k] = val;
        j["quantities"] = std::move(q);
        json c = json::object();
        for (const auto& [k, val] : v.cutoffs)
            c[k] = val;
        j["cutoffs"] = std::move(c);
        j["witnesses"] = v.witnesses;
        j["note"] = v.note;
        return j;
    }
};

const char* kind_name(Error::Kind k)
{
    switch (k) {
    case Error::Kind::structural: return "structural";
    case Error::Kind::capacity: return "capacity";
    case Error::Kind::precondition: return "precondition";
    case Error::Kind::unsupported: return "unsupported";
    case Error::Kind::input: return "input";
    case Error::Kind::inconsistency: return "inconsistency";
    }
    return "unknown";
}

const char* status_for(int code)
{
    switch (code) {
    case exit_pass: return "pass";
    case exit_theorem_fail: return "fail";
    case exit_capacity: return "capacity";
    default: return "input-error";
    }
}

bool flat(const json& j)
{
    if (j.is_primitive())
        return true;
    if (!j.is_array())
        return false;
    return std::all_of(j.begin(), j.end(), [](const json& e) {
        return e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const json& x) {
                                        return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(),
                                                                    [](const json& y) { return y.is_primitive(); }));
                                    }));
    });
}

// Indented like dump(2), but arrays of numbers and small nested arrays (matrices, series) stay on one line.
void write_json(std::string& out, const json& j, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    if (flat(j)) {
        out += j.dump(-1, ' ', false, json::error_handler_t::strict);
        return;
    }
    const bool obj = j.is_object();
    if (j.empty()) {
        out += obj ? "{}" : "[]";
        return;
    }
    out += obj ? "{\n" : "[\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first)
            out += ",\n";
        first = false;
        out += pad;
        if (obj)
            out += json(it.key()).dump() + ": ";
        write_json(out, it.value(), indent + 2);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + (obj ? "}" : "]");
}

std::string finish(json scenario, json results, json verdicts, int code, json error, json timings)
{
    json r;
    r["format_version"] = kReportFormatVersion;
    r["tool_version"] = kToolVersion;
    r["scenario"] = std::move(scenario);
    r["results"] = std::move(results);
    r["verdicts"] = std::move(verdicts);
    r["status"] = status_for(code);
    r["exit_code"] = code;
    if (!error.is_null())
        r["error"] = std::move(error);
    if (!timings.is_null())
        r["timings"] = std::move(timings);
    std::string out;
    write_json(out, r, 0);
    return out + "\n";
}

}  // namespace

Report run_scenario(const Scenario& scenario, const RunOptions& options)
{
    Scenario s = scenario;
    json echo;
    try {
        validate_scenario(s);
        echo = scenario_echo(s);
    } catch (const Error& e) {
        return error_report(e, "validate");
    }

    const Emitter em{s.grading};
    const FieldPrime field(s.p);
    json results = json::object();
    json verdicts = json::array();
    json timings = options.timings ? json::object() : json(nullptr);
    json error = nullptr;
    std::optional<Error::Kind> error_kind;
    std::vector<VerdictStatus> statuses;

    GroupPtr g;
    std::optional<InvariantRing> ring;
    int cached_degree = -1;
    int cutoff = 0;
    std::optional<DepthReport> depth;
    auto wants = [&](const char* t) { return std::find(s.tasks.begin(), s.tasks.end(), t) != s.tasks.end(); };

    auto phase = [&](const std::string& name, const std::function<void()>& body) -> bool {
        if (!error.is_null())
            return false;
        const auto start = std::chrono::steady_clock::now();
        try {
            body();
        } catch (const Error& e) {
            error = {{"phase", name}, {"kind", kind_name(e.kind())}, {"message", e.what()}};
            error_kind = e.kind();
        }
        if (options.timings) {
            const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
            timings[name] = std::round(ms.count() * 1000.0) / 1000.0;
        }
        return error.is_null();
    };
    auto record = [&](const TheoremVerdict& v) {
        verdicts.push_back(em.verdict(v));
        statuses.push_back(v.status);
    };
    auto need_depth = [&] {
        if (!depth) {
            depth = depth_report(*ring, cutoff, {s.seed, 24, s.piece_cap});
            results["depth"] = em.depth(*depth);
        }
    };

    phase("enumerate", [&] {
        g = MatrixGroup::enumerate(field, s.n, s.generators);
        const auto sylow = sylow_subgroup(g);
        results["group"] = {{"order", g->order()},
                            {"sylow_order", sylow.order()},
                            {"fixed_dim", fixed_subspace(sylow).dim()},
                            {"modular", g->order() % static_cast<std::size_t>(s.p) == 0}};
    });
    phase("invariants", [&] {
        if (options.cache_dir)
            ring = cache_load_best(*options.cache_dir, s.p, s.n, s.generators, g, options.log, s.piece_cap);
        if (ring) {
            cached_degree = ring->computed_up_to();
            if (options.log)
                *options.log << "cache: loaded invariants through degree " << cached_degree << "\n";
        } else {
            ring.emplace(g, s.piece_cap);
        }
    });
    phase("cutoff", [&] {
        cutoff = s.cutoff ? *s.cutoff : default_cutoff(g, s.piece_cap);
        results["cutoff"] = {{"value", cutoff}, {"source", s.cutoff ? "scenario" : "default"}};
    });
    if (wants("hilbert"))
        phase("hilbert", [&] {
            ring->compute_up_to(cutoff);
            results["hilbert"] = em.series(ring->hilbert(cutoff));
        });
    if (wants("invariants"))
        phase("generators", [&] {
            std::vector<Polynomial> gens;
            for (auto& gen : minimal_generators(*ring, cutoff))
                gens.push_back(std::move(gen.poly));
            results["generators"] = em.graded_polys(gens);
        });
    if (wants("dickson"))
        phase("dickson", [&] { results["dickson"] = em.graded_polys(dickson_invariants(field, s.n)); });
    if (wants("depth"))
        phase("depth", need_depth);
    if (wants("duflot"))
        phase("duflot", [&] {
            need_depth();
            record(duflot_bound_check(g, *depth));
        });
    if (wants("es"))
        phase("es", [&] {
            need_depth();
            record(es_comparison(g, *depth));
        });
    if (wants("lifting"))
        phase("lifting", [&] {
            ring->compute_up_to(cutoff);
            for (const auto& l : s.lifting)
                record(duflot_lifting_check(*ring, Subspace(field, s.n, l.subspace), l.sequence, cutoff));
        });
    if (wants("stabilizer"))
        phase("stabilizer", [&] {
            for (const auto& u : s.stabilizer)
                record(stabilizer_component_check(g, Subspace(field, s.n, u), cutoff, s.piece_cap));
        });
    if (wants("carlson"))
        phase("carlson", [&] {
            std::vector<std::size_t> dims = s.carlson_s;
            if (dims.empty())
                for (std::size_t k = 1; k <= s.n; ++k)
                    if (gaussian_binomial(s.p, s.n, k) <= static_cast<std::int64_t>(s.subspace_cap))
                        dims.push_back(k);
            const std::optional<int> d = depth ? std::optional<int>(depth->depth) : std::nullopt;
            for (auto k : dims)
                record(carlson_detection_check(g, k, cutoff, d, s.subspace_cap, s.piece_cap));
        });
    if (wants("coaction"))
        phase("coaction", [&] {
            const auto p = sylow_subgroup(g);
            json out = json::array();
            for (const auto& spec : s.coaction) {
                const Subspace c(field, s.n, spec.subspace);
                std::vector<Polynomial> elements = spec.elements;
                if (elements.empty()) {
                    InvariantRing pring(p.as_group(), s.piece_cap);
                    pring.compute_up_to(spec.degree);
                    for (int d = 1; d <= spec.degree; ++d)
                        for (auto& b : pring.basis_polynomials(d))
                            elements.push_back(std::move(b));
                }
                TheoremVerdict v;
                v.theorem = "comodule-identities";
                v.instance = describe_instance(g) + " C=" + c.to_string();
                std::int64_t counit = 0, coassoc = 0;
                json shown = json::array();
                for (const auto& e : elements) {
                    const bool a = counit_check(e, c, p);
                    const bool b = coassociativity_check(e, c, p);
                    counit += a;
                    coassoc += b;
                    if (!a || !b)
                        v.witnesses.push_back(e.to_string() + (a ? "" : " fails counit") + (b ? "" : " fails coassociativity"));
                    if (!spec.elements.empty())
                        shown.push_back({{"element", e.to_string()}, {"coaction", coaction(e, c, p).to_string()}});
                }
                v.quantities = {{"sylow_order", static_cast<std::int64_t>(p.order())},
                                {"elements", static_cast<std::int64_t>(elements.size())},
                                {"counit_pass", counit},
                                {"coassociativity_pass", coassoc}};
                if (spec.degree > 0)
                    v.cutoffs = {{"degree", spec.degree}};
                v.status = v.witnesses.empty() ? VerdictStatus::pass : VerdictStatus::fail;
                if (elements.empty())
                    v.status = VerdictStatus::vacuous;
                record(v);
                out.push_back({{"subspace", c.to_string()}, {"coactions", std::move(shown)}});
            }
            results["coaction"] = std::move(out);
        });

    if (options.cache_dir && ring && ring->computed_up_to() > cached_degree && ring->computed_up_to() >= 1) {
        try {
            cache_store(*options.cache_dir, cache_key(s.p, s.n, s.generators, ring->computed_up_to()), *ring);
        } catch (const std::exception& e) {
            if (options.log)
                *options.log << "warning: cache store failed: " << e.what() << "\n";
        }
    }

    Report r;
    r.exit_code = exit_code_for(statuses, error_kind);
    r.json = finish(std::move(echo), std::move(results), std::move(verdicts), r.exit_code, std::move(error),
                    std::move(timings));
    return r;
}

Report error_report(const Error& e, const std::string& phase)
{
    Report r;
    r.exit_code = exit_code_for({}, e.kind());
    r.json = finish(nullptr, json::object(), json::array(), r.exit_code,
                    {{"phase", phase}, {"kind", kind_name(e.kind())}, {"message", e.what()}}, nullptr);
    return r;
}

Report run_scenario(const std::filesystem::path& path, const RunOptions& options)
{
    try {
        return run_scenario(load_scenario(path), options);
    } catch (const Error& e) {
        return error_report(e, "parse");
    }
}

// ---------------------------------------------------------------- cache

std::uint64_t generator_hash(std::int64_t p, std::size_t n, const std::vector<Matrix>& generators)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&](std::int64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xffu;
            h *= 0x100000001b3ull;
        }
    };
    mix(p);
    mix(static_cast<std::int64_t>(n));
    mix(static_cast<std::int64_t>(generators.size()));
    for (const auto& g : generators)
        for (Eigen::Index r = 0; r < g.rows(); ++r)
            for (Eigen::Index c = 0; c < g.cols(); ++c)
                mix(((g(r, c) % p) + p) % p);
    return h;
}

CacheKey cache_key(std::int64_t p, std::size_t n, const std::vector<Matrix>& generators, int degree)
{
    return {p, n, generator_hash(p, n, generators), degree};
}

namespace {

std::string hex64(std::uint64_t v)
{
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

std::string key_prefix(int version, std::int64_t p, std::size_t n, std::uint64_t hash)
{
    return "invariants-v" + std::to_string(version) + "-p" + std::to_string(p) + "-n" + std::to_string(n) + "-" +
           hex64(hash) + "-d";
}

}  // namespace

std::string CacheKey::file_name() const
{
    return key_prefix(version, p, n, generator_hash) + std::to_string(degree) + ".json";
}

void cache_store(const std::filesystem::path& dir, const CacheKey& key, const InvariantRing& ring)
{
    if (ring.computed_up_to() < key.degree)
        throw PreconditionError("cache_store: ring computed through degree " + std::to_string(ring.computed_up_to()) +
                                ", key asks for " + std::to_string(key.degree));
    json j;
    j["format_version"] = key.version;
    j["p"] = key.p;
    j["n"] = key.n;
    j["generator_hash"] = hex64(key.generator_hash);
    j["degree"] = key.degree;
    j["grading"] = ring.grading().block_map();
    json pieces = json::array();
    for (const auto& [alpha, rows] : ring.pieces()) {
        if (total_degree(alpha) > key.degree)
            continue;
        json jr = json::array();
        for (const auto& row : rows) {
            json entries = json::array();
            for (const auto& e : row)
                entries.push_back({e.idx, e.val});
            jr.push_back(std::move(entries));
        }
        pieces.push_back({{"multidegree", alpha}, {"rows", std::move(jr)}});
    }
    j["pieces"] = std::move(pieces);

    std::filesystem::create_directories(dir);
    const auto target = dir / key.file_name();
    const auto tmp = dir / (key.file_name() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw InputError("cache_store: cannot write " + tmp.string());
        out << j.dump() << "\n";
        out.flush();
        if (!out)
            throw InputError("cache_store: short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::optional<InvariantRing> cache_load(const std::filesystem::path& dir, const CacheKey& key, const GroupPtr& group,
                                        std::ostream* log, std::size_t piece_cap)
{
    const auto path = dir / key.file_name();
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        return std::nullopt;
    auto corrupt = [&](const std::string& why) -> std::optional<InvariantRing> {
        if (log)
            *log << "warning: ignoring corrupt cache entry " << path.string() << ": " << why << "\n";
        return std::nullopt;
    };
    try {
        std::ifstream in(path, std::ios::binary);
        const json j = json::parse(in);
        if (!j.is_object() || !j.contains("format_version"))
            return corrupt("no format version");
        if (j.at("format_version").get<int>() != key.version)
            return std::nullopt;
        if (j.at("p").get<std::int64_t>() != key.p || j.at("n").get<std::size_t>() != key.n ||
            j.at("generator_hash").get<std::string>() != hex64(key.generator_hash) ||
            j.at("degree").get<int>() != key.degree)
            return corrupt("header does not match the key");
        if (static_cast<std::int64_t>(group->field().p()) != key.p || group->n() != key.n)
            return corrupt("group does not match the key");
        const Grading grading(j.at("grading").get<std::vector<int>>());
        if (!(grading == group->stable_grading()))
            return corrupt("grading does not match the group");
        const MonomialSpace space(grading, group->field(), piece_cap);
        std::map<Multidegree, std::vector<SparseVec>> pieces;
        for (const auto& piece : j.at("pieces")) {
            auto alpha = piece.at("multidegree").get<Multidegree>();
            if (alpha.size() != static_cast<std::size_t>(grading.blocks()) || total_degree(alpha) > key.degree ||
                std::any_of(alpha.begin(), alpha.end(), [](int a) { return a < 0; }))
                return corrupt("bad multidegree");
            const std::size_t dim = space.piece(alpha).size();
            std::vector<SparseVec> rows;
            for (const auto& jr : piece.at("rows")) {
                SparseVec row;
                for (const auto& e : jr) {
                    const auto idx = e.at(0).get<std::uint32_t>();
                    const auto val = e.at(1).get<std::int64_t>();
                    if (idx >= dim || val <= 0 || val >= key.p || (!row.empty() && row.back().idx >= idx))
                        return corrupt("bad row entry");
                    row.push_back({idx, static_cast<Coeff>(val)});
                }
                rows.push_back(std::move(row));
            }
            if (!pieces.emplace(std::move(alpha), std::move(rows)).second)
                return corrupt("duplicate piece");
        }
        return InvariantRing::from_pieces(group, grading, std::move(pieces), key.degree, piece_cap);
    } catch (const std::exception& e) {
        return corrupt(e.what());
    }
}

std::optional<InvariantRing> cache_load_best(const std::filesystem::path& dir, std::int64_t p, std::size_t n,
                                             const std::vector<Matrix>& generators, const GroupPtr& group,
                                             std::ostream* log, std::size_t piece_cap)
{
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
        return std::nullopt;
    const std::uint64_t hash = generator_hash(p, n, generators);
    const std::string prefix = key_prefix(kCacheFormatVersion, p, n, hash);
    std::vector<int> degrees;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind(prefix, 0) != 0 || name.size() <= prefix.size() + 5 ||
            name.compare(name.size() - 5, 5, ".json") != 0)
            continue;
        const std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - 5);
        if (digits.empty() || digits.size() > 6 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            continue;
        degrees.push_back(std::stoi(digits));
    }
    std::sort(degrees.rbegin(), degrees.rend());
    for (int d : degrees)
        if (auto ring = cache_load(dir, {p, n, hash, d}, group, log, piece_cap))
            return ring;
    return std::nullopt;
}

}  // namespace modinv
