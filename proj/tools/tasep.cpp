// tasep: command-line front end for the library.
//
//   tasep weight 1011010
//   tasep collapse --n 5 --S 0,1 --T 1
//   tasep stationary --n 4 --a 1 --b 1 --compare formula exact
//   tasep simulate --n 6 --a 2 --b 2 --steps 10000000
//   tasep sample --n 8 --a 2 --b 2 --samples 1000000
//   tasep line --p 0.3 --q 0.2 --window 5000
//   tasep conjectures --n 6
//   tasep verify
//
// JSON is written by default; --format csv gives a flat projection with the
// configuration in '#' header lines. Exit status: 0 all checks passed,
// 1 a check failed, 2 bad usage or infeasible input.

#include "tasep/conjectures.hpp"
#include "tasep/io.hpp"
#include "tasep/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace tasep;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

constexpr double kDefaultTvTolerance = 0.02;

struct Options {
    std::size_t n = 0;
    std::size_t a = 0;
    std::size_t b = 0;
    std::vector<int> cards;
    double p = 0.3;
    double q = 0.2;
    std::int64_t window = 5000;
    std::int64_t margin = kDefaultMargin;
    std::uint64_t steps = 10'000'000;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = kDefaultSeed;
    std::string mode;
    std::string format = "json";
    std::string out;

    // command specific
    std::string sequence;
    bool trees = false;
    std::string geometry = "cycle";
    std::vector<std::int64_t> seeds, antis;
    std::int64_t lo = 0, hi = -1;
    std::vector<std::string> compare;
    std::size_t replicates = kLineReplicates;
    std::size_t max_classes = 4;
    double tolerance = kDefaultTvTolerance;
    std::vector<int> only;
};

// The output of one run: the JSON document plus its CSV projection.
struct Report {
    Json doc = Json::object();
    std::string csv_body;
    bool passed = true;

    void check(const std::string& name, bool ok)
    {
        doc["checks"].push_back({{"name", name}, {"passed", ok}});
        passed = passed && ok;
    }
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

Composition composition_from_cards(const std::vector<int>& cards)
{
    Composition comp;
    for (int c : cards) {
        if (c < 1 || c > 9) throw UsageError("--cards values must lie in 1..9");
        if (comp.size() < static_cast<std::size_t>(c)) comp.resize(static_cast<std::size_t>(c), 0);
        ++comp[static_cast<std::size_t>(c - 1)];
    }
    return comp;
}

std::string card_word(const std::vector<int>& cards)
{
    std::string w;
    for (int c : cards) w += static_cast<char>('0' + c);
    return w;
}

bool three_type(const Options& o) { return o.cards.empty(); }

void require_three_type_sizes(const Options& o)
{
    if (o.n == 0) throw UsageError("--n is required (or give --cards)");
    if (o.a + o.b > o.n) throw UsageError("a + b = " + std::to_string(o.a + o.b) + " exceeds N = " + std::to_string(o.n));
}

Json config_json(const std::string& command, const Options& o)
{
    Json c = {{"command", command}};
    if (three_type(o)) {
        c["N"] = o.n;
        c["a"] = o.a;
        c["b"] = o.b;
    } else {
        c["cards"] = o.cards;
        c["composition"] = composition_from_cards(o.cards);
        c["N"] = o.cards.size();
    }
    c["p"] = o.p;
    c["q"] = o.q;
    c["L"] = o.window;
    c["M"] = o.margin;
    c["steps"] = o.steps;
    c["samples"] = o.samples;
    c["seed"] = o.seed;
    c["mode"] = o.mode;
    c["format"] = o.format;
    return c;
}

// ---------------------------------------------------------------------------

Report cmd_weight(const Options& o)
{
    Report r;
    BinarySequence a;
    try {
        a = BinarySequence(o.sequence);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    r.doc["sequence"] = a.str();
    r.doc["weight"] = weight(a).get_str();
    std::ostringstream csv;
    csv << "quantity,value\nweight," << weight(a).get_str() << '\n';
    if (!a.empty()) {
        const auto t = weight_identity_terms(a);
        auto optional_text = [](const std::optional<BinarySequence>& x) {
            return x ? Json(x->str()) : Json(nullptr);
        };
        Json splits = Json::array();
        for (const auto& [x, y] : t.splits) splits.push_back({x.str(), y.str()});
        Json terms = Json::array();
        for (const auto& x : t.terms()) terms.push_back(x.get_str());
        r.doc["identity"] = {{"without_trailing_zero", optional_text(t.without_trailing_zero)},
                             {"without_leading_one", optional_text(t.without_leading_one)},
                             {"splits", splits},
                             {"terms", terms},
                             {"total", t.total().get_str()}};
        for (const auto& x : t.terms()) csv << "term," << x.get_str() << '\n';
        r.check("identity total equals weight", t.total() == weight(a));
    }
    if (o.trees) {
        Json trees = Json::array();
        for (const auto& b : enumerate_dominated(a)) {
            const auto tree = decode(a, b);
            trees.push_back({{"g", b.str()}, {"tree", tree.str()}});
            csv << "tree," << tree.str() << '\n';
        }
        r.doc["trees"] = trees;
        r.check("encoding trees counted by weight", Natural(static_cast<unsigned long>(trees.size())) == weight(a));
    }
    r.csv_body = csv.str();
    return r;
}

Report cmd_collapse(const Options& o)
{
    Report r;
    SitePair pair{o.seeds, o.antis};
    const bool dual = o.mode == "dual";
    if (!o.mode.empty() && o.mode != "collapse" && !dual) throw UsageError("--mode must be collapse or dual");
    std::ostringstream csv;
    csv << "position,symbol,criterion\n";
    try {
        if (o.geometry == "cycle") {
            if (o.n == 0) throw UsageError("--n is required for a cycle");
            const auto state = dual ? dual_collapse_cycle(pair, o.n) : collapse_cycle(pair, o.n);
            r.doc["state"] = state.str();
            if (!dual) {
                bool agree = true;
                for (std::size_t i = 0; i < o.n; ++i) {
                    const bool crit = particle_criterion(i, pair, o.n);
                    agree = agree && crit == (state[i] == kParticle);
                    csv << i << ',' << state[i] << ',' << crit << '\n';
                }
                r.check("interval criterion agrees at every site", agree);
            } else {
                for (std::size_t i = 0; i < o.n; ++i) csv << i << ',' << state[i] << ",\n";
            }
        } else if (o.geometry == "line") {
            if (dual) throw UsageError("dual collapse is defined on the cycle only");
            const LineWindow w{o.lo, o.hi};
            if (w.size() == 0) throw UsageError("--lo/--hi give an empty window");
            const auto lc = collapse_line_window(pair, w);
            r.doc["window"] = {o.lo, o.hi};
            r.doc["state"] = lc.state.str();
            r.doc["dropped"] = lc.dropped;
            bool agree = true;
            for (std::int64_t x = w.lo; x <= w.hi; ++x) {
                const char sym = lc.state[static_cast<std::size_t>(x - w.lo)];
                const bool crit = particle_criterion(x, pair, w);
                agree = agree && crit == (sym == kParticle);
                csv << x << ',' << sym << ',' << crit << '\n';
            }
            r.check("interval criterion agrees at every site", agree);
        } else {
            throw UsageError("--geometry must be cycle or line");
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    r.doc["S"] = o.seeds;
    r.doc["T"] = o.antis;
    r.csv_body = csv.str();
    return r;
}

ExactDistribution stationary_by_mode(const Options& o, const std::string& mode)
{
    if (!three_type(o)) {
        if (mode != "exact") throw UsageError("with --cards only --mode exact is available");
        return generator_stationary(composition_from_cards(o.cards));
    }
    require_three_type_sizes(o);
    if (mode == "formula") return formula_distribution(o.n, o.a, o.b);
    if (mode == "exact") return generator_stationary(o.n, o.a, o.b);
    if (mode == "pushforward") return collapse_pushforward(o.n, o.a, o.b);
    if (mode == "dual") return dual_collapse_pushforward(o.n, o.a, o.b);
    throw UsageError("unknown mode '" + mode + "'; expected formula, exact, pushforward or dual");
}

Report cmd_stationary(const Options& o)
{
    Report r;
    if (!o.compare.empty()) {
        if (o.compare.size() != 2) throw UsageError("--compare takes two modes");
        const auto x = stationary_by_mode(o, o.compare[0]);
        const auto y = stationary_by_mode(o, o.compare[1]);
        const auto diff = distribution_diff(x, y);
        r.doc["compare"] = o.compare;
        r.doc["result"] = diff.empty() ? "identical" : "different";
        r.doc["differences"] = diff;
        r.check(o.compare[0] + " equals " + o.compare[1], diff.empty());
        std::ostringstream csv;
        csv << "state,p_" << o.compare[0] << ",p_" << o.compare[1] << '\n';
        std::set<std::string> keys;
        for (const auto& [s, _] : x.entries) keys.insert(s);
        for (const auto& [s, _] : y.entries) keys.insert(s);
        for (const auto& s : keys) {
            csv << s << ',' << fraction_string(x.probability(s)) << ',' << fraction_string(y.probability(s)) << '\n';
        }
        r.csv_body = csv.str();
        return r;
    }
    const std::string mode = o.mode.empty() ? (three_type(o) ? "formula" : "exact") : o.mode;
    const auto d = stationary_by_mode(o, mode);
    r.doc["distribution"] = to_json(d);
    r.doc["min_probability"] = fraction_string(d.min_probability());
    r.check("probabilities sum to 1", d.total() == 1);
    if (d.composition == Composition{1, 1, 1, 1}) {
        const auto x = d.probability("1324"), y = d.probability("1423");
        r.doc["mu_1324"] = fraction_string(x);
        r.doc["mu_1423"] = fraction_string(y);
        r.doc["mu_1324_differs_from_mu_1423"] = x != y;
    }
    r.csv_body = to_csv(d);
    return r;
}

Json tally_report(const Tally& t, const ExactDistribution& exact)
{
    Json rows = Json::array();
    const double total = static_cast<double>(tally_total(t));
    for (const auto& [s, p] : exact.entries) {
        auto it = t.find(s);
        const std::uint64_t c = it == t.end() ? 0 : it->second;
        rows.push_back({{"state", s}, {"count", c}, {"empirical", static_cast<double>(c) / total}, {"exact", fraction_string(p)}});
    }
    return rows;
}

std::string tally_csv(const Tally& t, const ExactDistribution& exact)
{
    std::ostringstream csv;
    csv << "state,count,empirical,exact\n";
    const double total = static_cast<double>(tally_total(t));
    for (const auto& [s, p] : exact.entries) {
        auto it = t.find(s);
        const std::uint64_t c = it == t.end() ? 0 : it->second;
        csv << s << ',' << c << ',' << static_cast<double>(c) / total << ',' << p.get_d() << '\n';
    }
    return csv.str();
}

Report cmd_simulate(const Options& o)
{
    Report r;
    Tally tally;
    ExactDistribution exact;
    if (three_type(o)) {
        require_three_type_sizes(o);
        // Start from the block state; relabel card words back to 1/*/0.
        const CycleState start(std::string(o.a, kParticle) + std::string(o.n - o.a - o.b, kEmpty) +
                               std::string(o.b, kAnti));
        for (const auto& [s, k] : simulate_chain(to_cards(start), o.steps, o.seed)) {
            tally[to_cycle_state(CardState(s)).str()] += k;
        }
        exact = formula_distribution(o.n, o.a, o.b);
    } else {
        tally = simulate_chain(CardState(card_word(o.cards)), o.steps, o.seed);
        exact = generator_stationary(composition_from_cards(o.cards));
    }
    const double tv = total_variation(tally, exact);
    r.doc["tally"] = tally_report(tally, exact);
    r.doc["tv"] = tv;
    r.doc["tolerance"] = o.tolerance;
    r.check("total variation within tolerance", tv < o.tolerance);
    r.csv_body = tally_csv(tally, exact);
    return r;
}

Report cmd_sample(const Options& o)
{
    Report r;
    require_three_type_sizes(o);
    const auto tally = sample_collapsed_uniform(o.n, o.a, o.b, o.samples, o.seed);
    const auto exact = formula_distribution(o.n, o.a, o.b);
    const double tv = total_variation(tally, exact);
    r.doc["tally"] = tally_report(tally, exact);
    r.doc["tv"] = tv;
    r.doc["tolerance"] = o.tolerance;
    r.check("total variation within tolerance", tv < o.tolerance);
    r.csv_body = tally_csv(tally, exact);
    return r;
}

Json estimate_json(const Estimate& e, double target)
{
    return {{"mean", e.mean}, {"std_error", e.std_error}, {"target", target}, {"z", e.z(target)}};
}

Report cmd_line(const Options& o)
{
    Report r;
    LineParams params;
    params.p = o.p;
    params.q = o.q;
    params.half_width = o.window;
    params.margin = o.margin;
    params.seed = o.seed;
    try {
        params.require_three_density_regime();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const std::string mode = o.mode.empty() ? "all" : o.mode;
    const std::set<std::string> modes{"all", "densities", "gaps", "tail", "factoring", "margin"};
    if (!modes.contains(mode)) throw UsageError("--mode must be one of all, densities, gaps, tail, factoring, margin");
    auto want = [&](const char* m) { return mode == "all" || mode == m; };
    std::ostringstream csv;
    csv << "quantity,value,std_error,target,z\n";

    if (want("densities")) {
        const auto d = line_densities(params, o.replicates);
        const double p = o.p, q = o.q;
        r.doc["densities"] = {{"replicates", o.replicates},
                              {"particle", estimate_json(d.particle, p)},
                              {"anti", estimate_json(d.anti, q)},
                              {"empty", estimate_json(d.empty, 1 - p - q)},
                              {"particle_pair", estimate_json(d.particle_pair, p * p)}};
        for (auto [name, e, target] : {std::tuple{"particle", d.particle, p}, {"anti", d.anti, q},
                                       {"empty", d.empty, 1 - p - q}, {"particle_pair", d.particle_pair, p * p}}) {
            csv << name << ',' << e.mean << ',' << e.std_error << ',' << target << ',' << e.z(target) << '\n';
            r.check(std::string(name) + " density within 3 sigma", std::abs(e.z(target)) < kDensitySigmas);
        }
    }
    if (want("gaps")) {
        const auto gaps = gap_statistics(params, o.samples);
        const auto law = hitting_time_law(params, 400);
        const double tv = gap_law_distance(gaps, law);
        r.doc["gaps"] = {{"histogram", to_json(gaps)}, {"tv", tv}, {"law_residual", law.residual}};
        csv << "gap_tv," << tv << ",," << kGapTvTolerance << ",\n";
        r.check("gap law within TV 0.02", tv < kGapTvTolerance);
    }
    if (want("tail")) {
        const auto h = displacement_tail(params, o.samples);
        const auto fit = fit_tail(h);
        r.doc["tail"] = {{"histogram", to_json(h)},
                         {"slope", fit.slope},
                         {"intercept", fit.intercept},
                         {"points", fit.points},
                         {"monotone", fit.monotone}};
        csv << "tail_slope," << fit.slope << ",,0,\n";
        r.check("displacement tail decays", fit.points >= 2 && fit.slope < 0);
    }
    if (want("factoring")) {
        Json reports = Json::array();
        for (std::size_t w : {1, 2}) {
            const auto f = factoring_check(params, o.samples, w);
            Json cells = Json::array();
            for (const auto& c : f.cells) {
                cells.push_back({{"left", c.left}, {"right", c.right}, {"count", c.count},
                                 {"joint", c.joint}, {"product", c.product}, {"z", c.z}});
            }
            reports.push_back({{"width", w}, {"samples", f.samples}, {"max_abs_z", f.max_abs_z},
                               {"skipped_cells", f.skipped_cells}, {"cells", cells}});
            csv << "factoring_max_abs_z_w" << w << ',' << f.max_abs_z << ",," << kFactoringSigmas << ",\n";
            r.check("factoring within 5 sigma, width " + std::to_string(w), f.max_abs_z < kFactoringSigmas);
        }
        r.doc["factoring"] = reports;
    }
    if (want("margin")) {
        const auto m = margin_adequacy(params, o.replicates);
        r.doc["margin"] = {{"doubled_margin", 2 * o.margin}, {"max_abs_z", m.max_abs_z}};
        csv << "margin_max_abs_z," << m.max_abs_z << ",," << kDensitySigmas << ",\n";
        r.check("doubling the margin changes nothing beyond 3 sigma", m.max_abs_z < kDensitySigmas);
    }
    r.csv_body = csv.str();
    return r;
}

std::string composition_text(const Composition& c)
{
    std::string s;
    for (auto k : c) s += (s.empty() ? "" : "-") + std::to_string(k);
    return s;
}

Report cmd_conjectures(const Options& o)
{
    Report r;
    std::vector<Composition> comps;
    if (!o.cards.empty()) {
        comps.push_back(composition_from_cards(o.cards));
    } else {
        const std::size_t top = o.n == 0 ? 6 : o.n;
        for (std::size_t n = 1; n <= top; ++n) {
            for (auto& c : compositions(n, o.max_classes)) comps.push_back(std::move(c));
        }
    }
    std::ostringstream csv;
    csv << "composition,N,min_probability,least_likely,product_formula,integrality\n";
    Json rows = Json::array();
    for (const auto& comp : comps) {
        const auto rep = check_conjectures(comp);
        Json readings = Json::array();
        for (const auto& s : rep.readings) {
            readings.push_back({{"name", s.name}, {"s", s.s}, {"predicted", fraction_string(s.predicted)}, {"matches", s.matches}});
        }
        rows.push_back({{"composition", comp},
                        {"N", rep.n},
                        {"min_probability", fraction_string(rep.min_probability)},
                        {"argmin", rep.argmin},
                        {"expected_argmin", rep.expected_argmin},
                        {"least_likely", verdict_name(rep.least_likely)},
                        {"s_readings", readings},
                        {"product_formula", verdict_name(rep.product_formula)},
                        {"non_integral", rep.non_integral},
                        {"integrality", verdict_name(rep.integrality)}});
        csv << composition_text(comp) << ',' << rep.n << ',' << fraction_string(rep.min_probability) << ','
            << verdict_name(rep.least_likely) << ',' << verdict_name(rep.product_formula) << ','
            << verdict_name(rep.integrality) << '\n';
        const std::string tag = " for " + composition_text(comp);
        r.check("least likely states" + tag, rep.least_likely != Verdict::fail);
        r.check("product formula" + tag, rep.product_formula != Verdict::fail);
        r.check("integrality" + tag, rep.integrality != Verdict::fail);
    }
    r.doc["table"] = rows;
    r.csv_body = csv.str();
    return r;
}

Report cmd_verify(const Options& o)
{
    Report r;
    Json results = Json::array();
    std::ostringstream csv;
    csv << "id,title,passed,seconds,time_limit\n";
    for (const auto& crit : acceptance_criteria()) {
        if (!o.only.empty() && std::ranges::find(o.only, crit.id) == o.only.end()) continue;
        const auto res = run_criterion(crit);
        std::fprintf(stderr, "[%s] %2d %s (%.2f s)\n", res.passed() ? "PASS" : "FAIL", res.id, res.title.c_str(),
                     res.seconds);
        results.push_back({{"id", res.id}, {"title", res.title}, {"passed", res.passed()},
                           {"seconds", res.seconds}, {"time_limit", res.time_limit}, {"detail", res.detail}});
        csv << res.id << ",\"" << res.title << "\"," << res.passed() << ',' << res.seconds << ',' << res.time_limit << '\n';
        r.passed = r.passed && res.passed();
    }
    r.doc["criteria"] = results;
    r.csv_body = csv.str();
    return r;
}

void emit(const Options& o, const Json& config, Report& report)
{
    std::string text;
    if (o.format == "csv") {
        std::ostringstream out;
        for (const auto& [k, v] : config.items()) out << "# " << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        out << "# passed=" << (report.passed ? "true" : "false") << '\n';
        out << report.csv_body;
        text = out.str();
    } else {
        Json doc = {{"config", config}, {"passed", report.passed}};
        if (!report.doc.contains("checks")) doc["checks"] = Json::array();
        for (auto& [k, v] : report.doc.items()) doc[k] = v;
        text = doc.dump(2) + "\n";
    }
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out);
        if (!f) throw UsageError("cannot open --out file " + o.out);
        f << text;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-type TASEP on the cycle and the line: weights, collapsing, exact stationary laws, simulation"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", o.out, "Write output to this file instead of stdout");
    };
    auto sizes = [&](CLI::App* cmd) {
        cmd->add_option("--n", o.n, "Cycle length N");
        cmd->add_option("--a", o.a, "Number of particles");
        cmd->add_option("--b", o.b, "Number of anti-particles");
    };
    auto cards = [&](CLI::App* cmd) {
        cmd->add_option("--cards", o.cards, "Card values 1..9, comma separated (larger is faster)")->delimiter(',');
    };
    auto seed = [&](CLI::App* cmd) { cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str(); };

    auto* weight_cmd = app.add_subcommand("weight", "Weight W(A) and its recursive decomposition");
    weight_cmd->add_option("sequence", o.sequence, "Binary sequence over {0,1}; may be empty");
    weight_cmd->add_flag("--trees", o.trees, "List the trees encoding the sequence");
    common(weight_cmd);

    auto* collapse_cmd = app.add_subcommand("collapse", "Collapse seed set S and anti-particle set T");
    collapse_cmd->add_option("--geometry", o.geometry, "cycle or line")->capture_default_str();
    collapse_cmd->add_option("--n", o.n, "Cycle length");
    collapse_cmd->add_option("--S", o.seeds, "Seed positions")->delimiter(',');
    collapse_cmd->add_option("--T", o.antis, "Anti-particle positions")->delimiter(',');
    collapse_cmd->add_option("--lo", o.lo, "Line window left end");
    collapse_cmd->add_option("--hi", o.hi, "Line window right end");
    collapse_cmd->add_option("--mode", o.mode, "collapse (default) or dual");
    common(collapse_cmd);

    auto* stationary_cmd = app.add_subcommand("stationary", "Exact stationary distribution");
    sizes(stationary_cmd);
    cards(stationary_cmd);
    stationary_cmd->add_option("--mode", o.mode, "formula, exact, pushforward or dual");
    stationary_cmd->add_option("--compare", o.compare, "Compare two modes")->expected(2);
    common(stationary_cmd);

    auto* simulate_cmd = app.add_subcommand("simulate", "Run the card chain and compare with the exact law");
    sizes(simulate_cmd);
    cards(simulate_cmd);
    simulate_cmd->add_option("--steps", o.steps, "Chain steps")->capture_default_str();
    simulate_cmd->add_option("--tolerance", o.tolerance, "TV tolerance")->capture_default_str();
    seed(simulate_cmd);
    common(simulate_cmd);

    auto* sample_cmd = app.add_subcommand("sample", "Collapse uniform random sets and compare with the formula");
    sizes(sample_cmd);
    sample_cmd->add_option("--samples", o.samples, "Number of samples")->capture_default_str();
    sample_cmd->add_option("--tolerance", o.tolerance, "TV tolerance")->capture_default_str();
    seed(sample_cmd);
    common(sample_cmd);

    auto* line_cmd = app.add_subcommand("line", "Collapse i.i.d. sets on a window of Z");
    line_cmd->add_option("--p", o.p, "Seed density")->capture_default_str();
    line_cmd->add_option("--q", o.q, "Anti-particle density")->capture_default_str();
    line_cmd->add_option("--window", o.window, "Half width L of the central window")->capture_default_str();
    line_cmd->add_option("--margin", o.margin, "Extra margin M on each side")->capture_default_str();
    line_cmd->add_option("--samples", o.samples, "Gaps, seeds or conditioned sites per experiment");
    line_cmd->add_option("--replicates", o.replicates, "Replicates for density estimates")->capture_default_str();
    line_cmd->add_option("--mode", o.mode, "all, densities, gaps, tail, factoring or margin");
    seed(line_cmd);
    common(line_cmd);

    auto* conj_cmd = app.add_subcommand("conjectures", "Multi-class checks on small cycles");
    conj_cmd->add_option("--n", o.n, "Largest cycle length (default 6)");
    conj_cmd->add_option("--classes", o.max_classes, "Largest number of classes")->capture_default_str();
    cards(conj_cmd);
    common(conj_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Run the full acceptance suite");
    verify_cmd->add_option("--only", o.only, "Run only these criteria")->delimiter(',');
    common(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (line_cmd->parsed() && line_cmd->count("--samples") == 0) o.samples = 100'000;

    auto* cmd = app.get_subcommands().front();
    try {
        Report report;
        const std::string name = cmd->get_name();
        if (name == "weight") report = cmd_weight(o);
        else if (name == "collapse") report = cmd_collapse(o);
        else if (name == "stationary") report = cmd_stationary(o);
        else if (name == "simulate") report = cmd_simulate(o);
        else if (name == "sample") report = cmd_sample(o);
        else if (name == "line") report = cmd_line(o);
        else if (name == "conjectures") report = cmd_conjectures(o);
        else report = cmd_verify(o);

        Json config = config_json(name, o);
        if (name == "collapse") {
            config["geometry"] = o.geometry;
            if (o.geometry == "line") config["window"] = {o.lo, o.hi};
        }
        if (name == "line") config["replicates"] = o.replicates;
        if (name == "conjectures") config["classes"] = o.max_classes;
        if (name == "simulate" || name == "sample") config["tolerance"] = o.tolerance;
        emit(o, config, report);
        if (!report.passed) {
            std::cerr << "check failed:";
            for (const auto& c : report.doc.value("checks", Json::array())) {
                if (!c["passed"].get<bool>()) std::cerr << ' ' << c["name"].get<std::string>() << ';';
            }
            std::cerr << '\n';
            return kExitCheckFailed;
        }
        return kExitOk;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
    } catch (const std::length_error& e) {
        std::cerr << "too large: " << e.what() << '\n';
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << '\n';
    }
    return kExitUsage;
}
