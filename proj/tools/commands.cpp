#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "dunklhit/brownian.hpp"
#include "dunklhit/checks.hpp"
#include "dunklhit/errors.hpp"
#include "dunklhit/hitting.hpp"
#include "dunklhit/simulate.hpp"

namespace dunklhit::cli {

namespace {

using json = nlohmann::ordered_json;

std::string num(double v)
{
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json jnum(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

constexpr double none = std::numeric_limits<double>::quiet_NaN();

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void write_csv(std::ostream& os) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
            os << '\n';
        }
    }

    json to_json() const
    {
        json arr = json::array();
        for (const auto& r : rows) {
            json o;
            for (std::size_t i = 0; i < r.size(); ++i) o[columns[i]] = jnum(r[i]);
            arr.push_back(std::move(o));
        }
        return arr;
    }
};

struct Common {
    std::string out_path;
    std::string format = "csv";
    bool timing = false;
    std::uint64_t seed = 1;
};

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
            os_ = &file_;
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

SimConfig sim_defaults(long paths, std::uint64_t seed)
{
    SimConfig c;
    c.paths = paths;
    c.seed = seed;
    return c;
}

json sim_json(const SimConfig& c)
{
    return {{"paths", c.paths}, {"dt_base", c.dt_base}, {"dt_boundary_scale", c.dt_boundary_scale}, {"absorption_eps", c.absorption_eps}};
}

void require_length(const std::vector<double>& x, int m)
{
    if (static_cast<int>(x.size()) != m) throw ValidationError("--x must have m = " + std::to_string(m) + " coordinates");
}

void require_times(const std::vector<double>& t)
{
    if (t.empty()) throw ValidationError("--t needs at least one time");
    for (double v : t)
        if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("every t must be positive and finite");
}

void emit(const Table& table, json report, const Common& c, double seconds, std::ostream& out)
{
    Sink sink(c.out_path, out);
    if (c.format == "json") {
        report["results"] = table.to_json();
        if (c.timing) report["wall_time_s"] = seconds;
        *sink << report.dump(2) << '\n';
    } else {
        table.write_csv(*sink);
    }
}

json command_echo(const std::vector<std::string>& args)
{
    json a = json::array();
    for (const auto& s : args) a.push_back(s);
    return a;
}

struct SurvivalArgs {
    std::string family;
    int m = 0;
    std::optional<double> k0, k1;
    std::vector<double> x, t;
    std::string method = "closed";
    long paths = 100000;
};

int cmd_survival(const SurvivalArgs& a, const Common& c, const std::vector<std::string>& args, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    const Family f = parse_family(a.family);
    const auto rs = RootSystem::build(f, a.m);
    require_length(a.x, a.m);
    require_times(a.t);
    Multiplicity k{0.5, 0.5};
    if (f == Family::B) {
        if (!a.k0) throw ValidationError("--k0 is required for B-type");
        k.k0 = *a.k0;
        if (a.m > 1) {
            if (!a.k1) throw ValidationError("--k1 is required for B-type with m >= 2");
            k.k1 = *a.k1;
        }
    } else {
        if (!a.k1) throw ValidationError("--k1 is required for A- and D-type");
        k.k1 = *a.k1;
    }
    const bool closed = a.method != "mc", mc = a.method != "closed";
    const SeriesPolicy policy;
    const std::vector<double> b_schedule{64, 128, 256, 512};

    std::vector<double> p_closed(a.t.size(), none), p_err(a.t.size(), none);
    if (closed) {
        for (std::size_t i = 0; i < a.t.size(); ++i) {
            const SurvivalQuery q{rs, k, a.x, a.t[i]};
            switch (f) {
            case Family::B: p_closed[i] = survival_B(q, policy).value; break;
            case Family::D: p_closed[i] = survival_D(q, policy).value; break;
            case Family::A: {
                const auto r = survival_A(q, b_schedule);
                p_closed[i] = r.value;
                p_err[i] = r.extrapolation_error;
                break;
            }
            }
        }
    }
    const SimConfig cfg = sim_defaults(a.paths, c.seed);
    std::optional<SurvivalEstimate> est;
    if (mc) {
        if (a.paths < 1) throw ConfigError("--paths must be >= 1");
        // Horizon and grid must be increasing; sort a copy and map back.
        std::vector<double> grid = a.t;
        std::ranges::sort(grid);
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        est = simulate_survival(rs, {1.0 - k.k0, 1.0 - k.k1}, a.x, grid, cfg);
    }

    Table table{{"t", "p_closed", "p_mc", "stderr", "sigma"}, {}};
    for (std::size_t i = 0; i < a.t.size(); ++i) {
        double pm = none, se = none, sigma = none;
        if (est) {
            const auto it = std::ranges::lower_bound(est->t_grid, a.t[i]);
            const auto j = static_cast<std::size_t>(it - est->t_grid.begin());
            pm = est->probabilities[j];
            se = est->std_errors[j];
            if (closed) sigma = se > 0 ? std::abs(p_closed[i] - pm) / se : (p_closed[i] == pm ? 0.0 : INFINITY);
        }
        table.rows.push_back({a.t[i], p_closed[i], pm, se, sigma});
    }

    json report;
    report["version"] = version;
    report["command"] = command_echo(args);
    report["config"] = {{"family", a.family},
                        {"m", a.m},
                        {"k0", k.k0},
                        {"k1", k.k1},
                        {"k_prime", {1.0 - k.k0, 1.0 - k.k1}},
                        {"x", a.x},
                        {"t", a.t},
                        {"method", a.method},
                        {"seed", c.seed},
                        {"series", {{"cap", policy.cap}, {"tolerance", policy.tolerance}, {"max_weight", "auto"}}},
                        {"simulation", sim_json(cfg)}};
    if (f == Family::A) {
        report["config"]["b_schedule"] = b_schedule;
        json errs = json::array();
        for (double e : p_err) errs.push_back(jnum(e));
        report["extrapolation_error"] = errs;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(table, std::move(report), c, secs, out);
    return 0;
}

struct CheckArgs {
    std::string suite;
};

int cmd_check(const CheckArgs& a, const Common& c, const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    const auto report = run_suite(a.suite, c.seed);
    json j;
    j["version"] = version;
    j["command"] = command_echo(args);
    j["suite"] = report.suite;
    j["seed"] = c.seed;
    j["passed"] = report.passed();
    json items = json::array();
    for (const auto& it : report.items)
        items.push_back({{"name", it.name}, {"residual", it.residual}, {"threshold", it.threshold}, {"passed", it.passed}});
    j["checks"] = items;
    if (c.timing) j["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Sink sink(c.out_path, out);
    *sink << j.dump(2) << '\n';
    if (const auto* f = report.first_failure()) {
        err << "check failed: " << f->name << " residual " << num(f->residual) << " exceeds " << num(f->threshold) << '\n';
        return 1;
    }
    return 0;
}

struct BrownianArgs {
    std::string family;
    int m = 0;
    std::vector<double> x, t;
    bool compare = false;
    long paths = 100000;
    std::string convention = "pair";
};

int cmd_brownian(const BrownianArgs& a, const Common& c, const std::vector<std::string>& args, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    const Family f = parse_family(a.family);
    if (f == Family::A) throw ValidationError("--family must be B or D");
    const auto rs = RootSystem::build(f, a.m);
    require_length(a.x, a.m);
    require_times(a.t);
    if (!rs.in_chamber(a.x)) throw BoundaryError("x must lie strictly inside the Weyl chamber");
    const bool even = a.m % 2 == 0;
    if (a.compare && !even) throw OddRank("Pfaffian comparison needs even m (the Pfaffian formulas hold for even m only)");
    const PfConvention conv = a.convention == "printed" ? PfConvention::Printed : PfConvention::PairSurvival;
    const auto cal = calibrate_det(f, a.m, conv);

    std::optional<SurvivalEstimate> est;
    const SimConfig cfg = sim_defaults(a.paths, c.seed);
    if (a.compare) {
        if (a.paths < 1) throw ConfigError("--paths must be >= 1");
        std::vector<double> grid = a.t;
        std::ranges::sort(grid);
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        est = simulate_survival(rs, {0.0, 0.0}, a.x, grid, cfg);
    }

    Table table{a.compare ? std::vector<std::string>{"t", "det", "pf", "mc", "stderr", "ratio"} : std::vector<std::string>{"t", "det", "pf"}, {}};
    for (double t : a.t) {
        const double det = survival_bm_det(a.x, t, cal);
        const double pf = even ? survival_bm_pf(f, a.x, t, conv) : none;
        if (!a.compare) {
            table.rows.push_back({t, det, pf});
            continue;
        }
        const auto j = static_cast<std::size_t>(std::ranges::lower_bound(est->t_grid, t) - est->t_grid.begin());
        table.rows.push_back({t, det, pf, est->probabilities[j], est->std_errors[j], det / pf});
    }

    json report;
    report["version"] = version;
    report["command"] = command_echo(args);
    report["config"] = {{"family", a.family},
                        {"m", a.m},
                        {"x", a.x},
                        {"t", a.t},
                        {"compare", a.compare},
                        {"convention", a.convention},
                        {"seed", c.seed},
                        {"calibration", {{"x_ref", cal.x_ref}, {"t_ref", cal.t_ref}, {"constant", cal.constant}}}};
    if (a.compare) report["config"]["simulation"] = sim_json(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(table, std::move(report), c, secs, out);
    return 0;
}

void add_common(CLI::App* sub, Common& c, bool with_format)
{
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--out", c.out_path, "output file (default stdout)");
    if (with_format) sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--timing", c.timing, "include wall time in JSON reports");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hitting times of radial Dunkl processes", "dunkl_hit"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    Common common;
    SurvivalArgs sa;
    auto* survival = app.add_subcommand("survival", "tail distribution P_x(T0 > t)");
    survival->add_option("--family", sa.family, "root system type")->required()->check(CLI::IsMember({"A", "B", "D"}));
    survival->add_option("--m", sa.m, "rank")->required();
    survival->add_option("--k0", sa.k0, "short-root multiplicity of the reference process");
    survival->add_option("--k1", sa.k1, "long-root multiplicity of the reference process");
    survival->add_option("--x", sa.x, "starting point, comma separated")->required()->delimiter(',')->allow_extra_args(false);
    survival->add_option("--t", sa.t, "times, comma separated")->required()->delimiter(',')->allow_extra_args(false);
    survival->add_option("--method", sa.method, "closed, mc or both")->check(CLI::IsMember({"closed", "mc", "both"}));
    survival->add_option("--paths", sa.paths, "Monte-Carlo paths");
    add_common(survival, common, true);

    CheckArgs ca;
    auto* check = app.add_subcommand("check", "run an identity suite");
    std::vector<std::string> names;
    for (auto n : suite_names()) names.emplace_back(n);
    check->add_option("--suite", ca.suite, "suite name")->required()->check(CLI::IsMember(names));
    add_common(check, common, false);

    BrownianArgs ba;
    auto* brownian = app.add_subcommand("brownian", "Brownian (k = 0) determinant and Pfaffian formulas");
    brownian->add_option("--family", ba.family, "B or D")->required()->check(CLI::IsMember({"B", "D"}));
    brownian->add_option("--m", ba.m, "rank")->required();
    brownian->add_option("--x", ba.x, "starting point, comma separated")->required()->delimiter(',')->allow_extra_args(false);
    brownian->add_option("--t", ba.t, "times, comma separated")->required()->delimiter(',')->allow_extra_args(false);
    brownian->add_flag("--compare", ba.compare, "add Pfaffian, simulator and det/pf ratio columns");
    brownian->add_option("--paths", ba.paths, "Monte-Carlo paths");
    brownian->add_option("--convention", ba.convention, "B-type Pfaffian entries: pair or printed")->check(CLI::IsMember({"pair", "printed"}));
    add_common(brownian, common, true);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*survival) return cmd_survival(sa, common, args, out);
        if (*check) return cmd_check(ca, common, args, out, err);
        if (*brownian) return cmd_brownian(ba, common, args, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace dunklhit::cli
