#include "cli_app.hpp"

#include "quadwalk/counting.hpp"
#include "quadwalk/errors.hpp"
#include "quadwalk/exact_dp.hpp"
#include "quadwalk/harmonic.hpp"
#include "quadwalk/ladders.hpp"
#include "quadwalk/montecarlo.hpp"
#include "quadwalk/output.hpp"
#include "quadwalk/pipeline.hpp"
#include "quadwalk/step_io.hpp"
#include "quadwalk/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <optional>
#include <sstream>

namespace quadwalk::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Settings {
    std::string steps_path;
    std::string tilt_drift;
    std::string convention = "nonpositive";
    std::string barrier = "auto";
    std::string format = "csv";
    std::uint64_t seed = 1;
    unsigned threads = 0;

    std::string x = "1,1";
    std::string y;
    long n = 0;
    long y2 = 1;
    std::string region = "quadrant";
    std::string drift;
    std::string dir = "down";
    std::string kind = "V";
    long max_u = -1;
    double tol = 1e-10;
    double harmonic_tol = 1e-9;
    long n_max = 1L << 14;
    std::string grid;
    bool star = false;
    long reps = 100000;
    std::string theorem;
    std::string schedule;
    bool mc = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
    return parts;
}

template <class T>
T parse_number(const std::string& s, const std::string& what) {
    std::istringstream in(s);
    T v{};
    if (!(in >> v) || !(in >> std::ws).eof()) throw UsageError("malformed " + what + ": '" + s + "'");
    return v;
}

template <class T>
std::vector<T> parse_list(const std::string& s, std::size_t count, const std::string& what) {
    const auto parts = split(s, ',');
    if (count != 0 && parts.size() != count)
        throw UsageError(fmt::format("{} needs {} comma-separated values", what, count));
    std::vector<T> out;
    for (const auto& p : parts) out.push_back(parse_number<T>(p, what));
    return out;
}

Point parse_point(const std::string& s, const std::string& what) {
    const auto v = parse_list<long>(s, 2, what);
    return {v[0], v[1]};
}

class Runner {
public:
    Runner(const Settings& s, std::ostream& out, std::ostream& err) : s_(s), out_(out), err_(err) {
        if (s_.format != "csv" && s_.format != "json") throw UsageError("--format must be csv or json");
    }

    StepDistribution law() const {
        if (s_.steps_path.empty()) throw UsageError("--steps is required for this command");
        StepDistribution sd = load_steps_file(s_.steps_path);
        if (!s_.tilt_drift.empty()) {
            const auto d = parse_list<double>(s_.tilt_drift, 2, "--tilt-drift");
            sd = tilt(sd, solve_drift(sd, {d[0], d[1]}).h).dist;
        }
        return sd;
    }

    BoundaryConvention conv() const { return parse_convention(s_.convention); }

    DpOptions dp_options() const {
        DpOptions o;
        if (s_.barrier == "auto") o.barrier = -1;
        else if (s_.barrier == "none") o.barrier.reset();
        else o.barrier = parse_number<long>(s_.barrier, "--barrier");
        return o;
    }

    unsigned threads() const { return s_.threads > 0 ? s_.threads : default_threads(); }

    bool json() const { return s_.format == "json"; }

    void emit(const std::string& command, const nlohmann::json& result, const std::string& csv) {
        if (json())
            out_ << envelope(command, result).dump(2) << "\n";
        else
            out_ << csv;
    }

    int model_moments() {
        const auto m = compute_moments(law());
        emit("model moments", to_json(m),
             fmt::format("mu1,mu2,sigma11,sigma12,sigma22\n{},{},{},{},{}\n", m.mu[0], m.mu[1], m.s11, m.s12, m.s22));
        return kOk;
    }

    int model_lattice() {
        const auto ls = lattice_decompose(law());
        emit("model lattice", to_json(ls), fmt::format("a1,d1,a2,d2\n{},{},{},{}\n", ls.a1, ls.d1, ls.a2, ls.d2));
        return kOk;
    }

    int tilt_solve() {
        if (s_.drift.empty()) throw UsageError("--drift is required");
        const auto d = parse_list<double>(s_.drift, 2, "--drift");
        const auto tp = solve_drift(law(), {d[0], d[1]});
        emit("tilt solve", to_json(tp), fmt::format("h1,h2,phi\n{},{},{}\n", tp.h[0], tp.h[1], tp.phi));
        return kOk;
    }

    int ladders() {
        const Law1D v = vertical_marginal(law());
        LadderOptions lo;
        lo.tol = s_.tol;
        int code = kOk;
        LadderDist ld;
        try {
            ld = s_.dir == "down" ? descending_ladder(v, conv(), lo) : ascending_ladder(v, lo);
        } catch (const NumericError& e) {
            err_ << "warning: " << e.what() << " (achieved " << format_number(e.achieved()) << ")\n";
            ld = s_.dir == "down" ? descending_ladder_iteration(v, conv(), lo)
                                  : descending_ladder_iteration(v.reflected(), BoundaryConvention::KillOnNegative, lo);
            code = kNumeric;
        }
        nlohmann::json j = to_json(ld);
        j["kappa"] = kappa(ld);
        std::string csv = ladder_csv(ld);
        if (s_.max_u >= 0 && code == kOk) {
            const RenewalTable t = s_.dir == "down" ? renewal_V(ld, s_.max_u) : renewal_H(ld, s_.max_u);
            j["renewal"] = to_json(t);
            csv += renewal_csv(t);
        }
        emit("ladders", j, csv);
        return code;
    }

    int renewal() {
        if (s_.kind != "V" && s_.kind != "H") throw UsageError("--kind must be V or H");
        const Law1D v = vertical_marginal(law());
        LadderOptions lo;
        lo.tol = s_.tol;
        const long U = s_.max_u >= 0 ? s_.max_u : 20;
        const RenewalTable t =
            s_.kind == "V" ? renewal_V(descending_ladder(v, conv(), lo), U) : renewal_H(ascending_ladder(v, lo), U);
        nlohmann::json j = to_json(t);
        if (t.kind == RenewalKind::V) {
            try {
                j["harmonic_convention"] = to_string(validate_convention(v, t, std::min<long>(50, U - 1)).selected);
            } catch (const Error& e) {
                err_ << "note: " << e.what() << "\n";
            }
        }
        emit("renewal", j, renewal_csv(t));
        return kOk;
    }

    int harmonic_w() {
        HarmonicOptions ho;
        ho.tol = s_.harmonic_tol;
        ho.n_max = s_.n_max;
        if (s_.star) {
            const auto e = W_star(parse_point(s_.x, "--x"), ho);
            return emit_estimate("harmonic-w", e);
        }
        PipelineOptions po;
        po.conv = conv();
        const ConditionedWalk cw(law(), po);
        if (!s_.grid.empty()) {
            const auto g = parse_list<long>(s_.grid, 4, "--grid");
            WGrid grid(cw, ho);
            grid.fill({g[0], g[1]}, {g[2], g[3]}, threads());
            nlohmann::json rows = nlohmann::json::array();
            bool all = true;
            for (long a = g[0]; a <= g[2]; ++a)
                for (long b = g[1]; b <= g[3]; ++b) {
                    const auto e = grid.at({a, b});
                    all = all && e.converged;
                    auto r = to_json(e);
                    r["x"] = {a, b};
                    rows.push_back(r);
                }
            emit("harmonic-w", rows, grid.to_csv());
            if (!all) err_ << "warning: some brackets are wider than --tol\n";
            return all ? kOk : kNumeric;
        }
        return emit_estimate("harmonic-w", W_series(cw, parse_point(s_.x, "--x"), ho));
    }

    int emit_estimate(const std::string& command, const HarmonicEstimate& e) {
        emit(command, to_json(e),
             fmt::format("lower,value,upper,n_used\n{},{},{},{}\n", e.lower, e.value, e.upper, e.n_used));
        if (!e.converged) {
            err_ << "warning: bracket width " << format_number(e.width()) << " exceeds --tol\n";
            return kNumeric;
        }
        return kOk;
    }

    ExitSpec exit_spec() const {
        Region r;
        if (s_.region == "quadrant") r = Region::Quadrant;
        else if (s_.region == "upper") r = Region::UpperHalfPlane;
        else if (s_.region == "right") r = Region::RightHalfPlane;
        else throw UsageError("--region must be quadrant, upper or right");
        return {r, conv()};
    }

    std::vector<Point> support_points() const {
        const auto sd = law();
        std::vector<Point> pts;
        for (const auto& a : sd.atoms()) pts.push_back({a.dx, a.dy});
        return pts;
    }

    int dp(const std::string& what) {
        const Point x = parse_point(s_.x, "--x");
        if (what == "count" || what == "line") {
            const auto pts = support_points();
            const BigInt c = what == "count" ? count_paths(pts, x, require_y(), s_.n, conv())
                                             : count_line(pts, x, s_.n, s_.y2, conv());
            const std::string str = c.str();
            emit("dp " + what, str, str + "\n");
            return kOk;
        }
        const auto sd = law();
        if (what == "survive") {
            const auto v = survival_prob(sd, x, s_.n, exit_spec(), dp_options());
            emit("dp survive", {{"value", v.value}, {"error_bound", v.error_bound}},
                 fmt::format("value,error_bound\n{},{}\n", v.value, v.error_bound));
            return kOk;
        }
        const double p = local_prob(sd, x, require_y(), s_.n, exit_spec(), dp_options());
        emit("dp local", p, format_number(p) + "\n");
        return kOk;
    }

    Point require_y() const {
        if (s_.y.empty()) throw UsageError("--y is required");
        return parse_point(s_.y, "--y");
    }

    int mc_survive() {
        const auto e = simulate_survival(law(), parse_point(s_.x, "--x"), s_.n, s_.reps, s_.seed,
                                         {threads(), exit_spec()});
        emit("mc survive", to_json(e),
             fmt::format("mean,half_width_95,reps,seed\n{},{},{},{}\n", e.mean, e.half_width_95, e.reps, e.seed));
        return kOk;
    }

    int verify_cmd() {
        const auto& ids = theorem_ids();
        if (std::find(ids.begin(), ids.end(), s_.theorem) == ids.end())
            throw UsageError("unknown theorem id '" + s_.theorem + "'");
        VerifyOptions vo;
        vo.x = parse_point(s_.x, "--x");
        if (!s_.schedule.empty()) vo.schedule = parse_list<long>(s_.schedule, 0, "--n-schedule");
        vo.y2 = s_.y2;
        vo.monte_carlo = s_.mc;
        vo.mc_reps = s_.reps;
        vo.seed = s_.seed;
        vo.threads = threads();
        PipelineOptions po;
        po.conv = conv();
        const ConditionedWalk cw(law(), po);
        const auto rows = verify(s_.theorem, cw, vo);
        emit("verify " + s_.theorem, to_json(rows), verify_csv(rows));
        return kOk;
    }

private:
    const Settings& s_;
    std::ostream& out_;
    std::ostream& err_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app{"Quadrant-conditioned random walks: exact DP and limit constants", "quadwalk"};
    app.set_config("--config", "", "Optional TOML/INI file with option defaults");
    app.require_subcommand(1);
    app.add_option("--steps", s.steps_path, "Step-set JSON file");
    app.add_option("--tilt-drift", s.tilt_drift, "Tilt the loaded law to drift a,b before use");
    app.add_option("--conv", s.convention, "Kill rule: nonpositive (default) or negative");
    app.add_option("--barrier", s.barrier, "Horizontal barrier: auto, none or an integer");
    app.add_option("--format", s.format, "Output format: csv or json");
    app.add_option("--seed", s.seed, "Random seed");
    app.add_option("--threads", s.threads, "Worker threads (default: QUADWALK_THREADS or 1)");

    std::string chosen;
    auto fall = [](CLI::App* sub) { sub->fallthrough(); return sub; };

    auto* model = fall(app.add_subcommand("model", "Step-law summaries"));
    model->require_subcommand(1);
    fall(model->add_subcommand("moments", "Mean and covariance"))->callback([&] { chosen = "model moments"; });
    fall(model->add_subcommand("lattice", "Lattice period decomposition"))->callback([&] { chosen = "model lattice"; });

    auto* tilt_cmd = fall(app.add_subcommand("tilt", "Exponential tilting"));
    tilt_cmd->require_subcommand(1);
    auto* solve = fall(tilt_cmd->add_subcommand("solve", "Find h with the given tilted drift"));
    solve->add_option("--drift", s.drift, "Target drift a,b")->required();
    solve->callback([&] { chosen = "tilt solve"; });

    auto* lad = fall(app.add_subcommand("ladders", "Ladder height law of the vertical walk"));
    lad->add_option("--dir", s.dir, "down (weak descending) or up (strict ascending)")
        ->check(CLI::IsMember({"down", "up"}));
    lad->add_option("--max-u", s.max_u, "Also tabulate the renewal function up to U");
    lad->add_option("--tol", s.tol, "Unresolved-mass tolerance");
    lad->callback([&] { chosen = "ladders"; });

    auto* ren = fall(app.add_subcommand("renewal", "Renewal function table"));
    ren->add_option("--kind", s.kind, "V or H");
    ren->add_option("--max-u", s.max_u, "Largest u (default 20)");
    ren->add_option("--tol", s.tol, "Ladder tolerance");
    ren->callback([&] { chosen = "renewal"; });

    auto* hw = fall(app.add_subcommand("harmonic-w", "Bracket the harmonic function W"));
    hw->add_option("--x", s.x, "Start point a,b");
    hw->add_option("--tol", s.harmonic_tol, "Target bracket width");
    hw->add_option("--n-max", s.n_max, "Largest DP horizon");
    hw->add_option("--grid", s.grid, "Evaluate on the box lo1,lo2,hi1,hi2 instead");
    hw->add_flag("--star", s.star, "W* of the tilted singular walk with V(u) = u");
    hw->callback([&] { chosen = "harmonic-w"; });

    auto* dp = fall(app.add_subcommand("dp", "Exact dynamic programming"));
    dp->require_subcommand(1);
    for (const char* name : {"survive", "local", "count", "line"}) {
        auto* sub = fall(dp->add_subcommand(name));
        sub->add_option("--x", s.x, "Start point a,b");
        sub->add_option("--y", s.y, "End point a,b");
        sub->add_option("--n", s.n, "Number of steps")->required();
        sub->add_option("--y2", s.y2, "Row of the line (line only)");
        sub->add_option("--region", s.region, "quadrant, upper or right");
        sub->callback([&chosen, name] { chosen = std::string("dp ") + name; });
    }

    auto* mc = fall(app.add_subcommand("mc", "Monte Carlo cross-checks"));
    mc->require_subcommand(1);
    auto* mcs = fall(mc->add_subcommand("survive", "Estimate P(T_x > n)"));
    mcs->add_option("--x", s.x, "Start point a,b");
    mcs->add_option("--n", s.n, "Number of steps")->required();
    mcs->add_option("--reps", s.reps, "Number of paths");
    mcs->add_option("--region", s.region, "quadrant, upper or right");
    mcs->callback([&] { chosen = "mc survive"; });

    auto* ver = fall(app.add_subcommand("verify", "Compare exact values with the limit theorems"));
    ver->add_option("theorem", s.theorem, "tail|integral|llt|llt-half|boundary-llt|line|qbar|kernel")->required();
    ver->add_option("--x", s.x, "Start point a,b");
    ver->add_option("--n-schedule", s.schedule, "Comma-separated horizons");
    ver->add_option("--y2", s.y2, "Row for boundary-llt and line");
    ver->add_flag("--mc", s.mc, "Measure by Monte Carlo (tail only)");
    ver->add_option("--reps", s.reps, "Monte Carlo paths");
    ver->callback([&] { chosen = "verify"; });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        Runner r(s, out, err);
        if (chosen == "model moments") return r.model_moments();
        if (chosen == "model lattice") return r.model_lattice();
        if (chosen == "tilt solve") return r.tilt_solve();
        if (chosen == "ladders") return r.ladders();
        if (chosen == "renewal") return r.renewal();
        if (chosen == "harmonic-w") return r.harmonic_w();
        if (chosen.rfind("dp ", 0) == 0) return r.dp(chosen.substr(3));
        if (chosen == "mc survive") return r.mc_survive();
        if (chosen == "verify") return r.verify_cmd();
        err << "usage error: no command given\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << " (achieved " << format_number(e.achieved()) << ")\n";
        return kNumeric;
    } catch (const InputError& e) {
        err << "input error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return kInput;
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return kInput;
    }
}

} // namespace quadwalk::cli
