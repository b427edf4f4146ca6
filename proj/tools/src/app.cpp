#include "phaselab_cli/app.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "phaselab/certificate.hpp"
#include "phaselab/discrim.hpp"
#include "phaselab/error.hpp"
#include "phaselab/farkas.hpp"
#include "phaselab/pe_sim.hpp"
#include "phaselab/phase.hpp"
#include "phaselab/strategy.hpp"
#include "phaselab_cli/output.hpp"

namespace phaselab::cli {

namespace {

using nlohmann::json;

struct Config {
    std::string command;
    int k = 10;
    int ell = 1;
    long n = -1;
    double kappa = 1e-4;
    int samples = 1000;
    int grid = 4096;
    std::string out;
    std::uint64_t seed = 1;
    int workers = 0;
    std::optional<double> phi;
};

class Log {
public:
    explicit Log(std::ostream& err) : err_(err), level_(log_level_from_env()) {}
    void info(const std::string& msg) const {
        if (level_ >= LogLevel::info) {
            err_ << "phaselab: " << msg << '\n';
        }
    }
    void debug(const std::string& msg) const {
        if (level_ >= LogLevel::debug) {
            err_ << "phaselab[debug]: " << msg << '\n';
        }
    }

private:
    std::ostream& err_;
    LogLevel level_;
};

// Canonical form: command then the flags that shape the output, in a fixed
// order. --out and --workers are excluded since they do not change results.
std::string canonical(const Config& c) {
    std::ostringstream os;
    os << "command=" << c.command;
    auto add = [&](const char* name, const std::string& v) { os << ';' << name << '=' << v; };
    const std::string& cmd = c.command;
    if (cmd != "fl-plot") {
        add("k", std::to_string(c.k));
    }
    if (cmd != "simulate") {
        add("ell", std::to_string(c.ell));
    }
    if (cmd == "certify") {
        add("n", std::to_string(c.n));
        add("grid", std::to_string(c.grid));
    }
    if (cmd == "certify" || cmd == "scan" || cmd == "report") {
        add("kappa", format_double(c.kappa));
    }
    if (cmd == "fl-plot") {
        add("samples", std::to_string(c.samples));
    }
    if (cmd == "simulate") {
        if (c.phi) {
            add("phi", format_double(*c.phi));
        } else {
            add("seed", std::to_string(c.seed));
        }
    }
    return os.str();
}

std::string config_hash(const Config& c) { return hex64(fnv1a64(canonical(c))); }

std::string csv_preamble(const Config& c, const std::string& columns) {
    return "# config_hash=" + config_hash(c) + "\n" + columns + "\n";
}

json complex_pair(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::string cmd_simulate(const Config& c, const Log& log) {
    std::string phi_text;
    OutcomeDistribution dist;
    if (c.phi) {
        phi_text = format_double(*c.phi);
        dist = pe_simulate(c.k, *c.phi);
    } else {
        if (c.k < 1 || c.k > kMaxSimulatedBits) {
            throw ResourceError("simulate: k must lie in [1, " +
                                std::to_string(kMaxSimulatedBits) + "]");
        }
        std::mt19937_64 rng(c.seed);
        const DyadicPhase phi(rng() & ((std::uint64_t{1} << c.k) - 1), c.k);
        phi_text = std::to_string(phi.numerator()) + "/2^" + std::to_string(c.k);
        dist = pe_simulate(c.k, phi);
    }
    log.debug("simulated phi=" + phi_text);
    std::string s = csv_preamble(c, "m,probability");
    s.insert(s.find('\n') + 1, "# phi=" + phi_text + "\n");
    for (std::size_t m = 0; m < dist.size(); ++m) {
        s += std::to_string(m) + "," + format_double(dist.probabilities[m]) + "\n";
    }
    return s;
}

json support_summary(const AmplitudeProfile& p) {
    const auto sup = p.support();
    json j{{"size", sup.size()}};
    if (!sup.empty()) {
        j["first"] = sup.front();
        j["last"] = sup.back();
        j["stride"] = sup.size() > 1 ? sup[1] - sup[0] : 0;
    }
    return j;
}

json nonadaptive_json(const Config& c) {
    const PaperProfile paper = paper_profile(c.k, c.ell);
    const NonadaptiveStrategy strat = make_nonadaptive_strategy(c.k, c.ell);
    const DiscriminationResult res = paper_measurement_success(c.k, c.ell);
    json overlaps = json::array();
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << c.ell); ++r) {
        overlaps.push_back(complex_pair(overlap_closed_form(c.k, c.ell, r)));
    }
    return json{{"k", c.k},
                {"ell", c.ell},
                {"N", paper.budget},
                {"delta", paper.delta()},
                {"total_cost", strat.total_cost},
                {"worst_case_success", res.worst_case_success()},
                {"overlaps", overlaps},
                {"profile_support", support_summary(strat.profile)}};
}

json adaptive_json(const Config& c) {
    const AdaptiveStrategy a = adaptive_protocol(c.k, c.ell);
    return json{{"k", a.k},
                {"ell", a.ell},
                {"stage1_cost", a.stage1_cost},
                {"stage2_costs", a.stage2_costs},
                {"stage2_success", a.stage2_success},
                {"worst_case_cost", a.worst_case_cost},
                {"error_prob", a.error_prob}};
}

std::string dump(json j, const Config& c) {
    j["config_hash"] = config_hash(c);
    return j.dump(2) + "\n";
}

std::string cmd_certify(const Config& c, const Log& log) {
    if (c.n < 1) {
        throw DomainError("certify: --n is required and must be positive");
    }
    const double eps = eps_from_kappa(c.kappa);
    log.info("building certificate k=" + std::to_string(c.k) + " ell=" + std::to_string(c.ell) +
             " N=" + std::to_string(c.n) + " eps_bound=" + format_double(eps));
    const Certificate cert = build_certificate(c.k, c.ell, c.n, eps);
    const FarkasSystem system = build_system(c.k, c.ell, c.n, eps);
    const LPResult lp = lp_feasible(system);
    log.debug("lp iterations=" + std::to_string(lp.iterations));
    // Continuous check on [0, N/2^k]; the modified polynomial has no exact zeros.
    const PositivityReport pos = positivity_check(TrigPoly::from_coefficients(cert.y),
                                                  static_cast<double>(c.n) / std::ldexp(1.0, c.k),
                                                  c.grid);
    return dump(json{{"k", c.k},
                     {"ell", c.ell},
                     {"N", c.n},
                     {"eps_bound", eps},
                     {"y", cert.y},
                     {"margin_primal", cert.margin_primal},
                     {"margin_dual", cert.margin_dual},
                     {"valid", cert.valid()},
                     {"lp_verdict", lp.feasible ? "feasible" : "infeasible"},
                     {"interval_positivity", to_string(pos.status)}},
                c);
}

std::string cmd_scan(const Config& c, const Log& log) {
    ScanOptions opts;
    opts.workers = c.workers;
    opts.on_point = [&](const ScanPoint& p) {
        log.info("scan N=" + std::to_string(p.n) + (p.feasible ? " feasible" : " infeasible") +
                 " iterations=" + std::to_string(p.iterations));
    };
    const ScanResult r = scan_min_N(c.k, c.ell, c.kappa, opts);
    const double scale = std::ldexp(1.0, c.k);
    std::string s = csv_preamble(c, "k,ell,N,feasible,ratio,bracket");
    for (const auto& p : r.evaluations) {
        const char* tag = p.n == r.min_feasible_n
                              ? "min_feasible"
                              : (p.n == r.max_certified_infeasible_n ? "max_certified_infeasible"
                                                                     : "");
        s += std::to_string(c.k) + "," + std::to_string(c.ell) + "," + std::to_string(p.n) + "," +
             (p.feasible ? "1" : "0") + "," + format_double(static_cast<double>(p.n) / scale) +
             "," + tag + "\n";
    }
    log.info("bracket (" + std::to_string(r.max_certified_infeasible_n) + ", " +
             std::to_string(r.min_feasible_n) + "], ratio " + format_double(r.ratio()));
    return s;
}

std::string cmd_fl_plot(const Config& c) {
    if (c.samples < 2) {
        throw DomainError("fl-plot: --samples must be at least 2");
    }
    std::string columns = "x,f";
    for (const auto& f : f_ell_factors(c.ell, 0.0)) {
        columns += ",\"" + f.name + "\"";
    }
    std::string s = csv_preamble(c, columns);
    for (int i = 0; i < c.samples; ++i) {
        const double x = static_cast<double>(i) / (c.samples - 1);
        s += format_double(x) + "," + format_double(f_ell_eval(c.ell, x));
        for (const auto& f : f_ell_factors(c.ell, x)) {
            s += "," + format_double(f.value);
        }
        s += "\n";
    }
    return s;
}

std::string cmd_report(const Config& c, const Log& log) {
    const AdaptiveStrategy a = adaptive_protocol(c.k, c.ell);
    const NonadaptiveStrategy na = make_nonadaptive_strategy(c.k, c.ell);
    log.info("evaluating the non-adaptive measurement");
    const DiscriminationResult pm = paper_measurement_success(c.k, c.ell);

    json bounds{{"adaptive_lower_bound", adaptive_lower_bound(std::ldexp(1.0, -c.k), c.kappa)}};
    constexpr int kMaxScanBits = 16;
    if (c.k <= kMaxScanBits) {
        log.info("scanning the non-adaptive threshold");
        ScanOptions opts;
        opts.workers = c.workers;
        const ScanResult r = scan_min_N(c.k, c.ell, c.kappa, opts);
        bounds["nonadaptive_scan"] = {
            {"kappa", c.kappa},
            {"min_feasible_n", r.min_feasible_n},
            {"max_certified_infeasible_n", r.max_certified_infeasible_n},
            {"ratio", r.ratio()}};
    } else {
        bounds["nonadaptive_scan"] = nullptr;
    }

    return dump(json{{"k", c.k},
                     {"ell", c.ell},
                     {"adaptive_cost", a.worst_case_cost},
                     {"nonadaptive_cost", na.total_cost},
                     {"ratio", static_cast<double>(na.total_cost) /
                                   static_cast<double>(a.worst_case_cost)},
                     {"error_probs",
                      {{"adaptive", a.error_prob},
                       {"nonadaptive", 1.0 - pm.worst_case_success()}}},
                     {"bounds", bounds},
                     {"adaptive", {{"stage1_cost", a.stage1_cost}, {"stage2_costs", a.stage2_costs}}},
                     {"nonadaptive",
                      {{"N", na.profile.budget()},
                       {"leading_cost", na.total_cost - na.profile.budget()},
                       {"profile_support", support_summary(na.profile)}}}},
                c);
}

std::string dispatch(const Config& c, const Log& log) {
    const std::string& cmd = c.command;
    if (cmd == "simulate") return cmd_simulate(c, log);
    if (cmd == "nonadaptive") return dump(nonadaptive_json(c), c);
    if (cmd == "adaptive") return dump(adaptive_json(c), c);
    if (cmd == "certify") return cmd_certify(c, log);
    if (cmd == "scan") return cmd_scan(c, log);
    if (cmd == "fl-plot") return cmd_fl_plot(c);
    if (cmd == "report") return cmd_report(c, log);
    throw std::logic_error("unhandled command " + cmd);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Phase-estimation laboratory: simulations, strategies and lower bounds",
                 "phaselab"};
    app.require_subcommand(1);

    auto with_k = [&](CLI::App* s, int def) {
        s->add_option("--k", c.k, "phase precision in bits")->default_str(std::to_string(def));
    };
    auto with_ell = [&](CLI::App* s) {
        s->add_option("--ell", c.ell, "promise-set level")->capture_default_str();
    };
    auto with_out = [&](CLI::App* s) {
        s->add_option("--out", c.out, "output file (default: standard output)");
    };

    auto* simulate = app.add_subcommand("simulate", "circuit simulation of phase estimation (CSV)");
    with_k(simulate, 8);
    simulate->add_option("--phi", c.phi, "phase in turns (default: random dyadic from --seed)");
    simulate->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    with_out(simulate);

    auto* nonadaptive = app.add_subcommand("nonadaptive", "explicit non-adaptive strategy (JSON)");
    with_k(nonadaptive, 12);
    with_ell(nonadaptive);
    with_out(nonadaptive);

    auto* adaptive = app.add_subcommand("adaptive", "two-stage adaptive strategy (JSON)");
    with_k(adaptive, 12);
    with_ell(adaptive);
    with_out(adaptive);

    auto* certify = app.add_subcommand("certify", "explicit Farkas certificate (JSON)");
    with_k(certify, 12);
    with_ell(certify);
    certify->add_option("--n", c.n, "non-adaptive budget N")->required();
    certify->add_option("--kappa", c.kappa, "target error")->capture_default_str();
    certify->add_option("--grid", c.grid, "initial cells for the interval check")
        ->capture_default_str();
    with_out(certify);

    auto* scan = app.add_subcommand("scan", "bracket the minimal non-adaptive budget (CSV)");
    with_k(scan, 10);
    with_ell(scan);
    scan->add_option("--kappa", c.kappa, "target error")->capture_default_str();
    scan->add_option("--workers", c.workers, "LP worker threads (0: all cores)");
    with_out(scan);

    auto* fl_plot = app.add_subcommand("fl-plot", "samples of f_ell and its factors (CSV)");
    with_ell(fl_plot);
    fl_plot->add_option("--samples", c.samples, "points on [0, 1]")->capture_default_str();
    with_out(fl_plot);

    auto* report = app.add_subcommand("report", "adaptive vs non-adaptive cost report (JSON)");
    with_k(report, 12);
    with_ell(report);
    report->add_option("--kappa", c.kappa, "target error for the bounds")->capture_default_str();
    report->add_option("--workers", c.workers, "LP worker threads (0: all cores)");
    with_out(report);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "phaselab: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }
    // --k defaults differ per subcommand; apply the chosen one's.
    for (CLI::App* sub : app.get_subcommands()) {
        c.command = sub->get_name();
        if (auto* kopt = sub->get_option_no_throw("--k"); kopt != nullptr && kopt->count() == 0) {
            c.k = std::stoi(kopt->get_default_str());
        }
    }

    const Log log(err);
    try {
        const std::string content = dispatch(c, log);
        write_output(c.out, content, out);
        return kExitOk;
    } catch (const DomainError& e) {
        err << "phaselab: domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ConstructionError& e) {
        err << "phaselab: " << e.what() << " (largest provable N: " << e.largest_provable_n()
            << ")\n";
        return kExitSolver;
    } catch (const SolverError& e) {
        err << "phaselab: solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const ResourceError& e) {
        err << "phaselab: resource error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        err << "phaselab: error: " << e.what() << '\n';
        return kExitSolver;
    }
}

int run_command(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run_command(args, std::cout, std::cerr);
}

}  // namespace phaselab::cli
