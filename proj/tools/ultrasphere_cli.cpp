// Command-line surface: figure-data emission, flow runs from a config file,
// and the verification-report runner.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ultrasphere/ultrasphere.hpp"

namespace us = ultrasphere;

namespace {

struct CommonOpts {
    double p = 2.5;
    double d = 2.0;
    double beta = 1.0;
    int k = 1;
    int N = 64;
    std::uint64_t seed = 42;
    std::string out = ".";
    std::string format = "csv";
    std::string config;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "exponent p");
    cmd->add_option("--d", o.d, "dimension parameter d (real, >= 1)");
    cmd->add_option("--beta", o.beta, "flow exponent beta");
    cmd->add_option("--k", o.k, "orthogonality order k");
    cmd->add_option("--N", o.N, "quadrature order");
    cmd->add_option("--seed", o.seed, "corpus seed");
    cmd->add_option("--out", o.out, "output directory (or file for `flow`)");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--config", o.config, "flat key=value config file; flags win");
}

// Flat key=value config: every key names a long flag of the subcommand.
// Keys already present on the command line are skipped, so flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream is(path);
    if (!is) throw us::domain_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") continue;
        const std::string flag = "--" + key;
        bool on_cli = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) on_cli = true;
        if (!on_cli) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

void write_table(const us::Table& t, const std::string& dir, const std::string& name,
                 const std::string& format) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name + "." + format;
    us::write_file(path, format == "json" ? us::to_json(t) : us::to_csv(t));
    std::printf("wrote %s\n", path.c_str());
}

int report_exit(const std::vector<us::verify::Report>& reports, const CommonOpts& o) {
    bool all_pass = true;
    nlohmann::json jr = nlohmann::json::array();
    std::string csv = "suite,cases_run,worst_slack,status\n";
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        std::printf("%-18s cases=%-6d worst_slack=% .3e  %s\n", r.suite.c_str(), r.cases_run,
                    r.worst_slack, r.pass ? "PASS" : "FAIL");
        for (const auto& f : r.failures) std::printf("    ! %s\n", f.c_str());
        csv += r.suite + "," + std::to_string(r.cases_run) + "," +
               us::format_double(r.worst_slack) + "," + (r.pass ? "pass" : "fail") + "\n";
        nlohmann::json pj = nlohmann::json::object();
        for (const auto& [key, what] : r.provenance) pj[key] = what;
        jr.push_back({{"suite", r.suite},
                      {"cases_run", r.cases_run},
                      {"worst_slack", r.worst_slack},
                      {"status", r.pass ? "pass" : "fail"},
                      {"provenance", pj},
                      {"failures", r.failures}});
    }
    std::filesystem::create_directories(o.out);
    const std::string path = o.out + "/verification_report." + o.format;
    us::write_file(path, o.format == "json" ? jr.dump(1) + "\n" : csv);
    std::printf("wrote %s\n", path.c_str());
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ultraspherical interpolation-inequality toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string fig = "all";
    std::vector<double> betas, gammas;
    double dt = 1e-4, t_end = 1.0, ca = 0.2, cb = -0.1, cc = 0.1;
    std::string scheme = "explicit";

    auto* region = app.add_subcommand("region", "threshold and root curves as CSV");
    add_common(region, o);
    region->add_option("--fig", fig, "fig1 | fig2 | fig3_2 | all");

    auto* improve = app.add_subcommand("improve", "improvement profiles and Phi/Psi tables");
    add_common(improve, o);
    improve->add_option("--fig", fig, "fig4 | fig5_1 | phi_table | all");
    improve->add_option("--betas", betas, "beta list for fig4");

    auto* flowc = app.add_subcommand("flow", "run one flow and emit its trace");
    add_common(flowc, o);
    flowc->add_option("--dt", dt, "initial time step");
    flowc->add_option("--t-end", t_end, "final time");
    flowc->add_option("--coef-a", ca, "initial data: coefficient of x");
    flowc->add_option("--coef-b", cb, "initial data: coefficient of x^2");
    flowc->add_option("--coef-c", cc, "initial data: coefficient of sin(pi x/2)");
    flowc->add_option("--scheme", scheme, "explicit | semi-implicit")
        ->check(CLI::IsMember({"explicit", "semi-implicit"}));

    auto* spectral = app.add_subcommand("spectral", "chi-ratio curves");
    add_common(spectral, o);
    spectral->add_option("--gammas", gammas, "gamma list for the chi2 family");

    auto* ckp = app.add_subcommand("ckp", "regime verification corpus");
    add_common(ckp, o);

    auto* verify = app.add_subcommand("verify-all", "run every property suite");
    add_common(verify, o);

    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const us::domain_error& ex) {
        std::fprintf(stderr, "domain error: %s\n", ex.what());
        return 2;
    }

    try {
        if (region->parsed()) {
            us::figures::FigureConfig fc;
            fc.d = o.d;
            if (fig == "fig1" || fig == "all")
                write_table(us::figures::fig1(), o.out, "fig1", o.format);
            if (fig == "fig2" || fig == "all")
                write_table(us::figures::fig2(o.d), o.out, "fig2", o.format);
            if (fig == "fig3_2" || fig == "all")
                write_table(us::figures::fig3_2(), o.out, "fig3_2", o.format);
            return 0;
        }
        if (improve->parsed()) {
            if (fig == "fig4" || fig == "all") {
                const double d4 = improve->count("--d") ? o.d : 5.0;
                const double p4 = improve->count("--p") ? o.p : 2.5;
                write_table(us::figures::fig4(d4, p4, betas), o.out, "fig4", o.format);
            }
            if (fig == "fig5_1" || fig == "all") {
                const double d5 = improve->count("--d") ? o.d : 2.0;
                const double p5 = improve->count("--p") ? o.p : 1.5;
                write_table(us::figures::fig5_1(p5, d5), o.out, "fig5_1", o.format);
            }
            if (fig == "phi_table" || fig == "all")
                write_table(us::figures::phi_psi_table(o.p, o.d), o.out, "phi_psi", o.format);
            return 0;
        }
        if (flowc->parsed()) {
            us::flow::FlowConfig fc;
            fc.p = o.p;
            fc.d = o.d;
            fc.beta = o.beta;
            fc.N = o.N;
            fc.dt_initial = dt;
            fc.t_end = t_end;
            fc.scheme = scheme == "semi-implicit" ? us::flow::Scheme::semi_implicit
                                                  : us::flow::Scheme::explicit_adaptive;
            auto basis = us::shared_basis(o.d, o.N);
            auto w0 = us::GridFunction::sample(
                basis,
                [&](double x) {
                    return 1.0 + ca * x + cb * x * x + cc * std::sin(1.5707963267948966 * x);
                },
                true);
            const auto tr = us::flow::run_flow(w0, fc);
            us::Table t;
            t.columns = {"t", "e", "i", "mass", "decay_lhs", "decay_rhs"};
            for (std::size_t i = 0; i < tr.times.size(); ++i)
                t.add_row({tr.times[i], tr.entropy_e[i], tr.fisher_i[i], tr.mass[i],
                           tr.decay_lhs[i], tr.decay_rhs[i]});
            const std::string path =
                o.out == "." ? std::string("flow_trace.") + o.format : o.out;
            us::write_file(path, o.format == "json" ? us::to_json(t) : us::to_csv(t));
            std::printf("wrote %s (%zu steps, mass drift %.3e)\n", path.c_str(),
                        tr.times.size() - 1, tr.mass_drift_rel());
            return 0;
        }
        if (spectral->parsed()) {
            const double d5 = spectral->count("--d") ? o.d : 2.0;
            const double p5 = spectral->count("--p") ? o.p : 1.5;
            write_table(us::figures::fig5_2(d5, p5, o.k, gammas), o.out, "fig5_2", o.format);
            return 0;
        }
        if (ckp->parsed()) {
            return report_exit(us::verify::ckp_regime_reports(o.seed), o);
        }
        if (verify->parsed()) {
            std::filesystem::create_directories(o.out);
            const auto reports = us::verify::run_all(o.seed, o.out);
            return report_exit(reports, o);
        }
    } catch (const us::domain_error& ex) {
        std::fprintf(stderr, "domain error: %s\n", ex.what());
        return 2;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 1;
    }
    return 2;
}
