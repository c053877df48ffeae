// critjac: asymptotics and spectra of critically coupled unbounded
// tridiagonal operators. Subcommands cover the discriminant scan, forward
// solution traces, asymptotic fits, stabilized eigenvalues with bound checks,
// and the randomized spectral-gap inequality.
//
// Exit codes: 0 success, 1 an asserted check failed (or a computation could
// not be completed), 2 invalid input.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "critjac/asymptotics.hpp"
#include "critjac/cli.hpp"
#include "critjac/model.hpp"
#include "critjac/propagate.hpp"
#include "critjac/spectral.hpp"

namespace {

using critjac::IndexWindow;
using critjac::cli::OutputFormat;
using critjac::cli::RunConfig;
using critjac::cli::fmt_double;
using critjac::model::ModelParams;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

constexpr double kEnvelopeTol = 0.02;
constexpr double kFrequencyRelTol = 0.02;
constexpr double kGrowthTol = 0.05;
constexpr double kRatioLo = 1e-2;
constexpr double kRatioHi = 1e2;

void emit(const std::string& output_path, const std::string& content) {
    if (output_path.empty())
        std::cout << content;
    else
        critjac::cli::atomic_write_text(output_path, content);
}

std::string csv_table(const std::string& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::string s = header;
    s += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) s += ',';
            s += row[i];
        }
        s += '\n';
    }
    return s;
}

ordered_json base_report(const std::string& command, ordered_json params) {
    ordered_json j;
    j["command"] = command;
    j["params"] = std::move(params);
    return j;
}

std::string finish_report(ordered_json j, ordered_json results, bool pass,
                          int threads) {
    j["results"] = std::move(results);
    j["pass"] = pass;
    j["meta"] = ordered_json{{"version", kVersion}, {"threads", threads}};
    return j.dump(2) + "\n";
}

ordered_json fit_entry(const std::string& check, const critjac::FitReport& r,
                       double tol, bool pass) {
    return ordered_json{{"check", check},
                        {"fitted", r.fitted_value},
                        {"predicted", r.predicted_value},
                        {"abs_error", r.abs_error},
                        {"tol", tol},
                        {"r_squared", r.r_squared},
                        {"method", critjac::to_string(r.method)},
                        {"window", {r.window.lo, r.window.hi}},
                        {"pass", pass}};
}

std::pair<double, double> parse_anchor(const std::string& s, const ModelParams& p,
                                       double E) {
    if (s == "orthopoly") return critjac::propagate::orthopoly_anchor(p, E);
    const std::size_t pos = s.find(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 == s.size())
        throw critjac::DomainError("anchor must be 'orthopoly' or 'u1:u2'");
    try {
        return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
    } catch (const std::exception&) {
        throw critjac::DomainError("anchor must be 'orthopoly' or 'u1:u2'");
    }
}

critjac::model::A0Convention parse_a0(const std::string& s) {
    if (s == "zero") return critjac::model::A0Convention::zero;
    if (s == "one") return critjac::model::A0Convention::one;
    throw critjac::DomainError("a0 convention must be 'zero' or 'one'");
}

int run_discriminant(const RunConfig& cfg, double btilde,
                     const std::string& grid_spec) {
    const auto grid = critjac::cli::parse_grid(grid_spec);
    critjac::model::PeriodicData pd;
    pd.c = {1.0, 1.0};
    pd.d = {cfg.b, btilde};
    pd.validate();
    const char* cls =
        critjac::model::to_string(critjac::model::classify_coupling(pd));
    std::cout << cls << "\n";

    const auto energies = grid.points();
    std::string report;
    if (cfg.format == OutputFormat::csv) {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(energies.size());
        for (double E : energies)
            rows.push_back({fmt_double(E),
                            fmt_double(critjac::model::periodic_discriminant(pd, E))});
        report = csv_table("E,d", rows);
    } else {
        ordered_json j = base_report(
            "discriminant", {{"b", cfg.b}, {"btilde", btilde}, {"e_grid", grid_spec}});
        j["classification"] = cls;
        ordered_json results = ordered_json::array();
        for (double E : energies)
            results.push_back(
                {{"E", E}, {"d", critjac::model::periodic_discriminant(pd, E)}});
        report = finish_report(std::move(j), std::move(results), true, cfg.threads);
    }
    emit(cfg.output_path, report);
    return 0;
}

int run_solve(const RunConfig& cfg, const std::string& anchor_str,
              const std::string& a0_str, long stride) {
    ModelParams p{cfg.alpha, cfg.b, parse_a0(a0_str)};
    p.validate();
    if (cfg.n_sites < 4) throw critjac::DomainError("N must be >= 4");
    const auto anchor = parse_anchor(anchor_str, p, cfg.E);
    const auto trace =
        critjac::propagate::solve_recurrence(p, cfg.E, 1, anchor, cfg.n_sites, stride);

    std::string report;
    if (cfg.format == OutputFormat::csv) {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(trace.size());
        for (long n = trace.first_index(); n <= trace.last_index(); ++n)
            rows.push_back({std::to_string(n), fmt_double(trace.mantissa(n)),
                            fmt_double(trace.log_scale(n))});
        report = csv_table("n,mantissa,log_scale", rows);
    } else {
        ordered_json j = base_report("solve", {{"alpha", cfg.alpha},
                                               {"b", cfg.b},
                                               {"E", cfg.E},
                                               {"N", cfg.n_sites},
                                               {"anchor", anchor_str},
                                               {"a0", a0_str},
                                               {"stride", stride}});
        ordered_json results = ordered_json::array();
        for (long n = trace.first_index(); n <= trace.last_index(); ++n)
            results.push_back({{"n", n},
                               {"mantissa", trace.mantissa(n)},
                               {"log_scale", trace.log_scale(n)}});
        report = finish_report(std::move(j), std::move(results), true, cfg.threads);
    }
    emit(cfg.output_path, report);
    return 0;
}

int run_fit(const RunConfig& cfg) {
    namespace asym = critjac::asymptotics;
    ModelParams p{cfg.alpha, cfg.b, critjac::model::A0Convention::zero};
    p.validate();
    if (cfg.n_sites < 4) throw critjac::DomainError("N must be >= 4");
    const long N = cfg.n_sites;
    const IndexWindow sites{std::max<long>(16, N / 100), N};
    const IndexWindow half{std::max<long>(2, sites.lo / 2), N / 2};

    const auto anchor = critjac::propagate::orthopoly_anchor(p, cfg.E);
    const auto trace = critjac::propagate::solve_recurrence(p, cfg.E, 1, anchor, N);

    const auto envelope =
        asym::envelope_exponent_fit(trace, asym::Subsample::even_sites_signed, half);
    const bool envelope_ok = envelope.abs_error <= kEnvelopeTol;

    const auto freq = asym::phase_frequency_fit(trace, p, cfg.E, half);
    const double freq_rel = freq.predicted_value == 0.0
                                ? freq.abs_error
                                : freq.abs_error / std::fabs(freq.predicted_value);
    const bool freq_ok = freq_rel <= kFrequencyRelTol;

    const auto trace10 = critjac::propagate::solve_recurrence(p, cfg.E, 1, {1.0, 0.0}, N);
    const auto trace01 = critjac::propagate::solve_recurrence(p, cfg.E, 1, {0.0, 1.0}, N);
    const auto growth10 = asym::partial_norm_growth_fit(trace10, sites);
    const auto growth01 = asym::partial_norm_growth_fit(trace01, sites);
    const bool growth10_ok = growth10.abs_error <= kGrowthTol;
    const bool growth01_ok = growth01.abs_error <= kGrowthTol;

    const auto ratio = asym::subordinacy_scan(p, cfg.E, sites, {1.0, 0.0}, {0.0, 1.0});
    const bool ratio_ok = ratio.min_ratio >= kRatioLo && ratio.max_ratio <= kRatioHi;

    const bool pass =
        envelope_ok && freq_ok && growth10_ok && growth01_ok && ratio_ok;

    std::string report;
    if (cfg.format == OutputFormat::json) {
        ordered_json j = base_report(
            "fit", {{"alpha", cfg.alpha}, {"b", cfg.b}, {"E", cfg.E}, {"N", N}});
        ordered_json results = ordered_json::array();
        results.push_back(fit_entry("envelope_exponent", envelope, kEnvelopeTol,
                                    envelope_ok));
        ordered_json fe = fit_entry("crossing_frequency", freq, kFrequencyRelTol,
                                    freq_ok);
        fe["rel_error"] = freq_rel;
        results.push_back(std::move(fe));
        results.push_back(
            fit_entry("norm_growth_anchor_10", growth10, kGrowthTol, growth10_ok));
        results.push_back(
            fit_entry("norm_growth_anchor_01", growth01, kGrowthTol, growth01_ok));
        results.push_back(ordered_json{{"check", "subordinacy_ratio"},
                                       {"min_ratio", ratio.min_ratio},
                                       {"max_ratio", ratio.max_ratio},
                                       {"lo_bound", kRatioLo},
                                       {"hi_bound", kRatioHi},
                                       {"method", "ratio_limit"},
                                       {"window", {sites.lo, sites.hi}},
                                       {"pass", ratio_ok}});
        report = finish_report(std::move(j), std::move(results), pass, cfg.threads);
    } else {
        std::vector<std::vector<std::string>> rows;
        auto fit_row = [&](const char* check, const critjac::FitReport& r,
                           double err, double tol, bool ok) {
            rows.push_back({check, fmt_double(r.fitted_value),
                            fmt_double(r.predicted_value), fmt_double(err),
                            fmt_double(tol), ok ? "true" : "false"});
        };
        fit_row("envelope_exponent", envelope, envelope.abs_error, kEnvelopeTol,
                envelope_ok);
        fit_row("crossing_frequency", freq, freq_rel, kFrequencyRelTol, freq_ok);
        fit_row("norm_growth_anchor_10", growth10, growth10.abs_error, kGrowthTol,
                growth10_ok);
        fit_row("norm_growth_anchor_01", growth01, growth01.abs_error, kGrowthTol,
                growth01_ok);
        rows.push_back({"subordinacy_min", fmt_double(ratio.min_ratio), "", "",
                        fmt_double(kRatioLo), ratio_ok ? "true" : "false"});
        rows.push_back({"subordinacy_max", fmt_double(ratio.max_ratio), "", "",
                        fmt_double(kRatioHi), ratio_ok ? "true" : "false"});
        report = csv_table("check,fitted,predicted,error,tol,pass", rows);
    }
    emit(cfg.output_path, report);
    return pass ? 0 : 1;
}

int run_spectrum(const RunConfig& cfg) {
    namespace sp = critjac::spectral;
    ModelParams p{cfg.alpha, cfg.b, critjac::model::A0Convention::zero};
    p.validate();
    const auto rep = sp::stabilized_positive_eigs(p, cfg.n_max, cfg.n_sites,
                                                  cfg.tol, cfg.threads);
    const auto fine = sp::truncate(p, rep.truncation_n2);
    std::vector<double> residuals;
    residuals.reserve(rep.eigenvalues.size());
    for (double e : rep.eigenvalues) residuals.push_back(sp::eigen_residual(fine, e));

    std::string report;
    if (cfg.format == OutputFormat::csv) {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i)
            rows.push_back({std::to_string(i + 1), fmt_double(rep.eigenvalues[i]),
                            fmt_double(residuals[i])});
        report = csv_table("n,E,residual", rows);
    } else {
        ordered_json j = base_report("spectrum", {{"alpha", cfg.alpha},
                                                  {"b", cfg.b},
                                                  {"n_max", cfg.n_max},
                                                  {"N", rep.truncation_n},
                                                  {"N2", rep.truncation_n2},
                                                  {"tol", cfg.tol}});
        ordered_json results = ordered_json::array();
        for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i)
            results.push_back({{"n", i + 1},
                               {"E", rep.eigenvalues[i]},
                               {"residual", residuals[i]}});
        report = finish_report(std::move(j), std::move(results), true, cfg.threads);
    }
    emit(cfg.output_path, report);
    return 0;
}

int run_bounds(const RunConfig& cfg) {
    namespace sp = critjac::spectral;
    ModelParams p{cfg.alpha, cfg.b, critjac::model::A0Convention::zero};
    p.validate();
    const auto rep = sp::stabilized_positive_eigs(p, cfg.n_max, cfg.n_sites,
                                                  cfg.tol, cfg.threads);
    const auto bounds = sp::eigenvalue_bounds_check(p, rep);
    std::vector<sp::CountingCheck> counting;
    counting.reserve(rep.eigenvalues.size());
    bool counting_ok = true;
    for (double e : rep.eigenvalues) {
        counting.push_back(sp::counting_bound_check(p, e, rep));
        counting_ok = counting_ok && counting.back().ok;
    }
    const bool has_calibration = !(p.b >= std::sqrt(6.0));
    const double calibrated_C =
        has_calibration ? sp::calibrated_block_constant(p.alpha, p.b) : 0.0;
    const bool pass = bounds.all_ok && counting_ok;

    std::string report;
    if (cfg.format == OutputFormat::csv) {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < bounds.rows.size(); ++i) {
            const auto& r = bounds.rows[i];
            const bool row_ok = r.ok && counting[i].ok;
            rows.push_back({std::to_string(r.n), fmt_double(r.value),
                            fmt_double(r.lower),
                            r.has_upper ? fmt_double(r.upper) : std::string(),
                            fmt_double(r.ratio), row_ok ? "true" : "false"});
        }
        report = csv_table("n,E,lower,upper,ratio,pass", rows);
    } else {
        ordered_json j = base_report("bounds", {{"alpha", cfg.alpha},
                                                {"b", cfg.b},
                                                {"n_max", cfg.n_max},
                                                {"N", rep.truncation_n},
                                                {"N2", rep.truncation_n2},
                                                {"tol", cfg.tol}});
        j["upper_asserted"] = bounds.upper_asserted;
        if (has_calibration) j["calibrated_C"] = calibrated_C;
        ordered_json results = ordered_json::array();
        for (std::size_t i = 0; i < bounds.rows.size(); ++i) {
            const auto& r = bounds.rows[i];
            ordered_json row{{"n", r.n},
                             {"E", r.value},
                             {"lower", r.lower},
                             {"upper", r.has_upper ? ordered_json(r.upper)
                                                   : ordered_json(nullptr)},
                             {"ratio", r.ratio},
                             {"bounds_ok", r.ok},
                             {"count", counting[i].count},
                             {"count_bound", counting[i].bound},
                             {"count_ok", counting[i].ok}};
            results.push_back(std::move(row));
        }
        report = finish_report(std::move(j), std::move(results), pass, cfg.threads);
    }
    emit(cfg.output_path, report);
    return pass ? 0 : 1;
}

int run_gap(const RunConfig& cfg, double a, long trials) {
    namespace sp = critjac::spectral;
    ModelParams p{cfg.alpha, cfg.b, critjac::model::A0Convention::zero};
    p.validate();
    const auto r = sp::gap_inequality_check(p, a, cfg.n_sites, trials, cfg.seed);
    std::cout << "violations: " << r.violations << "\n"
              << "min_ratio: " << fmt_double(r.min_ratio) << "\n";

    std::string report;
    if (cfg.format == OutputFormat::csv) {
        report = csv_table("violations,min_ratio",
                           {{std::to_string(r.violations), fmt_double(r.min_ratio)}});
    } else {
        ordered_json j = base_report("gap", {{"alpha", cfg.alpha},
                                             {"b", cfg.b},
                                             {"a", a},
                                             {"N", cfg.n_sites},
                                             {"trials", trials},
                                             {"seed", cfg.seed}});
        ordered_json results = ordered_json::array();
        results.push_back({{"violations", r.violations},
                           {"min_ratio", r.min_ratio},
                           {"forbidden_sites", r.forbidden_sites}});
        report = finish_report(std::move(j), std::move(results), r.violations == 0,
                               cfg.threads);
    }
    emit(cfg.output_path, report);
    return r.violations == 0 ? 0 : 1;
}

void add_output_options(CLI::App* sub, RunConfig& cfg, std::string& fmt) {
    sub->add_option("-o,--output", cfg.output_path,
                    "write the report here instead of stdout");
    sub->add_option("--format", fmt, "report format: csv or json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "critjac: asymptotics and spectra of critically coupled unbounded "
        "tridiagonal operators"};
    app.require_subcommand(1);
    int rc = 0;
    const int threads = critjac::cli::env_thread_cap();

    RunConfig dcfg;
    dcfg.threads = threads;
    double d_btilde = 0.0;
    std::string d_grid = "-3:3:601", d_fmt = "csv";
    auto* disc = app.add_subcommand(
        "discriminant", "scan the periodic-comparison discriminant and classify");
    disc->add_option("--b", dcfg.b, "odd-site diagonal of the comparison operator")
        ->required();
    disc->add_option("--btilde", d_btilde, "even-site diagonal (default 0)");
    disc->add_option("--e-grid", d_grid, "energy grid lo:hi:count");
    add_output_options(disc, dcfg, d_fmt);
    disc->callback([&] {
        dcfg.format = critjac::cli::parse_format(d_fmt);
        rc = run_discriminant(dcfg, d_btilde, d_grid);
    });

    RunConfig scfg;
    scfg.threads = threads;
    scfg.n_sites = 100000;
    std::string s_anchor = "orthopoly", s_a0 = "zero", s_fmt = "csv";
    long s_stride = 64;
    auto* solve = app.add_subcommand(
        "solve", "propagate a solution trace of the three-term recurrence");
    solve->add_option("--alpha", scfg.alpha, "growth exponent in (0, 1]")->required();
    solve->add_option("--b", scfg.b, "odd-site coupling")->required();
    solve->add_option("--E", scfg.E, "energy (default 0)");
    solve->add_option("--N", scfg.n_sites, "last site index");
    solve->add_option("--anchor", s_anchor, "'orthopoly' or explicit 'u1:u2'");
    solve->add_option("--a0", s_a0, "a_0 convention: zero or one");
    solve->add_option("--stride", s_stride, "checkpoint stride")
        ->check(CLI::PositiveNumber);
    add_output_options(solve, scfg, s_fmt);
    solve->callback([&] {
        scfg.format = critjac::cli::parse_format(s_fmt);
        rc = run_solve(scfg, s_anchor, s_a0, s_stride);
    });

    RunConfig fcfg;
    fcfg.threads = threads;
    fcfg.n_sites = 200000;
    std::string f_fmt = "json";
    auto* fit = app.add_subcommand(
        "fit", "fit envelope, frequency, and norm-growth laws at negative energy");
    fit->add_option("--alpha", fcfg.alpha, "growth exponent in (2/3, 1]")->required();
    fit->add_option("--b", fcfg.b, "odd-site coupling (> 0)")->required();
    fit->add_option("--E", fcfg.E, "energy (< 0)")->required();
    fit->add_option("--N", fcfg.n_sites, "last site index");
    add_output_options(fit, fcfg, f_fmt);
    fit->callback([&] {
        fcfg.format = critjac::cli::parse_format(f_fmt);
        rc = run_fit(fcfg);
    });

    RunConfig pcfg;
    pcfg.threads = threads;
    pcfg.n_max = 20;
    pcfg.n_sites = 4000;
    pcfg.tol = 1e-6;
    std::string p_fmt = "csv";
    auto* spectrum = app.add_subcommand(
        "spectrum", "stabilized positive eigenvalues of truncations");
    spectrum->add_option("--alpha", pcfg.alpha, "growth exponent in (0, 1]")
        ->required();
    spectrum->add_option("--b", pcfg.b, "odd-site coupling (> 0)")->required();
    spectrum->add_option("--n-max", pcfg.n_max, "number of eigenvalues");
    spectrum->add_option("--N", pcfg.n_sites, "coarse truncation size");
    spectrum->add_option("--tol", pcfg.tol, "relative stabilization tolerance");
    add_output_options(spectrum, pcfg, p_fmt);
    spectrum->callback([&] {
        pcfg.format = critjac::cli::parse_format(p_fmt);
        rc = run_spectrum(pcfg);
    });

    RunConfig bcfg;
    bcfg.threads = threads;
    bcfg.n_max = 20;
    bcfg.n_sites = 4000;
    bcfg.tol = 1e-6;
    std::string b_fmt = "csv";
    auto* bounds = app.add_subcommand(
        "bounds", "per-index and counting bounds on stabilized eigenvalues");
    bounds->add_option("--alpha", bcfg.alpha, "growth exponent in (0, 1]")
        ->required();
    bounds->add_option("--b", bcfg.b, "odd-site coupling (> 0)")->required();
    bounds->add_option("--n-max", bcfg.n_max, "number of eigenvalues");
    bounds->add_option("--N", bcfg.n_sites, "coarse truncation size");
    bounds->add_option("--tol", bcfg.tol, "relative stabilization tolerance");
    add_output_options(bounds, bcfg, b_fmt);
    bounds->callback([&] {
        bcfg.format = critjac::cli::parse_format(b_fmt);
        rc = run_bounds(bcfg);
    });

    RunConfig gcfg;
    gcfg.threads = threads;
    gcfg.n_sites = 2000;
    gcfg.seed = 1;
    double g_a = 0.0;
    long g_trials = 1000;
    std::string g_fmt = "csv";
    auto* gap = app.add_subcommand(
        "gap", "randomized check of the low-energy gap inequality");
    gap->add_option("--alpha", gcfg.alpha, "growth exponent in (0, 1]")->required();
    gap->add_option("--b", gcfg.b, "odd-site coupling (> 0)")->required();
    gap->add_option("--a", g_a, "spectral level a > 0")->required();
    gap->add_option("--N", gcfg.n_sites, "truncation size");
    gap->add_option("--trials", g_trials, "number of random trial vectors")
        ->check(CLI::PositiveNumber);
    gap->add_option("--seed", gcfg.seed, "generator seed");
    add_output_options(gap, gcfg, g_fmt);
    gap->callback([&] {
        gcfg.format = critjac::cli::parse_format(g_fmt);
        rc = run_gap(gcfg, g_a, g_trials);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const critjac::DegenerateAnchor& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
