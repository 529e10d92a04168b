// Command-line driver: expand | resonances | birkhoff-verify | simulate | coeffs.
// Exit codes: 0 success/pass, 1 verification fail, 2 config error, 3 runtime abort.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wwb/birkhoff.hpp"
#include "wwb/config.hpp"
#include "wwb/dynamics.hpp"
#include "wwb/expansion.hpp"
#include "wwb/resonance.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    bool no_header = false;
    int threads = 1;
};

void write_header(std::ostream& os, const Options& opt) {
    if (opt.no_header) return;
    const std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# wwb " << kVersion << " " << buf << "\n";
}

std::ofstream open_out(const Options& opt, const std::string& name) {
    namespace fs = std::filesystem;
    fs::create_directories(opt.out_dir);
    const fs::path p = fs::path(opt.out_dir) / name;
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot open output file " + p.string());
    return f;
}

int cmd_expand(const wwb::RunConfig& cfg, const Options& opt) {
    const int M = cfg.get_positive_int("M");
    for (int deg : {2, 3, 4}) {
        const wwb::PolyHamiltonian H = wwb::build_hamiltonian(M, deg);
        auto f = open_out(opt, "H" + std::to_string(deg) + ".txt");
        write_header(f, opt);
        wwb::dump_terms(H, f);
    }
    std::cout << "wrote H2.txt H3.txt H4.txt (M=" << M << ") to " << opt.out_dir << "\n";
    return 0;
}

const char* class_name(wwb::resonance::ResClass c) {
    switch (c) {
        case wwb::resonance::ResClass::Trivial: return "Trivial";
        case wwb::resonance::ResClass::BenjaminFeir: return "BenjaminFeir";
        default: return "Other";
    }
}

int cmd_resonances(const wwb::RunConfig& cfg, const Options& opt) {
    const int N = cfg.get_positive_int("N");
    const std::string mode = cfg.get_string("mode", "enumerate");

    if (mode == "enumerate") {
        const auto entries = wwb::resonance::enumerate_quartic(N, opt.threads);
        auto f = open_out(opt, "resonances.csv");
        write_header(f, opt);
        f << "s1,n1,s2,n2,s3,n3,s4,n4,class,lambda,b\n";
        long other = 0;
        for (const auto& e : entries) {
            for (int i = 0; i < 4; ++i)
                f << (e.tuple.e[i].sigma > 0 ? "+" : "-") << "," << e.tuple.e[i].mode << ",";
            f << class_name(e.cls.cls) << ",";
            if (e.cls.cls == wwb::resonance::ResClass::BenjaminFeir)
                f << e.cls.lambda << "," << e.cls.b;
            else
                f << ",";
            f << "\n";
            if (e.cls.cls == wwb::resonance::ResClass::Other) ++other;
        }
        std::cout << "resonant tuples: " << entries.size() << ", class Other: " << other
                  << "\n";
        return other == 0 ? 0 : 1;
    }
    if (mode == "cubic-min") {
        const auto r = wwb::resonance::min_cubic_phase(N);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", r.min_abs_phase);
        std::cout << "min |phase| over cubic tuples (N=" << N << "): " << buf << "\n";
        auto f = open_out(opt, "cubic_min.csv");
        write_header(f, opt);
        f << "N,min_abs_phase,n1,n2,n3\n"
          << N << "," << buf << "," << r.argmin.e[0].sigma * r.argmin.e[0].mode << ","
          << r.argmin.e[1].sigma * r.argmin.e[1].mode << ","
          << r.argmin.e[2].sigma * r.argmin.e[2].mode << "\n";
        return 0;
    }
    if (mode == "scan") {
        const auto r = wwb::resonance::small_divisor_scan(N, opt.threads);
        auto f = open_out(opt, "scan.csv");
        write_header(f, opt);
        f << "max_bucket,min_abs_phase,count_tuples\n";
        char buf[64];
        bool all_positive = true;
        for (const auto& row : r.rows) {
            std::snprintf(buf, sizeof buf, "%.17g", row.min_abs_phase);
            f << row.max_mode << "," << buf << "," << row.count << "\n";
            if (!(row.min_abs_phase > 0)) all_positive = false;
        }
        std::printf("buckets: %zu, fitted N0 = %.4f\n", r.rows.size(), r.fitted_n0);
        return all_positive ? 0 : 1;
    }
    throw wwb::ConfigError("config: key 'mode' must be enumerate, cubic-min or scan");
}

int cmd_birkhoff_verify(const wwb::RunConfig& cfg, const Options& opt) {
    const int M = cfg.get_positive_int("M");
    const double tol = cfg.get_double("tol", 1e-9);
    if (tol < 0) throw wwb::ConfigError("config: key 'tol' must be nonnegative");
    const auto rep = wwb::verify_identity(M, tol);

    nlohmann::json j;
    j["M"] = rep.M;
    j["max_resonant_coeff_error"] = rep.max_resonant_coeff_error;
    j["max_offresonant_leak"] = rep.max_offresonant_leak;
    j["max_value_mismatch"] = rep.max_value_mismatch;
    j["bf"] = nlohmann::json::array();
    for (const auto& b : rep.bf)
        j["bf"].push_back({{"lambda", b.lambda}, {"b", b.b}, {"coeff_abs", b.coeff_abs}});
    j["pass"] = rep.pass;

    std::cout << j.dump(2) << "\n";
    auto f = open_out(opt, "birkhoff_report.json");
    f << j.dump(2) << "\n";
    return rep.pass ? 0 : 1;
}

int cmd_simulate(const wwb::RunConfig& cfg, const Options& opt) {
    const std::string system = cfg.get_string("system", "ww");
    const int M = cfg.get_positive_int("M");
    const double eps = cfg.get_positive_double("epsilon");
    const double s = cfg.get_double("s", 0.0);

    wwb::IntegratorConfig icfg;
    icfg.dt = cfg.get_positive_double("dt");
    icfg.T = cfg.get_positive_double("T");
    const std::string scheme = cfg.get_string("scheme", "implicit-midpoint");
    if (scheme == "rk4")
        icfg.scheme = wwb::IntegratorConfig::Scheme::RK4;
    else if (scheme == "implicit-midpoint")
        icfg.scheme = wwb::IntegratorConfig::Scheme::ImplicitMidpoint;
    else
        throw wwb::ConfigError("config: scheme must be rk4 or implicit-midpoint");
    icfg.record_every = cfg.get_int("record_every", 10);
    if (icfg.record_every <= 0)
        throw wwb::ConfigError("config: record_every must be positive");
    icfg.norm_s = {s};
    icfg.record_actions = cfg.get_int("record_actions", 0) != 0;
    icfg.fp_tol = cfg.get_double("fp_tol", 1e-13);

    const auto u0 = wwb::random_field(M, eps, s, cfg.get_seed("seed", 1234567));
    wwb::TrajectoryRecord rec;
    if (system == "ww") {
        const int degree = cfg.get_int("degree", 4);
        if (degree < 2 || degree > 4)
            throw wwb::ConfigError("config: degree must be 2, 3 or 4");
        rec = wwb::integrate_ww(u0, degree, icfg);
    } else if (system == "zd") {
        rec = wwb::integrate_zd_numeric(u0, icfg);
    } else {
        throw wwb::ConfigError("config: system must be ww or zd");
    }

    auto f = open_out(opt, "trajectory.csv");
    write_header(f, opt);
    wwb::write_trajectory_csv(rec, icfg, f);
    if (rec.aborted) {
        std::cerr << "run aborted: " << rec.abort_reason << "\n";
        return 3;
    }
    std::cout << "trajectory with " << rec.times.size() << " records written\n";
    return 0;
}

int cmd_coeffs(const wwb::RunConfig& cfg, const Options& opt) {
    const int nmax = cfg.get_int("nmax", 16);
    if (nmax <= 0) throw wwb::ConfigError("config: nmax must be positive");
    auto f = open_out(opt, "coeffs.csv");
    write_header(f, opt);
    f << "n,quantity,extracted_re,extracted_im,closed_form,abs_err\n";

    const double s2 = std::sqrt(2.0);
    double worst = 0.0;
    char buf[160];
    std::printf("%4s  %-12s %18s %18s %12s\n", "n", "quantity", "extracted", "closed form",
                "abs err");
    for (int n = 1; n <= nmax; ++n) {
        struct Row {
            const char* name;
            wwb::cpx got;
            double want;
        };
        const double dn = n;
        const Row rows[] = {
            {"V1_n", wwb::extract_linear(wwb::CoeffTag::V, +1, n),
             dn * std::pow(dn, -0.25) / s2},
            {"a1_n", wwb::extract_linear(wwb::CoeffTag::A, +1, n),
             -std::pow(dn, 1.25) / (2 * s2)},
            {"V2_n_n", wwb::extract_bilinear(wwb::CoeffTag::V, n, +1, n, -1), dn * dn},
            {"V2_n_-n", wwb::extract_bilinear(wwb::CoeffTag::V, n, +1, -n, -1), 0.0},
            {"a2_n_n", wwb::extract_bilinear(wwb::CoeffTag::A, n, +1, n, -1),
             0.5 * std::pow(dn, 2.5)},
            {"F2_n_-n", wwb::extract_bilinear(wwb::CoeffTag::F2, n, +1, -n, -1),
             std::pow(2.0, -0.25) * std::pow(dn, 1.75)},
        };
        for (const auto& r : rows) {
            const double err = std::abs(r.got - wwb::cpx(r.want, 0));
            worst = std::max(worst, err);
            std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.17g,%.17g,%.3e", n, r.name,
                          r.got.real(), r.got.imag(), r.want, err);
            f << buf << "\n";
            std::printf("%4d  %-12s %18.12f %18.12f %12.3e\n", n, r.name, r.got.real(),
                        r.want, err);
        }
    }
    std::printf("max abs error: %.3e\n", worst);
    return worst <= 1e-10 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral Birkhoff normal form engine for 1D gravity water waves"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "path to key=value config file");
    app.add_option("--out", opt.out_dir, "output directory (default .)");
    app.add_flag("--no-header", opt.no_header, "suppress the commented CSV header line");
    app.add_option("--threads", opt.threads, "worker threads for scans (default 1)");

    auto* expand = app.add_subcommand("expand", "dump H2/H3/H4 term tables");
    auto* resonances =
        app.add_subcommand("resonances", "enumerate/scan resonances (mode=enumerate|cubic-min|scan)");
    auto* verify = app.add_subcommand("birkhoff-verify", "normal form identity + null condition");
    auto* simulate = app.add_subcommand("simulate", "integrate ww or zd flow, write trajectory");
    auto* coeffs = app.add_subcommand("coeffs", "probe-extracted expansion coefficients");
    for (auto* sub : {expand, resonances, verify, simulate, coeffs}) sub->fallthrough();
    app.footer("config keys: " + wwb::RunConfig::key_help());

    CLI11_PARSE(app, argc, argv);

    try {
        wwb::RunConfig cfg = opt.config_path.empty() ? wwb::RunConfig::from_string("")
                                                     : wwb::RunConfig::from_file(opt.config_path);
        if (expand->parsed()) return cmd_expand(cfg, opt);
        if (resonances->parsed()) return cmd_resonances(cfg, opt);
        if (verify->parsed()) return cmd_birkhoff_verify(cfg, opt);
        if (simulate->parsed()) return cmd_simulate(cfg, opt);
        if (coeffs->parsed()) return cmd_coeffs(cfg, opt);
    } catch (const wwb::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
