#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clamped/belt.hpp"
#include "clamped/coupled.hpp"
#include "clamped/parallel.hpp"
#include "clamped/tone.hpp"
#include "output.hpp"

using namespace clamped;
using cli::Record;
using cli::Report;
using std::numbers::pi;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitSolver = 3;

struct Options {
    std::string format = "csv";
    int digits = 10;
    double tol = 1e-14;
    int max_terms = 20000;
    std::string output;
};

SeriesConfig config(const Options& o) {
    SeriesConfig cfg{o.tol, o.max_terms};
    cfg.validate();
    return cfg;
}

Record meta(const Options& o) {
    Record m;
    m.add("rel_tol", o.tol).add("max_terms", static_cast<long long>(o.max_terms)).add("digits", static_cast<long long>(o.digits));
    return m;
}

Report tone_cmd(int n, double kappa, double L, const SeriesConfig& cfg) {
    SphereParams sp{n, kappa};
    CapSpec cap = CapSpec::make(sp, L);
    ToneSolution t = cap_tone(sp, cap, cfg);
    Report r{"tone", {}, {}, {}, {}, true};
    r.inputs.add("n", static_cast<long long>(n)).add("kappa", kappa).add("L", L);
    Record row;
    row.add("n", static_cast<long long>(n)).add("kappa", kappa).add("L", L).add("alpha", cap.alpha);
    row.add("lambda", t.lambda).add("Lambda", t.Lambda);
    row.add("bracket_lo", t.bracket_lo).add("bracket_hi", t.bracket_hi);
    row.add("small_cap_estimate", small_cap_estimate(sp, L));
    r.rows.push_back(row);
    r.residuals.add("K_relative", t.residual);
    return r;
}

Report table1_cmd(double kappa, const SeriesConfig& cfg, unsigned threads) {
    const double Ls[] = {0.4, 0.03, 0.002, 0.0001};
    struct Cell { int n; double L; };
    std::vector<Cell> cells;
    for (int n = 2; n <= 4; ++n)
        for (double L : Ls) cells.push_back({n, L / std::sqrt(kappa)});
    auto tones = parallel_map<ToneSolution>(cells.size(), threads, [&](std::size_t i) {
        SphereParams sp{cells[i].n, kappa};
        return cap_tone(sp, CapSpec::make(sp, cells[i].L), cfg);
    });
    Report r{"table1", {}, {}, {}, {}, false};
    r.inputs.add("kappa", kappa);
    double worst = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        SphereParams sp{cells[i].n, kappa};
        Record row;
        row.add("n", static_cast<long long>(cells[i].n)).add("L", cells[i].L);
        row.add("lambda", tones[i].lambda).add("estimate", small_cap_estimate(sp, cells[i].L));
        r.rows.push_back(row);
        worst = std::max(worst, tones[i].residual);
    }
    r.residuals.add("max_K_relative", worst);
    return r;
}

Report table2_cmd(double kappa, const SeriesConfig& cfg, unsigned threads) {
    const double eps[] = {1e-2, 1e-3, 1e-4, 1e-5};
    struct Cell { int n; double e; };
    std::vector<Cell> cells;
    for (int n = 2; n <= 7; ++n)
        for (double e : eps) cells.push_back({n, e});
    auto tones = parallel_map<ToneSolution>(cells.size(), threads, [&](std::size_t i) {
        SphereParams sp{cells[i].n, kappa};
        return cap_tone(sp, CapSpec::make(sp, (1.0 - cells[i].e) * sp.diameter()), cfg);
    });
    Report r{"table2", {}, {}, {}, {}, false};
    r.inputs.add("kappa", kappa);
    double worst = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        SphereParams sp{cells[i].n, kappa};
        Record row;
        row.add("n", static_cast<long long>(cells[i].n)).add("L_over_pi", 1.0 - cells[i].e);
        row.add("Lambda", tones[i].Lambda).add("limit", large_cap_gap(sp));
        r.rows.push_back(row);
        worst = std::max(worst, tones[i].residual);
    }
    r.residuals.add("max_K_relative", worst);
    return r;
}

Report table3_cmd(int nmax, double kappa, int grid, const SeriesConfig& cfg, unsigned threads) {
    const int ns[] = {2, 3, 4, 5, 6, 7, 10, 50, 100, 200, 500, 1000};
    Report r{"table3", {}, {}, {}, {}, false};
    r.inputs.add("nmax", static_cast<long long>(nmax)).add("kappa", kappa).add("grid", static_cast<long long>(grid));
    for (int n : ns) {
        if (n > nmax) break;
        RayleighThreshold t = scan_threshold(n, kappa, grid, cfg, threads);
        Record row;
        row.add("n", static_cast<long long>(n)).add("L_over_pi", t.L_n * std::sqrt(kappa) / pi).add("v_n", t.v_n);
        row.add("crossings", static_cast<long long>(t.crossings.size()));
        row.add("unresolved", static_cast<long long>(t.unresolved));
        r.rows.push_back(row);
    }
    return r;
}

Report belt_cmd(double kappa, double r_in, double R_out) {
    BeltSpec b{r_in, R_out};
    BeltSolution s = belt_tones(kappa, b);
    Report r{"belt", {}, {}, {}, {}, true};
    r.inputs.add("kappa", kappa).add("r", r_in).add("R", R_out);
    Record row;
    row.add("kappa", kappa).add("r", r_in).add("R", R_out);
    row.add("lambda_sp", s.lambda_sp).add("lambda_sc", s.lambda_sc).add("regime", std::string(to_string(s.regime)));
    r.rows.push_back(row);
    r.residuals.add("det_sp", det_sp(kappa, b, s.lambda_sp)).add("det_sc", det_sc(kappa, b, s.lambda_sc));
    return r;
}

Report cds_cmd() {
    CdsResult c = cds_constant();
    Report r{"cds", {}, {}, {}, {}, true};
    Record row;
    row.add("c_cds", c.c_cds).add("lambda1_c", c.lambda1_c).add("lambda2_c", c.lambda2_c);
    r.rows.push_back(row);
    r.residuals.add("det_sp", det_sp_euclid(1.0 / c.c_cds, 1.0, c.lambda2_c))
        .add("det_sc", det_sc_euclid(1.0 / c.c_cds, 1.0, c.lambda2_c));
    return r;
}

Report gap_cmd() {
    Report r{"gap", {}, {}, {}, {}, false};
    for (int n = 2; n <= 3; ++n) {
        double mu = gap_mu(n);
        Record row;
        row.add("n", static_cast<long long>(n)).add("mu", mu).add("mu_sq", mu * mu);
        r.rows.push_back(row);
        r.residuals.add("equation_n" + std::to_string(n), gap_equation(n, mu));
    }
    return r;
}

Report wn_cmd(int nmin, int nmax) {
    Report r{"wn", {}, {}, {}, {}, false};
    r.inputs.add("nmin", static_cast<long long>(nmin)).add("nmax", static_cast<long long>(nmax));
    for (int n = nmin; n <= nmax; ++n) {
        Record row;
        row.add("n", static_cast<long long>(n)).add("w_n", w_n(n));
        r.rows.push_back(row);
    }
    return r;
}

Report gate_cmd(int n, double kappa, double L, const SeriesConfig& cfg) {
    GateReport g = rayleigh_gate({n, kappa}, L, cfg);
    Report r{"gate", {}, {}, {}, {}, true};
    r.inputs.add("n", static_cast<long long>(n)).add("kappa", kappa).add("L", L);
    Record row;
    row.add("n", static_cast<long long>(n)).add("kappa", kappa).add("L", L).add("L0", g.L0);
    row.add("f_left", g.f_left).add("lam_right", g.lam_right).add("margin", g.margin()).add("ratio", g.ratio());
    row.add("holds", g.holds);
    r.rows.push_back(row);
    return r;
}

Report profile_cmd(const std::string& kind, int n, double kappa, double L, double r_in, double R_out,
                   int resolution, const SeriesConfig& cfg) {
    if (resolution < 16) throw domain_error("profile resolution must be at least 16");
    Report r{"profile", {}, {}, {}, {}, false};
    r.inputs.add("kind", kind).add("kappa", kappa).add("resolution", static_cast<long long>(resolution));
    std::vector<Record> rows;
    std::vector<double> values;
    if (kind == "cap") {
        r.inputs.add("n", static_cast<long long>(n)).add("L", L);
        SphereParams sp{n, kappa};
        CapSpec cap = CapSpec::make(sp, L);
        CapProfile prof(sp, cap, cap_tone(sp, cap, cfg), cfg);
        for (int i = 0; i < resolution; ++i) {
            double th = prof.theta_max() * i / (resolution - 1);
            values.push_back(i == resolution - 1 ? 0.0 : prof(th));
            rows.push_back(Record{}.add("theta", th));
        }
    } else if (kind == "belt_sp" || kind == "belt_sc") {
        r.inputs.add("r", r_in).add("R", R_out);
        BeltKind bk = kind == "belt_sp" ? BeltKind::sign_preserving : BeltKind::sign_changing;
        BeltProfile prof(kappa, {r_in, R_out}, bk);
        std::vector<double> radial(resolution);
        for (int i = 0; i < resolution; ++i) {
            double th = prof.theta_min() + (prof.theta_max() - prof.theta_min()) * i / (resolution - 1);
            radial[i] = (i == 0 || i == resolution - 1) ? 0.0 : prof.radial(th);
        }
        for (int j = 0; j < resolution; ++j) {
            double xi = 2.0 * pi * j / resolution;
            double ang = bk == BeltKind::sign_changing ? std::sin(xi) : 1.0;
            if (std::fabs(ang) < 1e-12) ang = 0.0;  // nodal arcs at xi = 0, pi
            for (int i = 0; i < resolution; ++i) {
                double th = prof.theta_min() + (prof.theta_max() - prof.theta_min()) * i / (resolution - 1);
                values.push_back(radial[i] * ang);
                rows.push_back(Record{}.add("theta", th).add("xi", xi));
            }
        }
    } else {
        throw domain_error("profile kind must be cap, belt_sp or belt_sc");
    }
    double mx = 0.0;
    for (double v : values) mx = std::max(mx, std::fabs(v));
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].add("value", mx > 0.0 ? values[i] / mx : 0.0);
    r.rows = std::move(rows);
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fundamental tones of clamped spherical caps and belts"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--digits", o.digits, "Significant digits")->check(CLI::Range(4, 15));
    app.add_option("--tol", o.tol, "Relative tolerance of the series")->check(CLI::Range(1e-300, 1e-6));
    app.add_option("--max-terms", o.max_terms, "Series term limit")->check(CLI::Range(64, 100000000));
    app.add_option("--output", o.output, "Write to this file instead of standard output");

    int n = 2, nmax = 10, nmin = 2, grid = 128, resolution = 64;
    double kappa = 1.0, L = 0.4, r_in = 0.01, R_out = 1.0;
    std::string kind = "cap";
    auto add_n = [&](CLI::App* s) { s->add_option("--n", n, "Dimension")->check(CLI::Range(2, 100000)); };
    auto add_kappa = [&](CLI::App* s) { s->add_option("--kappa", kappa, "Curvature")->check(CLI::PositiveNumber); };

    auto* tone = app.add_subcommand("tone", "Fundamental tone of one cap");
    add_n(tone), add_kappa(tone), tone->add_option("--L", L, "Cap radius")->required();
    auto* t1 = app.add_subcommand("table1", "Small-cap tones and estimates");
    add_kappa(t1);
    auto* t2 = app.add_subcommand("table2", "Large-cap tones");
    add_kappa(t2);
    auto* t3 = app.add_subcommand("table3", "Gate thresholds L_n and v_n");
    add_kappa(t3), t3->add_option("--nmax", nmax, "Largest dimension")->check(CLI::Range(2, 1000));
    t3->add_option("--grid", grid, "Scan grid size")->check(CLI::Range(64, 100000));
    auto* belt = app.add_subcommand("belt", "Belt tones and regime");
    add_kappa(belt), belt->add_option("--r", r_in, "Inner radius")->required();
    belt->add_option("--R", R_out, "Outer radius")->required();
    auto* cds = app.add_subcommand("cds", "Critical annulus ratio");
    auto* gap = app.add_subcommand("gap", "Large-cap gap constants");
    auto* wn = app.add_subcommand("wn", "Flat-limit constants w_n");
    wn->add_option("--nmin", nmin, "Smallest dimension")->check(CLI::Range(2, 100000));
    wn->add_option("--nmax", nmax, "Largest dimension")->check(CLI::Range(2, 100000));
    auto* gate = app.add_subcommand("gate", "Gate comparison at one L");
    add_n(gate), add_kappa(gate), gate->add_option("--L", L, "Cap radius")->required();
    auto* prof = app.add_subcommand("profile", "Eigenfunction samples for plotting");
    prof->add_option("--kind", kind, "cap, belt_sp or belt_sc")->check(CLI::IsMember({"cap", "belt_sp", "belt_sc"}));
    add_n(prof), add_kappa(prof);
    prof->add_option("--L", L, "Cap radius");
    prof->add_option("--r", r_in, "Inner belt radius");
    prof->add_option("--R", R_out, "Outer belt radius");
    prof->add_option("--resolution", resolution, "Samples per axis")->check(CLI::Range(16, 4096));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        SeriesConfig cfg = config(o);
        unsigned threads = default_threads();
        Report rep;
        if (*tone) rep = tone_cmd(n, kappa, L, cfg);
        else if (*t1) rep = table1_cmd(kappa, cfg, threads);
        else if (*t2) rep = table2_cmd(kappa, cfg, threads);
        else if (*t3) rep = table3_cmd(nmax, kappa, grid, cfg, threads);
        else if (*belt) rep = belt_cmd(kappa, r_in, R_out);
        else if (*cds) rep = cds_cmd();
        else if (*gap) rep = gap_cmd();
        else if (*wn) rep = wn_cmd(nmin, nmax);
        else if (*gate) rep = gate_cmd(n, kappa, L, cfg);
        else if (*prof) rep = profile_cmd(kind, n, kappa, L, r_in, R_out, resolution, cfg);
        rep.meta = meta(o);

        std::ostringstream buf;
        if (o.format == "json") cli::write_json(rep, o.digits, buf);
        else cli::write_csv(rep, o.digits, buf);
        if (o.output.empty()) {
            std::cout << buf.str();
        } else {
            std::ofstream f(o.output, std::ios::binary);
            if (!f) throw domain_error("cannot open output file " + o.output);
            f << buf.str();
        }
        return 0;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    }
}
