#include "xtun/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "xtun/experiments.hpp"

namespace xtun {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& prefix,
                const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw validation_error("unknown config key: " + prefix + item.key());
}

const json* section(const json& root, const char* name) {
    if (!root.contains(name)) return nullptr;
    const json& s = root.at(name);
    if (!s.is_object())
        throw validation_error(std::string("config section '") + name +
                               "' must be an object");
    return &s;
}

double num(const json& s, const std::string& prefix, const char* key, double def) {
    if (!s.contains(key)) return def;
    if (!s.at(key).is_number())
        throw validation_error("config field " + prefix + key + " must be a number");
    return s.at(key).get<double>();
}

int integer(const json& s, const std::string& prefix, const char* key, int def) {
    if (!s.contains(key)) return def;
    if (!s.at(key).is_number_integer())
        throw validation_error("config field " + prefix + key + " must be an integer");
    return s.at(key).get<int>();
}

PhysicsParams parse_physics(const json& root, PhysicsParams def) {
    const json* s = section(root, "physics");
    if (!s) return def;
    check_keys(*s, "physics.", {"hbar", "mass", "e2"});
    def.hbar = num(*s, "physics.", "hbar", def.hbar);
    def.mass = num(*s, "physics.", "mass", def.mass);
    def.e2 = num(*s, "physics.", "e2", def.e2);
    def.validate();
    return def;
}

Grid parse_grid(const json& root, Grid def) {
    const json* s = section(root, "grid");
    if (!s) return def;
    check_keys(*s, "grid.", {"x_min", "x_max", "n"});
    return Grid(num(*s, "grid.", "x_min", def.x_min),
                num(*s, "grid.", "x_max", def.x_max),
                integer(*s, "grid.", "n", def.n));
}

ExchangeKernel parse_kernel(const json& root, ExchangeKernel def) {
    const json* s = section(root, "kernel");
    if (!s) return def;
    check_keys(*s, "kernel.", {"e2", "soft"});
    def.e2 = num(*s, "kernel.", "e2", def.e2);
    def.soft = num(*s, "kernel.", "soft", def.soft);
    def.validate();
    return def;
}

PotentialSpec parse_potential(const json& root, PotentialSpec def) {
    const json* s = section(root, "potential");
    if (!s) return def;
    if (!s->contains("type") || !s->at("type").is_string())
        throw validation_error("config field potential.type must be a string");
    const std::string type = s->at("type").get<std::string>();
    PotentialSpec out;
    if (type == "double_gaussian_well") {
        check_keys(*s, "potential.",
                   {"type", "depth_left", "depth_right", "width", "separation"});
        DoubleGaussianWell w;
        if (const auto* d = std::get_if<DoubleGaussianWell>(&def)) w = *d;
        w.depth_left = num(*s, "potential.", "depth_left", w.depth_left);
        w.depth_right = num(*s, "potential.", "depth_right", w.depth_right);
        w.width = num(*s, "potential.", "width", w.width);
        w.separation = num(*s, "potential.", "separation", w.separation);
        out = w;
    } else if (type == "gaussian_well") {
        check_keys(*s, "potential.", {"type", "depth", "width", "center"});
        GaussianWell w;
        w.depth = num(*s, "potential.", "depth", w.depth);
        w.width = num(*s, "potential.", "width", w.width);
        w.center = num(*s, "potential.", "center", w.center);
        out = w;
    } else if (type == "harmonic") {
        check_keys(*s, "potential.", {"type", "omega", "center"});
        Harmonic w;
        w.omega = num(*s, "potential.", "omega", w.omega);
        w.center = num(*s, "potential.", "center", w.center);
        out = w;
    } else if (type == "soft_coulomb_well") {
        check_keys(*s, "potential.", {"type", "z", "core", "center"});
        SoftCoulombWell w;
        w.z = num(*s, "potential.", "z", w.z);
        w.core = num(*s, "potential.", "core", w.core);
        w.center = num(*s, "potential.", "center", w.center);
        out = w;
    } else if (type == "inverted_parabola_barrier") {
        check_keys(*s, "potential.", {"type", "u0", "k"});
        InvertedParabolaBarrier w;
        w.u0 = num(*s, "potential.", "u0", w.u0);
        w.k = num(*s, "potential.", "k", w.k);
        out = w;
    } else if (type == "zero") {
        check_keys(*s, "potential.", {"type"});
        out = ZeroPotential{};
    } else {
        throw validation_error("unknown potential.type: " + type);
    }
    validate_spec(out);
    return out;
}

std::vector<double> parse_scan_values(const json& root) {
    const json* s = section(root, "scan");
    if (!s) return {};
    check_keys(*s, "scan.", {"values"});
    if (!s->contains("values")) return {};
    const json& v = s->at("values");
    if (!v.is_array()) throw validation_error("config field scan.values must be an array");
    std::vector<double> out;
    for (const json& x : v) {
        if (!x.is_number()) throw validation_error("scan.values entries must be numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

DoubleGaussianWell require_double_well(const PotentialSpec& spec, const char* what) {
    const auto* w = std::get_if<DoubleGaussianWell>(&spec);
    if (!w)
        throw validation_error(std::string(what) +
                               " requires potential.type double_gaussian_well");
    return *w;
}

// ---- resolved-config serialization ----------------------------------------

json physics_json(const PhysicsParams& p) {
    return {{"hbar", p.hbar}, {"mass", p.mass}, {"e2", p.e2}};
}

json grid_json(const Grid& g) {
    return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"n", g.n}};
}

json kernel_json(const ExchangeKernel& k) {
    return {{"e2", k.e2}, {"soft", k.soft}};
}

json potential_json(const PotentialSpec& spec) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DoubleGaussianWell>)
                return {{"type", "double_gaussian_well"}, {"depth_left", s.depth_left},
                        {"depth_right", s.depth_right}, {"width", s.width},
                        {"separation", s.separation}};
            else if constexpr (std::is_same_v<T, GaussianWell>)
                return {{"type", "gaussian_well"}, {"depth", s.depth},
                        {"width", s.width}, {"center", s.center}};
            else if constexpr (std::is_same_v<T, Harmonic>)
                return {{"type", "harmonic"}, {"omega", s.omega}, {"center", s.center}};
            else if constexpr (std::is_same_v<T, SoftCoulombWell>)
                return {{"type", "soft_coulomb_well"}, {"z", s.z}, {"core", s.core},
                        {"center", s.center}};
            else if constexpr (std::is_same_v<T, InvertedParabolaBarrier>)
                return {{"type", "inverted_parabola_barrier"}, {"u0", s.u0}, {"k", s.k}};
            else
                return {{"type", "zero"}};
        },
        spec);
}

json fit_json(const FitResult& f, bool with_axes = true) {
    json out = {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
    if (with_axes) out["axes"] = f.axes;
    return out;
}

json table_json(const ScanResult& t) {
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back(r);
    return {{"columns", t.columns}, {"rows", rows}};
}

// The scan functions fill in default parameter values when the config gives
// none; recover the actually-used values from the result table so the
// resolved config is complete.
std::vector<double> used_values(const ScanResult& t) {
    std::vector<double> out;
    for (const auto& r : t.rows) out.push_back(r[0]);
    return out;
}

// ---- output ----------------------------------------------------------------

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv_table(std::ostream& out, const ScanResult& table, const json* trailer) {
    for (size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << fmt17(row[i]);
        out << "\n";
    }
    if (trailer) out << trailer->dump() << "\n";
}

void emit(std::ostream& out, const std::string& format, const std::string& command,
          json resolved, json results, const ScanResult* table, const json* csv_trailer) {
    if (format == "json") {
        json doc = {{"version", 1},
                    {"command", command},
                    {"config", std::move(resolved)},
                    {"results", std::move(results)}};
        out << doc.dump(2) << "\n";
    } else if (format == "csv") {
        if (!table)
            throw validation_error("csv output is not available for subcommand " + command);
        write_csv_table(out, *table, csv_trailer);
    } else {
        throw validation_error("unknown output format: " + format);
    }
}

// ---- pipelines -------------------------------------------------------------

void run_spectrum(const json& root, std::ostream& out, const std::string& format) {
    PhysicsParams ph = parse_physics(root, {});
    Grid grid = parse_grid(root, Grid(-12.0, 12.0, 3999));
    PotentialSpec pot = parse_potential(root, Harmonic{});
    int k = 4;
    if (const json* s = section(root, "spectrum")) {
        check_keys(*s, "spectrum.", {"k"});
        k = integer(*s, "spectrum.", "k", k);
    }
    GridFunction u = sample_potential(pot, ph, grid);
    Spectrum spec = solve_lowest(assemble_hamiltonian(u, ph), k);

    ScanResult table;
    table.columns = {"index", "energy"};
    json energies = json::array();
    for (int j = 0; j < k; ++j) {
        table.rows.push_back({static_cast<double>(j), spec.pairs[j].energy});
        energies.push_back(spec.pairs[j].energy);
    }
    json resolved = {{"physics", physics_json(ph)}, {"grid", grid_json(grid)},
                     {"potential", potential_json(pot)}, {"spectrum", {{"k", k}}}};
    emit(out, format, "spectrum", resolved, {{"energies", energies}}, &table, nullptr);
}

void run_wkb(const json& root, std::ostream& out, const std::string& format) {
    PhysicsParams ph = parse_physics(root, {});
    Grid grid = parse_grid(root, Grid(-3.0, 3.0, 4000));
    PotentialSpec pot = parse_potential(root, InvertedParabolaBarrier{});
    double energy = 0.5;
    std::pair<double, double> bracket{grid.x_min, grid.x_max};
    if (const json* s = section(root, "wkb")) {
        check_keys(*s, "wkb.", {"energy", "bracket"});
        energy = num(*s, "wkb.", "energy", energy);
        if (s->contains("bracket")) {
            const json& b = s->at("bracket");
            if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
                throw validation_error("config field wkb.bracket must be [x0, x1]");
            bracket = {b[0].get<double>(), b[1].get<double>()};
        }
    }
    GridFunction u = sample_potential(pot, ph, grid);
    TurningPoints tp = find_turning_points(u, energy, bracket);
    WkbResult w = action_integral(u, energy, tp, ph);

    ScanResult table;
    table.columns = {"action", "t_estimate", "turning_a", "turning_b"};
    table.rows.push_back({w.action, w.t_estimate, tp.a, tp.b});
    json resolved = {{"physics", physics_json(ph)}, {"grid", grid_json(grid)},
                     {"potential", potential_json(pot)},
                     {"wkb", {{"energy", energy}, {"bracket", {bracket.first, bracket.second}}}}};
    json results = {{"action", w.action}, {"t_estimate", w.t_estimate},
                    {"turning_a", tp.a}, {"turning_b", tp.b}};
    emit(out, format, "wkb", resolved, results, &table, nullptr);
}

void run_exchange(const json& root, std::ostream& out, const std::string& format) {
    PhysicsParams ph = parse_physics(root, PhysicsParams{0.45, 1.0, 1.0});
    PotentialSpec pot = parse_potential(root, DoubleGaussianWell{1.25, 0.5, 0.6, 8.0});
    DoubleGaussianWell well = require_double_well(pot, "exchange");
    const double half_default = 0.5 * well.separation + 8.0 * well.width;
    Grid grid = parse_grid(root, Grid(-half_default, half_default,
                                      static_cast<int>(200 * half_default)));
    ExchangeKernel kernel = parse_kernel(root, ExchangeKernel{ph.e2, well.width});

    ReferenceOrbitals ref = reference_orbitals(well, ph, grid);
    ExchangeIntegralResult g = exchange_integral(ref.psi_2, ref.psi_1L, ref.psi_1R, kernel);
    AdmixtureResult adm = admixture_bg1(g, ref.e_1L, ref.e_1R);

    ScanResult table;
    table.columns = {"G", "est_error", "b_g1", "detuning"};
    table.rows.push_back({g.g, g.est_error, adm.b_g1, adm.detuning});
    json resolved = {{"physics", physics_json(ph)}, {"grid", grid_json(grid)},
                     {"potential", potential_json(pot)}, {"kernel", kernel_json(kernel)}};
    json results = {{"G", g.g}, {"est_error", g.est_error}, {"b_g1", adm.b_g1},
                    {"detuning", adm.detuning}, {"e_1L", ref.e_1L}, {"e_1R", ref.e_1R},
                    {"e_2", ref.psi_2.energy}};
    emit(out, format, "exchange", resolved, results, &table, nullptr);
}

void run_hf_tail(const json& root, std::ostream& out, const std::string& format) {
    HfTailConfig cfg;
    cfg.base = parse_physics(root, cfg.base);
    cfg.well = require_double_well(parse_potential(root, cfg.well), "hf-tail");
    Grid grid = parse_grid(root, Grid(-cfg.box_half_width, cfg.box_half_width, cfg.n));
    if (std::abs(grid.x_min + grid.x_max) > 1e-12)
        throw validation_error("hf-tail grid must be symmetric about 0");
    cfg.box_half_width = grid.x_max;
    cfg.n = grid.n;
    ExchangeKernel kernel = parse_kernel(root, ExchangeKernel{cfg.base.e2, cfg.kernel_soft});
    cfg.base.e2 = kernel.e2;
    cfg.kernel_soft = kernel.soft;
    if (const json* s = section(root, "hf_tail")) {
        check_keys(*s, "hf_tail.", {"window_offset_widths"});
        cfg.window_offset_widths =
            num(*s, "hf_tail.", "window_offset_widths", cfg.window_offset_widths);
    }
    HfTailRun run = hf_tail_pipeline(cfg);

    ScanResult table;
    table.columns = {"x", "ratio"};
    for (const auto& [x, r] : run.tail.ratio_series) table.rows.push_back({x, r});
    json trailer = {{"slope", run.tail.slope}, {"flatness", run.tail.flatness}};
    json resolved = {{"physics", physics_json(cfg.base)}, {"grid", grid_json(grid)},
                     {"potential", potential_json(cfg.well)},
                     {"kernel", kernel_json(kernel)},
                     {"hf_tail", {{"window_offset_widths", cfg.window_offset_widths}}}};
    json results = {{"e1", run.e1}, {"slope", run.tail.slope},
                    {"flatness", run.tail.flatness},
                    {"window", {run.tail.window.first, run.tail.window.second}},
                    {"window_points", run.tail.ratio_series.size()}};
    emit(out, format, "hf-tail", resolved, results, &table, &trailer);
}

void run_oracle2p(const json& root, std::ostream& out, const std::string& format) {
    OracleConfig cfg;
    cfg.base = parse_physics(root, cfg.base);
    cfg.well = require_double_well(parse_potential(root, cfg.well), "oracle2p");
    ExchangeKernel kernel = parse_kernel(root, ExchangeKernel{cfg.e2, cfg.kernel_soft});
    cfg.e2 = kernel.e2;
    cfg.kernel_soft = kernel.soft;
    if (const json* s = section(root, "oracle")) {
        check_keys(*s, "oracle.", {"n", "box_margin_widths", "tol", "n_states"});
        cfg.n = integer(*s, "oracle.", "n", cfg.n);
        cfg.box_margin_widths = num(*s, "oracle.", "box_margin_widths", cfg.box_margin_widths);
        cfg.tol = num(*s, "oracle.", "tol", cfg.tol);
        cfg.n_states = integer(*s, "oracle.", "n_states", cfg.n_states);
    }
    OracleResult res = run_oracle(cfg);

    auto run_json = [](const OracleRun& r) {
        return json{{"e2", r.e2}, {"energy", r.energy}, {"transfer", r.transfer},
                    {"occupation", r.occupation}, {"overlap_with_ref", r.overlap_with_ref},
                    {"state_index", r.state_index}, {"ground_energy", r.ground_energy}};
    };
    const double pred_occ = res.diag.predicted_transfer * res.diag.predicted_transfer;
    json results = {
        {"non_interacting", run_json(res.non_interacting)},
        {"interacting", run_json(res.interacting)},
        {"diagnostics",
         {{"b_t1", res.diag.b_t1}, {"G", res.diag.g}, {"j_cross", res.diag.j_cross},
          {"e_1L", res.diag.e_1L}, {"e_1R", res.diag.e_1R},
          {"e0_plus_e1", res.diag.e0_plus_e1},
          {"predicted_transfer", res.diag.predicted_transfer}}},
        {"occupation_ratio", res.interacting.occupation / res.non_interacting.occupation},
        {"predicted_occupation", pred_occ},
        {"prediction_agreement", res.interacting.occupation / pred_occ}};
    json resolved = {{"physics", physics_json(cfg.base)},
                     {"potential", potential_json(cfg.well)},
                     {"kernel", kernel_json(kernel)},
                     {"oracle",
                      {{"n", cfg.n}, {"box_margin_widths", cfg.box_margin_widths},
                       {"tol", cfg.tol}, {"n_states", cfg.n_states}}}};
    emit(out, format, "oracle2p", resolved, results, nullptr, nullptr);
}

void run_scan_splitting(const json& root, std::ostream& out, const std::string& format) {
    SplittingScanConfig cfg;
    cfg.base = parse_physics(root, cfg.base);
    cfg.well = require_double_well(parse_potential(root, cfg.well), "scan-hbar-splitting");
    Grid grid = parse_grid(root, Grid(-cfg.box_half_width, cfg.box_half_width, cfg.n));
    if (std::abs(grid.x_min + grid.x_max) > 1e-12)
        throw validation_error("scan-hbar-splitting grid must be symmetric about 0");
    cfg.box_half_width = grid.x_max;
    cfg.n = grid.n;
    cfg.hbar_values = parse_scan_values(root);
    SplittingScanResult res = scan_hbar_splitting(cfg);

    json trailer = fit_json(res.fit, false);
    json resolved = {{"physics", physics_json(cfg.base)}, {"grid", grid_json(grid)},
                     {"potential", potential_json(cfg.well)},
                     {"scan", {{"values", used_values(res.table)}}}};
    json results = {{"table", table_json(res.table)}, {"fit", fit_json(res.fit)},
                    {"action", res.action}};
    emit(out, format, "scan-hbar-splitting", resolved, results, &res.table, &trailer);
}

void run_scan_distance(const json& root, std::ostream& out, const std::string& format) {
    DistanceScanConfig cfg;
    cfg.base = parse_physics(root, cfg.base);
    PotentialSpec pot = parse_potential(
        root, DoubleGaussianWell{cfg.depth_left, cfg.depth_right_guess, cfg.width, 0.0});
    DoubleGaussianWell well = require_double_well(pot, "scan-distance");
    cfg.depth_left = well.depth_left;
    cfg.depth_right_guess = well.depth_right;
    cfg.width = well.width;
    ExchangeKernel kernel = parse_kernel(root, ExchangeKernel{cfg.base.e2, cfg.kernel_soft});
    cfg.base.e2 = kernel.e2;
    cfg.kernel_soft = kernel.soft;
    if (const json* s = section(root, "distance")) {
        check_keys(*s, "distance.", {"points_per_unit", "box_margin_widths"});
        cfg.points_per_unit = integer(*s, "distance.", "points_per_unit", cfg.points_per_unit);
        cfg.box_margin_widths = num(*s, "distance.", "box_margin_widths", cfg.box_margin_widths);
    }
    cfg.separations = parse_scan_values(root);
    DistanceScanResult res = scan_distance_exchange(cfg);

    json trailer = fit_json(res.fit, false);
    json resolved = {{"physics", physics_json(cfg.base)},
                     {"potential", potential_json(PotentialSpec{well})},
                     {"kernel", kernel_json(kernel)},
                     {"distance",
                      {{"points_per_unit", cfg.points_per_unit},
                       {"box_margin_widths", cfg.box_margin_widths}}},
                     {"scan", {{"values", used_values(res.table)}}}};
    json results = {{"table", table_json(res.table)}, {"fit", fit_json(res.fit)},
                    {"tuned_depth_right", res.tuned_depth_right}};
    emit(out, format, "scan-distance", resolved, results, &res.table, &trailer);
}

void run_scan_case1(const json& root, std::ostream& out, const std::string& format) {
    Case1ScanConfig cfg;
    cfg.base = parse_physics(root, cfg.base);
    cfg.well = require_double_well(parse_potential(root, cfg.well), "scan-case1");
    Grid grid = parse_grid(root, Grid(-cfg.box_half_width, cfg.box_half_width, cfg.n));
    if (std::abs(grid.x_min + grid.x_max) > 1e-12)
        throw validation_error("scan-case1 grid must be symmetric about 0");
    cfg.box_half_width = grid.x_max;
    cfg.n = grid.n;
    ExchangeKernel kernel = parse_kernel(root, ExchangeKernel{cfg.base.e2, cfg.kernel_soft});
    cfg.base.e2 = kernel.e2;
    cfg.kernel_soft = kernel.soft;
    if (const json* s = section(root, "case1")) {
        check_keys(*s, "case1.", {"energy_under", "energy_above"});
        cfg.energy_under = num(*s, "case1.", "energy_under", cfg.energy_under);
        cfg.energy_above = num(*s, "case1.", "energy_above", cfg.energy_above);
    }
    cfg.hbar_values = parse_scan_values(root);
    Case1ScanResult res = scan_hbar_exchange_case1(cfg);

    json trailer = fit_json(res.fit, false);
    json resolved = {{"physics", physics_json(cfg.base)}, {"grid", grid_json(grid)},
                     {"potential", potential_json(cfg.well)},
                     {"kernel", kernel_json(kernel)},
                     {"case1",
                      {{"energy_under", cfg.energy_under},
                       {"energy_above", cfg.energy_above}}},
                     {"scan", {{"values", used_values(res.table)}}}};
    json results = {{"table", table_json(res.table)}, {"fit", fit_json(res.fit)}};
    emit(out, format, "scan-case1", resolved, results, &res.table, &trailer);
}

void run_scan_case2(const json& root, std::ostream& out, const std::string& format) {
    Case2ScanConfig cfg;
    cfg.base = parse_physics(root, cfg.base);
    cfg.grid = parse_grid(root, cfg.grid);
    if (const json* s = section(root, "case2")) {
        check_keys(*s, "case2.", {"omega", "p", "xi0"});
        cfg.oscillator.omega = num(*s, "case2.", "omega", cfg.oscillator.omega);
        cfg.oscillator.p = num(*s, "case2.", "p", cfg.oscillator.p);
        cfg.oscillator.xi0 = num(*s, "case2.", "xi0", cfg.oscillator.xi0);
    }
    cfg.hbar_values = parse_scan_values(root);
    Case2ScanResult res = scan_case2(cfg);

    json trailer = fit_json(res.fit, false);
    json resolved = {{"physics", physics_json(cfg.base)}, {"grid", grid_json(cfg.grid)},
                     {"case2",
                      {{"omega", cfg.oscillator.omega}, {"p", cfg.oscillator.p},
                       {"xi0", cfg.oscillator.xi0}}},
                     {"scan", {{"values", used_values(res.table)}}}};
    json results = {{"table", table_json(res.table)}, {"fit", fit_json(res.fit)},
                    {"predicted_slope", res.predicted_slope}};
    emit(out, format, "scan-case2", resolved, results, &res.table, &trailer);
}

void run_scan_case3(const json& root, std::ostream& out, const std::string& format) {
    Case3ScanConfig cfg;
    cfg.base = parse_physics(root, cfg.base);
    ExchangeKernel kernel = parse_kernel(root, ExchangeKernel{cfg.base.e2, cfg.kernel_soft});
    cfg.base.e2 = kernel.e2;
    cfg.kernel_soft = kernel.soft;
    if (const json* s = section(root, "case3")) {
        check_keys(*s, "case3.",
                   {"z", "box_half_width", "points_per_core", "psi2_mode",
                    "inv_hbar_start", "inv_hbar_span", "n_points"});
        cfg.z = num(*s, "case3.", "z", cfg.z);
        cfg.box_half_width = num(*s, "case3.", "box_half_width", cfg.box_half_width);
        cfg.points_per_core = integer(*s, "case3.", "points_per_core", cfg.points_per_core);
        cfg.psi2_mode = integer(*s, "case3.", "psi2_mode", cfg.psi2_mode);
        cfg.inv_hbar_start = num(*s, "case3.", "inv_hbar_start", cfg.inv_hbar_start);
        cfg.inv_hbar_span = num(*s, "case3.", "inv_hbar_span", cfg.inv_hbar_span);
        cfg.n_points = integer(*s, "case3.", "n_points", cfg.n_points);
    }
    Case3ScanResult res = scan_hbar_exchange_case3(cfg);

    json trailer = fit_json(res.fit, false);
    json resolved = {{"physics", physics_json(cfg.base)},
                     {"kernel", kernel_json(kernel)},
                     {"case3",
                      {{"z", cfg.z}, {"box_half_width", cfg.box_half_width},
                       {"points_per_core", cfg.points_per_core},
                       {"psi2_mode", cfg.psi2_mode},
                       {"inv_hbar_start", cfg.inv_hbar_start},
                       {"inv_hbar_span", cfg.inv_hbar_span},
                       {"n_points", cfg.n_points}}}};
    json results = {{"table", table_json(res.table)}, {"fit", fit_json(res.fit)},
                    {"loglog_fit", fit_json(res.loglog_fit)}};
    emit(out, format, "scan-case3", resolved, results, &res.table, &trailer);
}

} // namespace

const std::vector<std::string>& pipeline_names() {
    static const std::vector<std::string> names = {
        "spectrum", "wkb", "exchange", "hf-tail", "oracle2p",
        "scan-hbar-splitting", "scan-distance", "scan-case1", "scan-case2",
        "scan-case3"};
    return names;
}

nlohmann::json load_config(const std::string& path,
                           const std::vector<std::string>& overrides) {
    json root = json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw validation_error("cannot open config file: " + path);
        root = json::parse(in, nullptr, false);
        if (root.is_discarded())
            throw validation_error("config file is not valid JSON: " + path);
        if (!root.is_object())
            throw validation_error("config root must be a JSON object");
    }
    for (const std::string& ov : overrides) {
        const size_t eq = ov.find('=');
        if (eq == std::string::npos || eq == 0)
            throw validation_error("override must look like key.path=value: " + ov);
        const std::string keypath = ov.substr(0, eq);
        const std::string raw = ov.substr(eq + 1);
        json value = json::parse(raw, nullptr, false);
        if (value.is_discarded()) value = raw;  // bare strings allowed

        json* node = &root;
        size_t pos = 0;
        while (true) {
            const size_t dot = keypath.find('.', pos);
            const std::string key = keypath.substr(pos, dot - pos);
            if (key.empty())
                throw validation_error("override has an empty path segment: " + ov);
            if (dot == std::string::npos) {
                (*node)[key] = std::move(value);
                break;
            }
            json& next = (*node)[key];
            if (next.is_null()) next = json::object();
            if (!next.is_object())
                throw validation_error("override path crosses a non-object: " + ov);
            node = &next;
            pos = dot + 1;
        }
    }
    if (root.contains("version")) {
        if (!root.at("version").is_number_integer() || root.at("version").get<int>() != 1)
            throw validation_error("unsupported config version (expected 1)");
    }
    check_keys(root, "",
               {"version", "physics", "grid", "potential", "kernel", "scan",
                "spectrum", "wkb", "hf_tail", "oracle", "distance", "case1",
                "case2", "case3"});
    return root;
}

void run_pipeline(const std::string& subcommand, const nlohmann::json& config,
                  std::ostream& out, const std::string& format) {
    if (subcommand == "spectrum") run_spectrum(config, out, format);
    else if (subcommand == "wkb") run_wkb(config, out, format);
    else if (subcommand == "exchange") run_exchange(config, out, format);
    else if (subcommand == "hf-tail") run_hf_tail(config, out, format);
    else if (subcommand == "oracle2p") run_oracle2p(config, out, format);
    else if (subcommand == "scan-hbar-splitting") run_scan_splitting(config, out, format);
    else if (subcommand == "scan-distance") run_scan_distance(config, out, format);
    else if (subcommand == "scan-case1") run_scan_case1(config, out, format);
    else if (subcommand == "scan-case2") run_scan_case2(config, out, format);
    else if (subcommand == "scan-case3") run_scan_case3(config, out, format);
    else throw validation_error("unknown subcommand: " + subcommand);
}

} // namespace xtun
