#include "zetadyn/cli/app.hpp"

#include "zetadyn/dynamics.hpp"
#include "zetadyn/energy.hpp"
#include "zetadyn/errors.hpp"
#include "zetadyn/geometry.hpp"
#include "zetadyn/parallel.hpp"
#include "zetadyn/quantum.hpp"
#include "zetadyn/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>

#ifndef ZETADYN_VERSION
#define ZETADYN_VERSION "0.0.0"
#endif

namespace zetadyn::cli {

namespace {

void require(bool ok, const std::string& field, const std::string& what)
{
    if (!ok) {
        throw InvalidInput(field + ": " + what);
    }
}

bool contains(std::initializer_list<std::string_view> options, std::string_view value)
{
    return std::find(options.begin(), options.end(), value) != options.end();
}

bool is_one_of_commands(std::string_view name)
{
    return std::find(std::begin(kCommands), std::end(kCommands), name) != std::end(kCommands);
}

MapSpec map_spec(const SweepConfig& c)
{
    if (c.map == "appendix") {
        return AppendixParams{c.alpha};
    }
    return c.circuit;
}

std::string control_name(const SweepConfig& c)
{
    return c.map == "appendix" ? "alpha" : "r";
}

std::vector<double> control_grid(const SweepConfig& c)
{
    if (c.steps == 1) {
        return {c.control_min};
    }
    return linear_grid(c.control_min, c.control_max, c.steps);
}

ScanSettings scan_settings(const SweepConfig& c)
{
    ScanSettings s;
    s.range = {c.control_min, c.control_max};
    s.steps = c.steps;
    s.x0 = c.x0;
    s.n = c.n;
    s.transient = c.transient;
    s.retain = c.retain;
    s.workers = c.workers;
    return s;
}

PotentialSpec potential_spec(const SweepConfig& c)
{
    if (c.potential == "zero") {
        return potential::Zero{};
    }
    if (c.potential == "appendix") {
        return potential::MontgomeryAppendix{c.alpha, c.mass};
    }
    if (c.potential == "yitang") {
        return potential::Yitang{c.c, c.mass, c.alpha, c.allow_complex};
    }
    return potential::MontgomeryApprox{c.A, c.circuit.C};
}

bool uses_orbit(std::string_view command)
{
    return contains({"orbit", "poincare", "attractor", "spectrum", "scan", "energy", "transfer"}, command);
}

bool uses_control_grid(std::string_view command)
{
    return contains({"fixed-points", "scan", "energy", "transfer"}, command);
}

void validate_orbit_settings(const SweepConfig& c)
{
    require(std::isfinite(c.x0) && std::fabs(c.x0) >= kSingularityGuard, "x0",
            "must be finite and outside the singularity guard |x0| < 1e-12");
    require(c.n > c.transient, "n", "must exceed transient");
    const std::size_t kept = c.n - c.transient;
    if (c.command == "spectrum") {
        require(kept >= 4, "n", "spectrum needs at least 4 retained samples (n - transient >= 4)");
    }
    if (c.command == "poincare" || c.command == "attractor") {
        require(kept >= 2, "n", "needs at least 2 retained samples (n - transient >= 2)");
    }
    if (c.command == "scan") {
        require(c.retain >= 1 && c.retain <= kept, "retain", "must be in [1, n - transient]");
    }
}

void validate_map(const SweepConfig& c, const MapSpec& spec)
{
    try {
        validate(spec);
    } catch (const InvalidInput& e) {
        const std::string what = e.what();
        throw InvalidInput(what.substr(0, what.find(' ')) + ": " + what);
    }
    if (c.map == "appendix") {
        require(c.command != "energy" && c.command != "transfer", "map", "energy commands need the electrical map");
    }
}

Table table_with(std::vector<std::string> header)
{
    Table t;
    t.header = std::move(header);
    return t;
}

std::string status_cell(const OrbitStatus& s)
{
    return std::string(status_name(s));
}

PlotKind pick_kind(const SweepConfig& c, PlotKind fallback)
{
    if (c.kind == "scatter") {
        return PlotKind::Scatter;
    }
    if (c.kind == "line") {
        return PlotKind::Line;
    }
    return fallback;
}

std::string describe(const OrbitStatus& s)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, orbit_status::Completed>) {
                return "completed";
            } else if constexpr (std::is_same_v<T, orbit_status::Escaped>) {
                return "escaped at step " + std::to_string(v.step) + " (last value " + format_double(v.last_value) + ")";
            } else {
                return "singular at step " + std::to_string(v.step);
            }
        },
        s);
}

SweepOutput run_orbit(const SweepConfig& c)
{
    const Orbit orbit = generate_orbit(map_spec(c), c.x0, c.n, c.transient);
    if (orbit.samples.empty()) {
        throw OrbitAborted("orbit " + describe(orbit.status) + " before the first retained sample");
    }
    SweepOutput out;
    out.table = table_with({"step", "x"});
    out.plot = {{}, {}, "step", "x", "orbit"};
    for (std::size_t i = 0; i < orbit.samples.size(); ++i) {
        const auto step = static_cast<std::uint64_t>(c.transient + 1 + i);
        out.table.rows.push_back({step, orbit.samples[i]});
        out.plot.x.push_back(static_cast<double>(step));
        out.plot.y.push_back(orbit.samples[i]);
    }
    out.kind = pick_kind(c, PlotKind::Line);
    out.summary.push_back("status: " + describe(orbit.status));
    return out;
}

SweepOutput run_fixed_points(const SweepConfig& c)
{
    const MapSpec base = map_spec(c);
    const auto grid = control_grid(c);
    const auto records = parallel_indexed(grid.size(), c.workers, [&](std::size_t i) {
        return find_fixed_points(with_control(base, grid[i]), {c.x_lo, c.x_hi}, c.seeds);
    });
    SweepOutput out;
    out.table = table_with({control_name(c), "x_star", "multiplier", "stability", "residual"});
    out.plot = {{}, {}, control_name(c), "x*", "fixed points"};
    for (const auto& per_control : records) {
        for (const auto& r : per_control) {
            out.table.rows.push_back({r.control, r.x_star, r.multiplier, std::string(stability_name(r.stability)), r.residual});
            out.plot.x.push_back(r.control);
            out.plot.y.push_back(r.x_star);
        }
    }
    if (out.table.rows.empty()) {
        throw Error("no fixed points found in [" + format_double(c.x_lo) + ", " + format_double(c.x_hi) + "]");
    }
    out.kind = pick_kind(c, PlotKind::Scatter);
    out.summary.push_back(std::to_string(out.table.rows.size()) + " fixed points");
    return out;
}

std::string join_points(const std::vector<double>& xs)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? ";" : "") + format_double(xs[i]);
    }
    return s;
}

SweepOutput run_scan(const SweepConfig& c)
{
    const MapSpec base = map_spec(c);
    const ScanResult scan = parameter_scan(base, scan_settings(c));
    SweepOutput out;
    const std::string cn = control_name(c);
    out.table = table_with({cn, "status", "lyapunov", "retained"});
    for (std::size_t i = 0; i < scan.parameter_grid.size(); ++i) {
        out.table.rows.push_back(
            {scan.parameter_grid[i], status_cell(scan.status[i]), scan.lyapunov[i], join_points(scan.retained_points[i])});
    }
    if (c.plot == "lyapunov") {
        out.plot = {scan.parameter_grid, scan.lyapunov, cn, "Lyapunov exponent", "Lyapunov exponent"};
        out.kind = pick_kind(c, PlotKind::Line);
    } else {
        out.plot = {{}, {}, cn, "x", "bifurcation diagram"};
        for (std::size_t i = 0; i < scan.parameter_grid.size(); ++i) {
            for (const double x : scan.retained_points[i]) {
                out.plot.x.push_back(scan.parameter_grid[i]);
                out.plot.y.push_back(x);
            }
        }
        out.kind = pick_kind(c, PlotKind::Scatter);
    }
    for (const auto& note : compare_with_fixed_points(base, scan, {c.x_lo, c.x_hi}, c.seeds)) {
        out.notes.push_back(cn + "=" + format_double(note.control) + ": " + note.message);
    }
    std::size_t chaotic = 0;
    for (const double l : scan.lyapunov) {
        chaotic += l > 0.0 ? 1 : 0;
    }
    out.summary.push_back(std::to_string(chaotic) + " of " + std::to_string(scan.lyapunov.size()) +
                          " grid points have a positive Lyapunov exponent");
    return out;
}

Orbit completed_orbit(const SweepConfig& c)
{
    Orbit orbit = generate_orbit(map_spec(c), c.x0, c.n, c.transient);
    if (!orbit.completed()) {
        throw OrbitAborted("orbit " + describe(orbit.status));
    }
    return orbit;
}

SweepOutput run_poincare(const SweepConfig& c)
{
    const Orbit orbit = completed_orbit(c);
    SectionMode mode = section_mode::Crossing{};
    if (c.stride > 0) {
        mode = section_mode::Stroboscopic{c.stride};
    }
    const auto section = poincare_section(orbit, c.section, mode);
    if (section.points.empty()) {
        throw Error("the section at " + format_double(section.section_value) + " has no points");
    }
    SweepOutput out;
    out.table = table_with({"x_n", "x_next"});
    out.plot = {{}, {}, "x_n", "x_n+1", "Poincare section"};
    for (const auto& p : section.points) {
        out.table.rows.push_back({p.current, p.next});
        out.plot.x.push_back(p.current);
        out.plot.y.push_back(p.next);
    }
    out.kind = pick_kind(c, PlotKind::Scatter);
    out.summary.push_back("section value " + format_double(section.section_value) + ", " +
                          std::to_string(section.points.size()) + " points");
    return out;
}

SweepOutput run_attractor(const SweepConfig& c)
{
    const auto embedded = attractor_embedding(completed_orbit(c));
    SweepOutput out;
    out.table = table_with({"x", "y", "z"});
    out.plot = {{}, {}, "x", "sin x", "attractor embedding"};
    double worst = 0.0;
    for (const auto& p : embedded.points) {
        out.table.rows.push_back({p.x, p.y, p.z});
        out.plot.x.push_back(p.x);
        out.plot.y.push_back(p.y);
        worst = std::max(worst, std::fabs(p.y * p.y + p.z * p.z - 1.0));
    }
    out.kind = pick_kind(c, PlotKind::Scatter);
    out.summary.push_back("max |y^2 + z^2 - 1| = " + format_double(worst));
    return out;
}

SweepOutput run_spectrum(const SweepConfig& c)
{
    const auto spectrum = power_spectrum(completed_orbit(c), SpectrumOptions{c.remove_mean, c.hann});
    SweepOutput out;
    out.table = table_with({"frequency", "power"});
    for (std::size_t i = 0; i < spectrum.frequencies.size(); ++i) {
        out.table.rows.push_back({spectrum.frequencies[i], spectrum.power[i]});
    }
    out.plot = {spectrum.frequencies, spectrum.power, "frequency (cycles/iteration)", "power", "power spectrum"};
    out.kind = pick_kind(c, PlotKind::Line);
    for (const auto& peak : dominant_frequencies(spectrum, c.top)) {
        out.summary.push_back("peak at " + format_double(peak.frequency) + " with power " + format_double(peak.power));
    }
    return out;
}

SweepOutput run_energy(const SweepConfig& c)
{
    SweepOutput out;
    std::vector<EnergyPoint> points;
    const bool by_capacitance = c.sweep == "C";
    if (by_capacitance) {
        points = energy_vs_capacitance(c.circuit, c.capacitances, scan_settings(c));
    } else {
        points = energy_vs_r(c.circuit, scan_settings(c));
    }
    const std::string cn = by_capacitance ? "C" : "r";
    out.table = table_with({cn, "status", "mean_e_inductor", "mean_e_capacitor"});
    out.plot = {{}, {}, cn, "mean inductor energy", "mean inductor energy"};
    for (const auto& p : points) {
        out.table.rows.push_back({p.control, status_cell(p.status), p.mean_e_inductor, p.mean_e_capacitor});
        out.plot.x.push_back(p.control);
        out.plot.y.push_back(p.mean_e_inductor);
    }
    out.kind = pick_kind(c, PlotKind::Line);
    return out;
}

SweepOutput run_transfer(const SweepConfig& c)
{
    const auto points = transfer_rate_vs_r(c.circuit, scan_settings(c));
    SweepOutput out;
    out.table = table_with({"r", "status", "mean_transfer_rate"});
    out.plot = {{}, {}, "r", "mean transfer rate", "energy transfer rate"};
    for (const auto& p : points) {
        out.table.rows.push_back({p.control, status_cell(p.status), p.mean_transfer_rate});
        out.plot.x.push_back(p.control);
        out.plot.y.push_back(p.mean_transfer_rate);
    }
    out.kind = pick_kind(c, PlotKind::Line);
    return out;
}

EigenMethod eigen_method_of(const SweepConfig& c)
{
    if (c.method == "dense") {
        return EigenMethod::Dense;
    }
    if (c.method == "arnoldi") {
        return EigenMethod::Arnoldi;
    }
    return EigenMethod::Auto;
}

struct EigenRow {
    std::size_t n_points;
    std::optional<EigenResult> result;
    std::string failure;
};

SweepOutput run_eigen(const SweepConfig& c)
{
    auto sizes = c.points;
    std::sort(sizes.begin(), sizes.end());
    const PotentialSpec spec = potential_spec(c);
    const ChaoticOperatorSpec coeffs{c.a_coeff, c.b_coeff, c.d_coeff, c.e_coeff};
    const bool plain = c.a_coeff == 1.0 && c.b_coeff == 1.0 && c.d_coeff == 1.0 && c.e_coeff == 0.0;

    // build every operator first so domain errors surface before any solve
    std::vector<HamiltonianMatrix> operators;
    for (const std::size_t n : sizes) {
        operators.push_back(build_hamiltonian(spec, GridSpec{c.x_min, c.x_max, n}, c.mass,
                                              plain ? std::nullopt : std::optional(coeffs)));
    }
    const auto rows = parallel_indexed(sizes.size(), c.workers, [&](std::size_t i) {
        EigenRow row{sizes[i], std::nullopt, {}};
        try {
            row.result = eigensolve(operators[i], c.k, eigen_method_of(c));
        } catch (const NoConvergence& e) {
            row.failure = e.what();
        }
        return row;
    });

    SweepOutput out;
    out.table = table_with({"n_points", "index", "eigenvalue_re", "eigenvalue_im", "residual", "method", "status"});
    out.plot = {{}, {}, "index", "Re eigenvalue", "lowest eigenvalues"};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < c.k; ++j) {
            const auto n = static_cast<std::uint64_t>(row.n_points);
            if (row.result) {
                const auto& r = *row.result;
                out.table.rows.push_back({n, static_cast<std::uint64_t>(j), r.eigenvalues[j].real(), r.eigenvalues[j].imag(),
                                          r.residual_norms[j], std::string(method_name(r)), std::string("converged")});
                if (row.n_points == sizes.back()) {
                    out.plot.x.push_back(static_cast<double>(j));
                    out.plot.y.push_back(r.eigenvalues[j].real());
                }
            } else {
                out.table.rows.push_back(
                    {n, static_cast<std::uint64_t>(j), nan, nan, nan, std::string("none"), std::string("no-convergence")});
            }
        }
        if (!row.failure.empty()) {
            out.summary.push_back("n_points=" + std::to_string(row.n_points) + ": " + row.failure);
        }
    }
    out.kind = pick_kind(c, PlotKind::Scatter);
    return out;
}

SweepOutput run_pair_correlation(const SweepConfig& c)
{
    SweepOutput out;
    out.table = table_with({"u", "g", "r2"});
    out.plot = {{}, {}, "u", "g(u)", "pair correlation"};
    for (const double u : linear_grid(c.u_min, c.u_max, c.steps)) {
        const double g = pair_correlation_g(u, c.delta);
        out.table.rows.push_back({u, g, pair_correlation_R2(u)});
        out.plot.x.push_back(u);
        out.plot.y.push_back(g);
    }
    out.kind = pick_kind(c, PlotKind::Line);
    return out;
}

} // namespace

void validate(const SweepConfig& c)
{
    require(is_one_of_commands(c.command), "command", "unknown command '" + c.command + "'");
    require(contains({"csv", "svg"}, c.format), "format", "must be csv or svg");
    require(contains({"default", "bifurcation", "lyapunov"}, c.plot), "plot", "must be bifurcation or lyapunov");
    require(contains({"default", "scatter", "line"}, c.kind), "kind", "must be scatter or line");
    require(contains({"electrical", "appendix"}, c.map), "map", "must be electrical or appendix");
    require(c.workers >= 1, "workers", "must be >= 1");

    const std::string cmd = c.command;
    const MapSpec spec = map_spec(c);
    if (cmd != "eigen" && cmd != "pair-correlation") {
        validate_map(c, spec);
    }
    if (uses_orbit(cmd)) {
        validate_orbit_settings(c);
    }
    if (uses_control_grid(cmd) && !(cmd == "energy" && c.sweep == "C")) {
        require(c.steps >= (cmd == "fixed-points" ? 1u : 2u), "steps", cmd == "fixed-points" ? "must be >= 1" : "must be >= 2");
        require(std::isfinite(c.control_min) && std::isfinite(c.control_max), "r-min", "range must be finite");
        if (c.steps >= 2) {
            require(c.control_min < c.control_max, "r-min", "must be below r-max");
        }
        for (const double v : control_grid(c)) {
            validate_map(c, with_control(spec, v));
        }
    }
    if (cmd == "fixed-points" || cmd == "scan") {
        require(std::isfinite(c.x_lo) && std::isfinite(c.x_hi) && c.x_lo < c.x_hi, "x-lo", "must be below x-hi");
        require(c.x_lo >= kSingularityGuard || c.x_hi <= -kSingularityGuard, "x-lo",
                "search interval must exclude the singularity guard around 0");
        require(c.seeds >= 1, "seeds", "must be >= 1");
    }
    if (cmd == "spectrum") {
        require(c.top >= 1, "top", "must be >= 1");
    }
    if (cmd == "energy") {
        require(contains({"r", "C"}, c.sweep), "sweep", "must be r or C");
        if (c.sweep == "C") {
            require(!c.capacitances.empty(), "C-values", "needs at least one capacitance");
            for (const double v : c.capacitances) {
                require(std::isfinite(v) && v > 0.0, "C-values", "every capacitance must be finite and > 0");
            }
        }
    }
    if (cmd == "eigen") {
        require(contains({"zero", "montgomery", "appendix", "yitang"}, c.potential), "potential",
                "must be zero, montgomery, appendix or yitang");
        require(contains({"auto", "dense", "arnoldi"}, c.method), "method", "must be auto, dense or arnoldi");
        require(std::isfinite(c.mass) && c.mass > 0.0, "m", "must be finite and > 0");
        require(std::isfinite(c.x_min) && std::isfinite(c.x_max) && c.x_min < c.x_max, "x-min", "must be below x-max");
        require(!c.points.empty(), "points", "needs at least one grid size");
        for (const std::size_t n : c.points) {
            require(n >= 3, "points", "every grid size must be >= 3");
            require(c.k >= 1 && c.k <= n, "k", "must be in [1, n_points] for every grid size");
        }
        if (c.potential == "montgomery") {
            require(std::isfinite(c.A), "A", "must be finite");
            require(std::isfinite(c.circuit.C) && c.circuit.C != 0.0, "C", "must be finite and nonzero");
        }
        for (const double v : {c.alpha, c.c, c.a_coeff, c.b_coeff, c.d_coeff, c.e_coeff}) {
            require(std::isfinite(v), "coefficients", "must be finite");
        }
    }
    if (cmd == "pair-correlation") {
        require(c.steps >= 2, "steps", "must be >= 2");
        require(std::isfinite(c.u_min) && std::isfinite(c.u_max) && c.u_min < c.u_max, "u-min", "must be below u-max");
        if (c.delta) {
            require(std::isfinite(*c.delta), "delta", "must be finite");
        }
    }
}

SweepOutput run_sweep(const SweepConfig& c)
{
    validate(c);
    const std::string& cmd = c.command;
    if (cmd == "orbit") {
        return run_orbit(c);
    }
    if (cmd == "fixed-points") {
        return run_fixed_points(c);
    }
    if (cmd == "scan") {
        return run_scan(c);
    }
    if (cmd == "poincare") {
        return run_poincare(c);
    }
    if (cmd == "attractor") {
        return run_attractor(c);
    }
    if (cmd == "spectrum") {
        return run_spectrum(c);
    }
    if (cmd == "energy") {
        return run_energy(c);
    }
    if (cmd == "transfer") {
        return run_transfer(c);
    }
    if (cmd == "eigen") {
        return run_eigen(c);
    }
    return run_pair_correlation(c);
}

namespace {

/// Registers options on a subcommand and remembers how to print each
/// resolved value for the manifest.
class OptionSet {
public:
    explicit OptionSet(CLI::App* app) : app_(app) {}

    template <class T>
    CLI::Option* add(const std::string& names, T& ref, const std::string& help)
    {
        auto* opt = app_->add_option(names, ref, help);
        opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        remember(names, [&ref] { return show(ref); });
        return opt;
    }

    CLI::Option* flag(const std::string& names, bool& ref, const std::string& help)
    {
        auto* opt = app_->add_flag(names, ref, help);
        opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        remember(names, [&ref] { return std::string(ref ? "true" : "false"); });
        return opt;
    }

    [[nodiscard]] ConfigEntries resolved() const
    {
        ConfigEntries out;
        for (const auto& [key, fn] : entries_) {
            out.emplace_back(key, fn());
        }
        return out;
    }

    [[nodiscard]] CLI::App* app() const { return app_; }

private:
    static std::string show(double v) { return format_double(v); }
    static std::string show(std::size_t v) { return std::to_string(v); }
    static std::string show(unsigned v) { return std::to_string(v); }
    static std::string show(const std::string& v) { return v; }
    static std::string show(const std::optional<double>& v) { return v ? format_double(*v) : "unset"; }

    void remember(const std::string& names, std::function<std::string()> fn)
    {
        std::string key = names.substr(0, names.find(','));
        key.erase(0, key.find_first_not_of('-'));
        entries_.emplace_back(std::move(key), std::move(fn));
    }

    CLI::App* app_;
    std::vector<std::pair<std::string, std::function<std::string()>>> entries_;
};

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string::npos ? text.size() : comma;
        if (end > start) {
            items.push_back(text.substr(start, end - start));
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return items;
}

std::vector<double> parse_double_list(const std::string& field, const std::string& text)
{
    std::vector<double> out;
    for (const auto& item : split_list(text)) {
        try {
            out.push_back(parse_double(item));
        } catch (const InvalidInput&) {
            throw InvalidInput(field + ": '" + item + "' is not a number");
        }
    }
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& field, const std::string& text)
{
    std::vector<std::size_t> out;
    for (const auto& item : split_list(text)) {
        std::size_t value = 0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc{} || end != item.data() + item.size()) {
            throw InvalidInput(field + ": '" + item + "' is not a non-negative integer");
        }
        out.push_back(value);
    }
    return out;
}

const char* columns_for(std::string_view command)
{
    if (command == "orbit") return "CSV columns: step,x";
    if (command == "fixed-points") return "CSV columns: r (or alpha),x_star,multiplier,stability,residual";
    if (command == "scan") return "CSV columns: r (or alpha),status,lyapunov,retained (';'-separated)";
    if (command == "poincare") return "CSV columns: x_n,x_next";
    if (command == "attractor") return "CSV columns: x,y,z with y = sin x, z = cos x";
    if (command == "spectrum") return "CSV columns: frequency,power";
    if (command == "energy") return "CSV columns: r (or C),status,mean_e_inductor,mean_e_capacitor";
    if (command == "transfer") return "CSV columns: r,status,mean_transfer_rate";
    if (command == "eigen") return "CSV columns: n_points,index,eigenvalue_re,eigenvalue_im,residual,method,status";
    return "CSV columns: u,g,r2";
}

const char* description_for(std::string_view command)
{
    if (command == "orbit") return "Iterate a map and write the retained samples";
    if (command == "fixed-points") return "Locate and classify fixed points across a control grid";
    if (command == "scan") return "Bifurcation and Lyapunov scan over a control grid";
    if (command == "poincare") return "Delay-coordinate Poincare section of an orbit";
    if (command == "attractor") return "Embed an orbit as (x, sin x, cos x)";
    if (command == "spectrum") return "One-sided power spectrum of an orbit";
    if (command == "energy") return "Mean inductor and capacitor energy against r or C";
    if (command == "transfer") return "Mean energy transfer rate against r";
    if (command == "eigen") return "Lowest eigenvalues of a discretized Hamiltonian";
    return "Pair correlation g(u) and R2 on a grid";
}

struct Cli {
    CLI::App app{"Iterated circuit maps, spectra and Hamiltonian eigenproblems", "zetadyn"};
    SweepConfig config;
    std::string points_text = "1000";
    std::string capacitance_text;
    std::vector<std::unique_ptr<OptionSet>> sets;

    Cli()
    {
        app.require_subcommand(1);
        app.footer("Run `zetadyn <command> --help` for its flags and CSV columns.");
        app.set_version_flag("--version", ZETADYN_VERSION);
        app.add_option("--config", "flat key=value file with defaults for the subcommand's flags");
        for (const char* name : kCommands) {
            add_command(name);
        }
    }

    void add_command(const std::string& name)
    {
        auto* sub = app.add_subcommand(name, description_for(name));
        sub->footer(columns_for(name));
        auto set = std::make_unique<OptionSet>(sub);
        auto& c = config;
        auto& s = *set;
        const bool map_command = name != "eigen" && name != "pair-correlation";

        if (map_command) {
            s.add("--map", c.map, "electrical or appendix")->capture_default_str();
            s.add("--r", c.circuit.r, "map parameter r")->capture_default_str();
            s.add("--R", c.circuit.R, "resistance R")->capture_default_str();
            s.add("--L", c.circuit.L, "inductance L")->capture_default_str();
            s.add("--C", c.circuit.C, "capacitance C")->capture_default_str();
            s.add("--alpha", c.alpha, "appendix map coefficient")->capture_default_str();
        }
        if (uses_orbit(name)) {
            s.add("--x0", c.x0, "initial state")->capture_default_str();
            s.add("--n", c.n, "total iterations")->capture_default_str();
            s.add("--transient", c.transient, "iterations discarded before recording")->capture_default_str();
        }
        if (uses_control_grid(name)) {
            s.add("--r-min,--control-min", c.control_min, "first grid value of r (alpha for the appendix map)")
                ->capture_default_str();
            s.add("--r-max,--control-max", c.control_max, "last grid value")->capture_default_str();
        }
        if (uses_control_grid(name) || name == "pair-correlation") {
            s.add("--steps", c.steps, "grid points")->capture_default_str();
        }
        if (name == "scan") {
            s.add("--retain", c.retain, "points kept per grid value")->capture_default_str();
            s.add("--plot", c.plot, "bifurcation or lyapunov (SVG output)")->capture_default_str();
        }
        if (name == "scan" || name == "fixed-points") {
            s.add("--x-lo", c.x_lo, "fixed-point search interval start")->capture_default_str();
            s.add("--x-hi", c.x_hi, "fixed-point search interval end")->capture_default_str();
            s.add("--seeds", c.seeds, "Newton seeds over the search interval")->capture_default_str();
        }
        if (name == "poincare") {
            s.add("--section", c.section, "section value (median of the orbit when unset)");
            s.add("--stride", c.stride, "stroboscopic stride; 0 selects threshold crossings")->capture_default_str();
        }
        if (name == "spectrum") {
            s.flag("--remove-mean", c.remove_mean, "subtract the sample mean first");
            s.flag("--hann", c.hann, "apply a Hann window");
            s.add("--top", c.top, "dominant peaks to report")->capture_default_str();
        }
        if (name == "energy") {
            s.add("--sweep", c.sweep, "r or C")->capture_default_str();
            s.add("--C-values", capacitance_text, "comma-separated capacitances for --sweep C");
        }
        if (name == "eigen") {
            s.add("--potential", c.potential, "zero, montgomery, appendix or yitang")->capture_default_str();
            s.add("--A", c.A, "constant offset of the montgomery potential")->capture_default_str();
            s.add("--C", c.circuit.C, "capacitance in the montgomery potential")->capture_default_str();
            s.add("--alpha", c.alpha, "alpha of the appendix and yitang potentials")->capture_default_str();
            s.add("--m", c.mass, "particle mass")->capture_default_str();
            s.add("--c", c.c, "yitang coefficient c")->capture_default_str();
            s.flag("--allow-complex", c.allow_complex, "allow the complex yitang branch for x < 1");
            s.add("--x-min", c.x_min, "left Dirichlet boundary")->capture_default_str();
            s.add("--x-max", c.x_max, "right Dirichlet boundary")->capture_default_str();
            s.add("--points", points_text, "comma-separated interior grid sizes")->capture_default_str();
            s.add("--k", c.k, "eigenvalues per grid size")->capture_default_str();
            s.add("--method", c.method, "auto, dense or arnoldi")->capture_default_str();
            s.add("--a-coeff", c.a_coeff, "kinetic weight")->capture_default_str();
            s.add("--b-coeff", c.b_coeff, "psi1 term weight")->capture_default_str();
            s.add("--d-coeff", c.d_coeff, "psi2 term weight")->capture_default_str();
            s.add("--e-coeff", c.e_coeff, "von Mangoldt weight")->capture_default_str();
        }
        if (name == "pair-correlation") {
            s.add("--u-min", c.u_min, "grid start")->capture_default_str();
            s.add("--u-max", c.u_max, "grid end")->capture_default_str();
            s.add("--delta", c.delta, "deviation term added to g");
        }
        s.add("--kind", c.kind, "scatter or line (SVG output)")->capture_default_str();
        s.add("--format", c.format, "csv or svg")->capture_default_str();
        s.add("--out", c.out, "output file (default <command>.<format>)");
        s.add("--workers", c.workers, "worker threads")->envname("ZETADYN_WORKERS")->capture_default_str();
        sets.push_back(std::move(set));
    }

    [[nodiscard]] const OptionSet& selected() const
    {
        for (const auto& s : sets) {
            if (s->app()->parsed()) {
                return *s;
            }
        }
        throw InvalidInput("command: none given");
    }
};

bool is_validation_error(const std::exception& e)
{
    return dynamic_cast<const InvalidInput*>(&e) || dynamic_cast<const DomainError*>(&e);
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

std::vector<std::string> config_file_arguments(const std::string& path)
{
    std::ifstream f(path);
    if (!f) {
        throw IoError("cannot open config file " + path);
    }
    std::vector<std::string> args;
    std::string line;
    std::size_t number = 0;
    while (std::getline(f, line)) {
        ++number;
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput("config: line " + std::to_string(number) + " of " + path + " is not key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw InvalidInput("config: line " + std::to_string(number) + " of " + path + " has an empty key");
        }
        args.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
    }
    return args;
}

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Cli cli;
    std::vector<std::string> argv;
    std::optional<std::string> config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                err << "error: --config needs a path\n";
                return 2;
            }
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            argv.push_back(args[i]);
        }
    }

    try {
        if (config_path) {
            const auto it = std::find_if(argv.begin(), argv.end(), is_one_of_commands);
            if (it == argv.end()) {
                throw InvalidInput("config: a subcommand is required");
            }
            auto* sub = cli.app.get_subcommand(*it);
            auto injected = config_file_arguments(*config_path);
            for (const auto& a : injected) {
                const std::string key = a.substr(2, a.find('=') - 2);
                if (sub->get_option_no_throw("--" + key) == nullptr) {
                    throw InvalidInput("config: unknown key '" + key + "' for " + *it + " in " + *config_path);
                }
            }
            argv.insert(it + 1, injected.begin(), injected.end());
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return is_validation_error(e) ? 2 : 1;
    }

    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        cli.app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto active = cli.app.get_subcommands();
        out << (active.empty() ? cli.app.help() : active.front()->help());
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << ZETADYN_VERSION << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    SweepConfig& config = cli.config;
    try {
        const OptionSet& chosen = cli.selected();
        config.command = chosen.app()->get_name();
        if (!cli.capacitance_text.empty()) {
            config.capacitances = parse_double_list("C-values", cli.capacitance_text);
        }
        config.points = parse_size_list("points", cli.points_text);
        if (config.out.empty()) {
            config.out = config.command + "." + config.format;
        }
        validate(config);

        const auto started = std::chrono::steady_clock::now();
        const SweepOutput result = run_sweep(config);
        const std::filesystem::path target = config.out;
        std::string checksum;
        if (config.format == "svg") {
            checksum = render_svg(result.plot, result.kind, target);
        } else {
            checksum = write_csv(result.table, target);
        }
        const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

        RunManifest manifest;
        manifest.version = ZETADYN_VERSION;
        manifest.command = config.command;
        manifest.config = chosen.resolved();
        manifest.input_hash = input_hash(config.command, manifest.config);
        manifest.checksums.emplace_back(target.filename().string(), checksum);
        manifest.wall_time_seconds = elapsed;
        manifest.notes = result.notes;
        write_manifest(manifest, manifest_path_for(target));

        out << "wrote " << target.string() << " (" << result.table.rows.size() << " rows) and "
            << manifest_path_for(target).string() << "\n";
        for (const auto& line : result.summary) {
            out << line << "\n";
        }
        for (const auto& note : result.notes) {
            out << "note: " << note << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return is_validation_error(e) ? 2 : 1;
    }
}

} // namespace zetadyn::cli
