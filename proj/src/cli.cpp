#include "dwall/cli.hpp"

#include "dwall/coupled_states.hpp"
#include "dwall/energetics.hpp"
#include "dwall/ground_state.hpp"
#include "dwall/limit_models.hpp"
#include "dwall/spectral.hpp"
#include "dwall/split_continuation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

namespace dwall::cli {

namespace {

constexpr std::array<std::pair<Subcommand, const char*>, 9> subcommand_names{{
    {Subcommand::eta, "eta"},
    {Subcommand::wall, "wall"},
    {Subcommand::homogeneous_wall, "homogeneous-wall"},
    {Subcommand::split_scan, "split-scan"},
    {Subcommand::spectrum, "spectrum"},
    {Subcommand::bifurcation, "bifurcation"},
    {Subcommand::limit_nu0, "limit-nu0"},
    {Subcommand::limit_profile, "limit-profile"},
    {Subcommand::energy, "energy"},
}};

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string normalize_key(std::string_view key)
{
    std::string k = trim(key);
    std::replace(k.begin(), k.end(), '_', '-');
    if (k.starts_with("--")) k.erase(0, 2);
    return k;
}

double to_double(std::string_view key, std::string_view text)
{
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
        throw UsageError(std::string(key) + ": expected a number, got '" + t + "'");
    return v;
}

int to_int(std::string_view key, std::string_view text)
{
    const std::string t = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
        throw UsageError(std::string(key) + ": expected an integer, got '" + t + "'");
    return v;
}

bool to_bool(std::string_view key, std::string_view text)
{
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw UsageError(std::string(key) + ": expected true or false, got '" + t + "'");
}

std::vector<double> to_list(std::string_view key, std::string_view text)
{
    std::vector<double> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) out.push_back(to_double(key, item));
    if (out.empty()) throw UsageError(std::string(key) + ": expected a comma-separated list");
    return out;
}

using Setter = void (*)(RunConfig&, std::string_view, std::string_view);

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table{
        {"epsilon", [](RunConfig& c, std::string_view k, std::string_view v) { c.eps = to_double(k, v); }},
        {"gamma", [](RunConfig& c, std::string_view k, std::string_view v) { c.gamma = to_double(k, v); }},
        {"mu", [](RunConfig& c, std::string_view k, std::string_view v) { c.mu = to_double(k, v); }},
        {"alpha", [](RunConfig& c, std::string_view k, std::string_view v) { c.alpha = to_double(k, v); }},
        {"alpha-min", [](RunConfig& c, std::string_view k, std::string_view v) { c.alpha_min = to_double(k, v); }},
        {"alpha-max", [](RunConfig& c, std::string_view k, std::string_view v) { c.alpha_max = to_double(k, v); }},
        {"steps", [](RunConfig& c, std::string_view k, std::string_view v) { c.steps = to_int(k, v); }},
        {"eps-list", [](RunConfig& c, std::string_view k, std::string_view v) { c.eps_list = to_list(k, v); }},
        {"grid-n", [](RunConfig& c, std::string_view k, std::string_view v) { c.grid_n = to_int(k, v); }},
        {"domain", [](RunConfig& c, std::string_view k, std::string_view v) { c.domain_length = to_double(k, v); }},
        {"tol", [](RunConfig& c, std::string_view k, std::string_view v) { c.tol = to_double(k, v); }},
        {"max-iter", [](RunConfig& c, std::string_view k, std::string_view v) { c.max_iter = to_int(k, v); }},
        {"out", [](RunConfig& c, std::string_view, std::string_view v) { c.out_path = trim(v); }},
        {"coordinate", [](RunConfig& c, std::string_view, std::string_view v) { c.coordinate = trim(v); }},
        {"operator", [](RunConfig& c, std::string_view, std::string_view v) { c.operator_kind = trim(v); }},
        {"bc", [](RunConfig& c, std::string_view, std::string_view v) { c.bc = trim(v); }},
        {"count", [](RunConfig& c, std::string_view k, std::string_view v) { c.count = to_int(k, v); }},
        {"state", [](RunConfig& c, std::string_view, std::string_view v) { c.state = trim(v); }},
        {"find-alpha", [](RunConfig& c, std::string_view k, std::string_view v) { c.find_alpha = to_bool(k, v); }},
        {"predicted", [](RunConfig& c, std::string_view k, std::string_view v) { c.predicted = to_bool(k, v); }},
    };
    return table;
}

OperatorKind parse_operator(const std::string& name)
{
    for (auto k : {OperatorKind::L_plus, OperatorKind::L_minus, OperatorKind::L_gamma, OperatorKind::L_partner})
        if (name == to_string(k)) return k;
    throw UsageError("operator: unknown operator '" + name + "'");
}

Boundary parse_bc(const std::string& name)
{
    if (name == "dirichlet") return Boundary::dirichlet;
    if (name == "neumann") return Boundary::neumann;
    throw UsageError("bc: expected dirichlet or neumann, got '" + name + "'");
}

LimitCoordinate parse_coordinate(const std::string& name)
{
    if (name == "x") return LimitCoordinate::x_unit_interval;
    if (name == "xi") return LimitCoordinate::xi_half_line;
    throw UsageError("coordinate: expected x or xi, got '" + name + "'");
}

// Rows of preformatted cells. A failed solve appends a converged column so
// partial output stays distinguishable from a finished run.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }

    void mark_unconverged(const std::vector<bool>& converged)
    {
        header.emplace_back("converged");
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i].emplace_back(converged[i] ? "1" : "0");
    }

    void mark_unconverged()
    {
        mark_unconverged(std::vector<bool>(rows.size(), false));
    }

    void write(const std::string& path) const
    {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw UsageError("out: cannot open '" + path + "' for writing");
        auto line = [&f](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) f << ',';
                f << cells[i];
            }
            f << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        if (!f) throw Error("failed writing '" + path + "'");
    }
};

std::string num(double v) { return format_number(v); }

// Summary line of space-separated key=value pairs.
class Summary {
public:
    explicit Summary(const char* name) { os_ << name; }
    Summary& operator()(const char* key, double v)
    {
        os_ << ' ' << key << '=' << format_number(v);
        return *this;
    }
    Summary& operator()(const char* key, std::string_view v)
    {
        os_ << ' ' << key << '=' << v;
        return *this;
    }
    Summary& operator()(const char* key, const char* v) { return (*this)(key, std::string_view(v)); }
    Summary& operator()(const char* key, bool v) { return (*this)(key, std::string_view(v ? "true" : "false")); }
    Summary& operator()(const char* key, int v)
    {
        os_ << ' ' << key << '=' << v;
        return *this;
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_unconverged = 3;

struct Outcome {
    Table table;
    std::string summary;
    bool converged = true;
};

void profile_rows(Table& t, const Grid& g, std::span<const double> a, std::span<const double> b)
{
    for (int i = 0; i < g.size(); ++i) t.add({num(g.node(i)), num(a[static_cast<std::size_t>(i)]), num(b[static_cast<std::size_t>(i)])});
}

GroundState trap_ground_state(const RunConfig& c, const Grid& g)
{
    return solve_eta(c.eps, g, std::min(c.tol, 1e-10), c.max_iter);
}

Outcome do_eta(const RunConfig& c)
{
    const Grid g(0.0, c.domain(), c.grid_n);
    const GroundState gs = solve_eta(c.eps, g, c.tol, c.max_iter);
    const ScalarField tf = thomas_fermi(g);
    Outcome o;
    o.table.header = {"x", "eta", "eta0"};
    for (int i = 0; i < g.size(); ++i) o.table.add({num(g.node(i)), num(gs.eta[i]), num(tf[i])});
    o.converged = gs.report.converged;
    o.summary = Summary("eta")("epsilon", c.eps)("eta_at_0", gs.eta[0])("residual", gs.report.residual)(
                    "iterations", gs.report.iterations)("converged", gs.report.converged)
                    .str();
    return o;
}

std::pair<double, double> root_bracket(const RunConfig& c, const PhysParams& p, const GroundState& gs, const Grid& g,
                                       const SolverSettings& s)
{
    if (c.alpha_min && c.alpha_max) return {*c.alpha_min, *c.alpha_max};
    return locate_wall_bracket(p, gs, g, 0.5 * gs.at(0.0), s);
}

Outcome do_wall(const RunConfig& c)
{
    const Grid g(0.0, c.domain(), c.grid_n);
    const GroundState gs = trap_ground_state(c, g);
    const SolverSettings s{c.tol, c.max_iter};
    PhysParams p{c.eps, c.gamma, 0.0, c.alpha};
    Outcome o;
    o.table.header = {"x", "psi1", "psi2"};
    if (c.find_alpha) {
        const WallRoot root = find_wall_alpha(p, gs, g, root_bracket(c, p, gs, g, s), 1e-4, s);
        profile_rows(o.table, g, root.profile.psi.first(), root.profile.psi.second());
        o.converged = root.point.converged;
        o.summary = Summary("wall")("alpha0", root.point.alpha)("split", root.point.split)(
                        "energy", root.point.energy)("kind", to_string(root.point.kind))(
                        "evaluations", root.evaluations)("converged", root.point.converged)
                        .str();
        return o;
    }
    const SplitEvaluation e = evaluate_split(p, gs, g, s);
    profile_rows(o.table, g, e.profile.psi.first(), e.profile.psi.second());
    o.converged = e.point.converged;
    o.summary = Summary("wall")("alpha", e.point.alpha)("split", e.point.split)("energy", e.point.energy)(
                    "kind", to_string(e.point.kind))("residual", e.profile.report.residual)(
                    "converged", e.point.converged)
                    .str();
    return o;
}

Outcome do_homogeneous(const RunConfig& c)
{
    const double z = c.domain();
    const HomogeneousWall w = solve_homogeneous_wall(c.gamma, Grid(-z, z, c.grid_n), c.tol, c.max_iter);
    Outcome o;
    o.table.header = {"x", "psi1", "psi2"};
    profile_rows(o.table, w.phi.grid(), w.phi.first(), w.phi.second());
    o.converged = w.report.converged;
    o.summary = Summary("homogeneous-wall")("gamma", c.gamma)("residual", w.report.residual)(
                    "energy", energy_J0(w.phi, c.gamma))("iterations", w.report.iterations)(
                    "converged", w.report.converged)
                    .str();
    return o;
}

Outcome do_split_scan(const RunConfig& c)
{
    const Grid g(0.0, c.domain(), c.grid_n);
    const GroundState gs = trap_ground_state(c, g);
    const double lo = c.alpha_min.value_or(0.3);
    const double hi = c.alpha_max.value_or(0.7);
    const auto pts = alpha_scan(PhysParams{c.eps, c.gamma, 0.0, lo}, gs, g, lo, hi, c.steps, {c.tol, c.max_iter});
    Outcome o;
    o.table.header = {"alpha", "S", "energy", "kind", "converged"};
    int sign_changes = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& pt = pts[i];
        o.table.add({num(pt.alpha), num(pt.split), num(pt.energy), to_string(pt.kind), pt.converged ? "1" : "0"});
        o.converged = o.converged && pt.converged;
        if (i > 0 && (pt.split > 0.0) != (pts[i - 1].split > 0.0)) ++sign_changes;
    }
    o.summary = Summary("split-scan")("points", static_cast<int>(pts.size()))("sign_changes", sign_changes)(
                    "converged", o.converged)
                    .str();
    return o;
}

Outcome do_spectrum(const RunConfig& c)
{
    const Grid g(0.0, c.domain(), c.grid_n);
    const GroundState gs = trap_ground_state(c, g);
    OperatorSpec spec{parse_operator(c.operator_kind), c.eps, c.gamma, parse_bc(c.bc), g};
    const TriDiag m = assemble(spec, gs);
    const EigenResult r = low_eigenvalues(m, std::min<int>(c.count, static_cast<int>(m.size())));
    Outcome o;
    o.table.header = {"index", "eigenvalue", "residual"};
    for (int k = 0; k < r.k; ++k)
        o.table.add({std::to_string(k), num(r.eigenvalues[static_cast<std::size_t>(k)]),
                     num(r.residuals[static_cast<std::size_t>(k)])});
    o.converged = gs.report.converged;
    o.summary = Summary("spectrum")("operator", to_string(spec.kind))("bc", c.bc)("lowest", r.eigenvalues.front())(
                    "negatives", count_below(m, -zero_eigenvalue_tolerance))
                    .str();
    return o;
}

double reference_nu0() { return solve_nu0(LimitCoordinate::xi_half_line, Grid(0.0, 10.0, 4097)).nu0; }

Outcome do_bifurcation(const RunConfig& c)
{
    const double nu0 = reference_nu0();
    const auto pred = predicted_bifurcation_curve(c.eps_list, nu0);
    Outcome o;
    if (c.predicted) {
        o.table.header = {"eps", "gamma0_pred"};
        for (const auto& [e, g] : pred) o.table.add({num(e), num(g)});
        o.summary = Summary("bifurcation")("nu0", nu0)("points", static_cast<int>(pred.size())).str();
        return o;
    }
    const auto pts = bifurcation_curve(c.eps_list, c.domain(), c.grid_n);
    o.table.header = {"eps", "gamma0", "gamma0_pred"};
    std::vector<bool> flags;
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        o.table.add({num(pts[i].eps), pts[i].converged ? num(pts[i].gamma0) : "nan", num(pred[i].second)});
        flags.push_back(pts[i].converged);
        o.converged = o.converged && pts[i].converged;
        if (pts[i].converged) worst = std::max(worst, std::abs(pts[i].gamma0 - pred[i].second));
    }
    if (!o.converged) o.table.mark_unconverged(flags);
    o.summary = Summary("bifurcation")("nu0", nu0)("max_deviation", worst)("converged", o.converged).str();
    return o;
}

Outcome do_limit_nu0(const RunConfig& c)
{
    const LimitCoordinate coord = parse_coordinate(c.coordinate);
    const LimitEigen le = solve_nu0(coord, Grid(0.0, c.domain(), c.grid_n));
    Outcome o;
    o.table.header = {coord == LimitCoordinate::x_unit_interval ? "x" : "xi", "v0"};
    const Grid& g = le.v0.grid();
    for (int i = 0; i < g.size(); ++i) o.table.add({num(g.node(i)), num(le.v0[i])});
    Summary s("limit-nu0");
    s("coordinate", std::string_view(to_string(coord)))("nu0", le.nu0)("mu0", mu_zero(le))(
        "rayleigh", rayleigh_quotient(le));
    if (coord == LimitCoordinate::x_unit_interval) s("delta2", normal_form_delta2(le));
    o.summary = s.str();
    return o;
}

Outcome do_limit_profile(const RunConfig& c)
{
    const LimitProfile lp = solve_limit_profile(c.mu, Grid(0.0, 1.0 / c.mu, c.grid_n), std::min(c.tol, 1e-10),
                                                std::max(c.max_iter, 2000000));
    Outcome o;
    o.table.header = {"y", "u", "theta1", "theta2"};
    const Grid& g = lp.u.grid();
    double amplitude = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        o.table.add({num(g.node(i)), num(lp.u[i]), num(std::sin(lp.u[i])), num(std::cos(lp.u[i]))});
        amplitude = std::max(amplitude, std::abs(lp.u[i] - std::numbers::pi / 4.0));
    }
    o.converged = lp.report.converged;
    o.summary = Summary("limit-profile")("mu", c.mu)("constant", lp.constant)("amplitude", amplitude)(
                    "residual", lp.report.residual)("iterations", lp.report.iterations)("converged", o.converged)
                    .str();
    return o;
}

Outcome do_energy(const RunConfig& c)
{
    const Grid g(0.0, c.domain(), c.grid_n);
    const GroundState gs = trap_ground_state(c, g);
    PhysParams p{c.eps, c.gamma, 0.0, c.alpha};
    std::optional<PairField> psi;
    bool converged = gs.report.converged;
    if (c.state == "symmetric") {
        psi = symmetric_state(gs, c.gamma);
    } else if (c.state == "uncoupled") {
        psi = uncoupled_state(gs, Component::first);
    } else if (c.state == "wall") {
        const SolverSettings s{c.tol, c.max_iter};
        WallRoot root = find_wall_alpha(p, gs, g, root_bracket(c, p, gs, g, s), 1e-4, s);
        converged = converged && root.point.converged;
        psi = std::move(root.profile.psi);
    } else {
        throw UsageError("state: expected symmetric, uncoupled or wall, got '" + c.state + "'");
    }
    const EnergyBreakdown e = energy_G(*psi, p);
    Outcome o;
    o.table.header = {"state", "kinetic", "trap", "quartic", "coupling", "total"};
    o.table.add({c.state, num(e.kinetic), num(e.trap), num(e.quartic), num(e.coupling), num(e.total)});
    o.converged = converged;
    o.summary = Summary("energy")("state", std::string_view(c.state))("total", e.total)(
                    "scalar_energy", energy_F(gs.eta, c.eps))("converged", converged)
                    .str();
    return o;
}

Outcome dispatch(const RunConfig& c)
{
    switch (c.subcommand) {
    case Subcommand::eta: return do_eta(c);
    case Subcommand::wall: return do_wall(c);
    case Subcommand::homogeneous_wall: return do_homogeneous(c);
    case Subcommand::split_scan: return do_split_scan(c);
    case Subcommand::spectrum: return do_spectrum(c);
    case Subcommand::bifurcation: return do_bifurcation(c);
    case Subcommand::limit_nu0: return do_limit_nu0(c);
    case Subcommand::limit_profile: return do_limit_profile(c);
    case Subcommand::energy: return do_energy(c);
    }
    throw UsageError("unknown subcommand");
}

} // namespace

const char* to_string(Subcommand s)
{
    for (const auto& [k, name] : subcommand_names)
        if (k == s) return name;
    return "?";
}

std::optional<Subcommand> parse_subcommand(std::string_view name)
{
    for (const auto& [k, n] : subcommand_names)
        if (name == n) return k;
    return std::nullopt;
}

double RunConfig::domain() const
{
    if (domain_length) return *domain_length;
    switch (subcommand) {
    case Subcommand::homogeneous_wall: return 20.0;
    case Subcommand::limit_nu0: return coordinate == "x" ? 1.0 : 10.0;
    case Subcommand::limit_profile: return 1.0 / mu;
    default: return 3.0;
    }
}

std::string RunConfig::output() const
{
    return out_path.empty() ? std::string(to_string(subcommand)) + ".csv" : out_path;
}

void set_option(RunConfig& cfg, std::string_view key, std::string_view value)
{
    const std::string k = normalize_key(key);
    const auto it = setters().find(k);
    if (it == setters().end()) throw UsageError("unknown option '" + k + "'");
    it->second(cfg, k, value);
}

void validate(const RunConfig& c)
{
    auto require = [](bool ok, const char* what) {
        if (!ok) throw UsageError(what);
    };
    require(std::isfinite(c.eps) && c.eps > 0.0, "epsilon must be positive");
    require(std::isfinite(c.gamma) && c.gamma > 0.0, "gamma must be positive");
    require(std::isfinite(c.mu) && c.mu > 0.0, "mu must be positive");
    require(std::isfinite(c.alpha) && c.alpha > 0.0, "alpha must be positive");
    require(!c.alpha_min || *c.alpha_min > 0.0, "alpha-min must be positive");
    require(!c.alpha_min || !c.alpha_max || *c.alpha_max > *c.alpha_min, "alpha-max must exceed alpha-min");
    require(c.steps >= 2, "steps must be at least 2");
    require(std::all_of(c.eps_list.begin(), c.eps_list.end(), [](double e) { return e > 0.0; }),
            "eps-list entries must be positive");
    require(c.grid_n >= 3, "grid-n must be at least 3");
    require(!c.domain_length || (std::isfinite(*c.domain_length) && *c.domain_length > 0.0),
            "domain must be positive");
    require(c.tol > 0.0, "tol must be positive");
    require(c.max_iter >= 1, "max-iter must be at least 1");
    require(c.count >= 1, "count must be at least 1");
    parse_coordinate(c.coordinate);
    parse_operator(c.operator_kind);
    parse_bc(c.bc);
    if (c.subcommand == Subcommand::limit_nu0 && c.coordinate == "x")
        require(std::abs(c.domain() - 1.0) < 1e-14, "domain must be 1 for the x coordinate");
}

RunConfig parse_config(std::istream& in, RunConfig base)
{
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        try {
            if (eq == std::string::npos) throw UsageError("expected 'key = value'");
            set_option(base, line.substr(0, eq), line.substr(eq + 1));
        } catch (const UsageError& e) {
            throw UsageError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base)
{
    std::ifstream f(path);
    if (!f) throw UsageError("config: cannot open '" + path.string() + "'");
    return parse_config(f, std::move(base));
}

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Domain walls in coupled trapped condensates", "dwall"};
    app.require_subcommand(1);

    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> options;
    auto value_flag = [&](const std::string& name, const std::string& help) {
        options.emplace_back(name, app.add_option("--" + name, values[name], help));
    };
    value_flag("epsilon", "trap scale epsilon");
    value_flag("gamma", "coupling gamma");
    value_flag("mu", "limit parameter mu");
    value_flag("alpha", "value of both components at x = 0");
    value_flag("alpha-min", "lower end of the alpha scan or bracket");
    value_flag("alpha-max", "upper end of the alpha scan or bracket");
    value_flag("steps", "points in the alpha scan");
    value_flag("eps-list", "comma-separated epsilon values");
    value_flag("grid-n", "grid nodes");
    value_flag("domain", "domain length (half-width for homogeneous-wall)");
    value_flag("tol", "residual tolerance");
    value_flag("max-iter", "iteration budget");
    value_flag("out", "CSV output path");
    value_flag("coordinate", "x or xi");
    value_flag("operator", "L_plus, L_minus, L_gamma or L_partner");
    value_flag("bc", "dirichlet or neumann at x = 0");
    value_flag("count", "number of eigenvalues");
    value_flag("state", "symmetric, uncoupled or wall");
    bool find_alpha = false;
    bool predicted = false;
    auto* find_opt = app.add_flag("--find-alpha", find_alpha, "locate the split-function root");
    auto* pred_opt = app.add_flag("--predicted", predicted, "emit only the asymptotic curve");
    std::string config_path;
    app.add_option("--config", config_path, "key = value file; flags take precedence");

    for (const auto& [k, name] : subcommand_names) app.add_subcommand(name)->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        cfg.subcommand = *parse_subcommand(app.get_subcommands().front()->get_name());
        for (const auto& [name, opt] : options)
            if (opt->count() > 0) set_option(cfg, name, values[name]);
        if (find_opt->count() > 0) cfg.find_alpha = find_alpha;
        if (pred_opt->count() > 0) cfg.predicted = predicted;
        validate(cfg);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        Outcome o = dispatch(cfg);
        if (!o.converged && o.table.header.back() != "converged") o.table.mark_unconverged();
        o.table.write(cfg.output());
        out << o.summary << "\n";
        return o.converged ? exit_ok : exit_unconverged;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "solver failure: " << e.what() << "\n";
        Table t{{"converged"}, {{"0"}}};
        t.write(cfg.output());
        return exit_unconverged;
    }
}

int run(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace dwall::cli
