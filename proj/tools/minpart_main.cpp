#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "minpart/ab_lab.hpp"
#include "minpart/analytic.hpp"
#include "minpart/nodal_family.hpp"
#include "minpart/partition.hpp"
#include "minpart/report.hpp"
#include "minpart/svg.hpp"

namespace fs = std::filesystem;
using namespace minpart;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CommonOpts {
    std::string out_dir = "out";
    std::uint64_t seed = kDefaultSeed;
    double tol = kDefaultTol;
    int threads = 0;
};

void add_common(CLI::App* sub, CommonOpts& c) {
    // --h is a grid option on several subcommands, keep help off -h everywhere
    sub->set_help_flag("--help", "display help");
    sub->add_option("--out-dir", c.out_dir, "artifact directory")
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "solver seed")->capture_default_str();
    sub->add_option("--tol", c.tol, "solver residual tolerance")
        ->capture_default_str();
    sub->add_option("--threads", c.threads,
                    "worker cap (0 = MINPART_THREADS or hardware)")
        ->capture_default_str();
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

RunConfig make_config(const std::string& command, const CommonOpts& c,
                      std::map<std::string, std::string> params) {
    RunConfig cfg;
    cfg.command = command;
    cfg.params = std::move(params);
    cfg.seed = c.seed;
    cfg.tol = c.tol;
    cfg.threads = c.threads;
    return cfg;
}

void apply_threads(const CommonOpts& c) {
    if (c.threads >= 1)
        setenv("MINPART_THREADS", std::to_string(c.threads).c_str(), 1);
}

fs::path emit_json(const CommonOpts& c, const RunConfig& cfg,
                   nlohmann::json body, const std::string& stem) {
    fs::create_directories(c.out_dir);
    const fs::path path = fs::path(c.out_dir) / (stem + ".json");
    write_json_artifact(path, finalize_artifact(std::move(body), cfg));
    std::cout << "wrote " << path.string() << "\n";
    return path;
}

fs::path emit_csv(const CommonOpts& c, const RunConfig& cfg,
                  const std::vector<std::string>& columns,
                  const std::vector<std::vector<std::string>>& rows,
                  const std::string& stem) {
    fs::create_directories(c.out_dir);
    const fs::path path = fs::path(c.out_dir) / (stem + ".csv");
    // config rides along as comment lines; the hash covers everything else
    const std::string data =
        "# config: " + config_json(cfg).dump() + "\n" + csv_table(columns, rows);
    const std::string payload = "# content_hash: " + hash_hex(fnv1a64(data)) +
                                "\n" + data;
    write_artifact_atomic(path, payload);
    std::cout << "wrote " << path.string() << "\n";
    return path;
}

fs::path emit_svg(const CommonOpts& c, const RunConfig& cfg,
                  const std::string& svg, const std::string& stem) {
    fs::create_directories(c.out_dir);
    const fs::path path = fs::path(c.out_dir) / (stem + ".svg");
    const std::string data = "<!-- config: " + config_json(cfg).dump() + " -->\n" + svg;
    const std::string payload = "<!-- content_hash: " + hash_hex(fnv1a64(data)) +
                                " -->\n" + data;
    write_artifact_atomic(path, payload);
    std::cout << "wrote " << path.string() << "\n";
    return path;
}

RectGeometry resolve_geometry(double a, double b, double eps, bool eps_set) {
    if (eps_set) return RectGeometry::from_epsilon(eps);
    return RectGeometry::from_sides(a, b);
}

nlohmann::json point_json(const Point& p) { return {p.x, p.y}; }

nlohmann::json critical_json(const CriticalPoint& cp) {
    return {{"point", point_json(cp.p)}, {"valence", cp.valence}};
}

nlohmann::json partition_json(const Partition& p) {
    nlohmann::json j;
    j["parts"] = p.parts;
    j["topology"] = topology_name(p.topology);
    j["lambda_max"] = p.lambda_max;
    j["per_part_lambda"] = p.per_part_lambda;
    j["grid"] = {{"nx", p.grid.nx},
                 {"ny", p.grid.ny},
                 {"hx", p.grid.hx},
                 {"hy", p.grid.hy},
                 {"a", p.grid.a},
                 {"b", p.grid.b}};
    j["labels"] = p.labels;
    j["values"] = p.values;
    j["interior_points"] = nlohmann::json::array();
    for (const auto& cp : p.interior_points) j["interior_points"].push_back(critical_json(cp));
    j["boundary_points"] = nlohmann::json::array();
    for (const auto& cp : p.boundary_points) j["boundary_points"].push_back(critical_json(cp));
    return j;
}

nlohmann::json sweep_json(const SweepResult& sweep) {
    nlohmann::json j;
    j["type"] = std::string(1, sweep.type);
    j["eps"] = sweep.eps;
    j["diagonal"] = sweep.diagonal;
    j["h"] = sweep.h;
    j["argmin"] = sweep.argmin;
    j["found"] = sweep.found;
    j["x0_refined"] = sweep.x0_refined;
    j["energy_refined"] = sweep.energy_refined;
    j["points"] = nlohmann::json::array();
    for (const auto& pt : sweep.points)
        j["points"].push_back({{"x0", pt.x0},
                               {"x1", pt.x1},
                               {"lambda1", pt.lambda1},
                               {"lambda2", pt.lambda2},
                               {"lambda3", pt.lambda3},
                               {"energy", pt.energy},
                               {"parts", pt.parts},
                               {"feasible", pt.feasible},
                               {"degenerate_pick", pt.degenerate_pick}});
    return j;
}

int run_spectrum(const CommonOpts& c, double a, double b, double eps,
                 bool eps_set, int count, const std::string& format) {
    if (format != "json" && format != "csv")
        throw std::invalid_argument("--format must be json or csv");
    const auto geom = resolve_geometry(a, b, eps, eps_set);
    const auto levels = spectrum_sorted(geom, count);

    const auto cfg = make_config("spectrum", c,
                                 {{"a", num(geom.a)},
                                  {"b", num(geom.b)},
                                  {"count", std::to_string(count)},
                                  {"format", format}});
    if (format == "json") {
        nlohmann::json body;
        body["geometry"] = {{"a", geom.a}, {"b", geom.b}, {"eps", geom.epsilon()}};
        body["levels"] = nlohmann::json::array();
        for (const auto& l : levels) {
            nlohmann::json modes = nlohmann::json::array();
            for (const auto& m : l.modes) modes.push_back({m.m, m.n});
            body["levels"].push_back({{"value", l.value},
                                      {"modes", modes},
                                      {"multiplicity", l.multiplicity()}});
        }
        emit_json(c, cfg, body, "spectrum");
    } else {
        std::vector<std::vector<std::string>> rows;
        for (size_t i = 0; i < levels.size(); ++i) {
            std::string modes;
            for (const auto& m : levels[i].modes) {
                if (!modes.empty()) modes += ' ';
                modes += std::to_string(m.m) + ':' + std::to_string(m.n);
            }
            rows.push_back({std::to_string(i + 1), num(levels[i].value),
                            std::to_string(levels[i].multiplicity()), modes});
        }
        emit_csv(c, cfg, {"level", "value", "multiplicity", "modes"}, rows,
                 "spectrum");
    }
    for (size_t i = 0; i < levels.size(); ++i)
        std::cout << "level " << i + 1 << ": " << levels[i].value
                  << " (multiplicity " << levels[i].multiplicity() << ")\n";
    return 0;
}

int run_courant_sharp(const CommonOpts& c, double a, double b, double eps,
                      bool eps_set) {
    const auto geom = resolve_geometry(a, b, eps, eps_set);
    const auto rules = courant_sharp_cases(geom);
    const auto ratio = geom.ratio_sq();
    const auto rational = rational_ratio(ratio);

    nlohmann::json body;
    body["ratio_sq"] = ratio;
    if (rational)
        body["rational_ratio"] = {{"num", rational->num}, {"den", rational->den}};
    else
        body["rational_ratio"] = nullptr;
    body["rules"] = nlohmann::json::array();
    for (const auto& r : rules)
        body["rules"].push_back({{"mode", {r.mode.m, r.mode.n}},
                                 {"lo", r.lo},
                                 {"hi", r.hi},
                                 {"active", r.active}});
    const auto cfg = make_config("courant-sharp", c,
                                 {{"a", num(geom.a)}, {"b", num(geom.b)}});
    emit_json(c, cfg, body, "courant_sharp");

    for (const auto& r : rules)
        std::cout << "(" << r.mode.m << "," << r.mode.n << "): "
                  << (r.active ? "courant-sharp" : "not courant-sharp")
                  << " at ratio " << ratio << "\n";
    if (rational)
        std::cout << "note: a^2/b^2 is rational (" << rational->num << "/"
                  << rational->den << "); multiplicity bookkeeping may differ\n";
    return 0;
}

int run_nodal_family(const CommonOpts& c, double alpha, double beta, double eps,
                     int resolution, const std::string& out_formats) {
    const bool want_json = out_formats.find("json") != std::string::npos;
    const bool want_svg = out_formats.find("svg") != std::string::npos;
    if (!want_json && !want_svg)
        throw std::invalid_argument("--out must request json or svg");
    const FamilyCoeffs coeffs{alpha, beta};
    const auto set = nodal_contours(coeffs, eps, resolution);
    const auto mu = count_nodal_domains(coeffs, eps, std::min(resolution, 512));
    const auto scan = interior_critical_scan(coeffs, eps);

    nlohmann::json body;
    body["alpha"] = alpha;
    body["beta"] = beta;
    body["eps"] = eps;
    body["nodal_domains"] = {{"count", mu.domain_count}, {"stable", mu.stable}};
    body["polylines"] = nlohmann::json::array();
    for (const auto& line : set.polylines) {
        nlohmann::json pl = nlohmann::json::array();
        for (const auto& p : line) pl.push_back(point_json(p));
        body["polylines"].push_back(std::move(pl));
    }
    body["boundary_hits"] = nlohmann::json::array();
    for (const auto& p : set.boundary_hits) body["boundary_hits"].push_back(point_json(p));
    body["interior_critical"] = nlohmann::json::array();
    for (const auto& cp : set.interior_critical)
        body["interior_critical"].push_back(critical_json(cp));
    body["boundary_critical"] = nlohmann::json::array();
    for (const auto& cp : set.boundary_critical)
        body["boundary_critical"].push_back(critical_json(cp));
    body["scan"] = {{"interior_empty", scan.interior_points.empty()},
                    {"gradient_lower_bound", scan.gradient_lower_bound},
                    {"exclusion_radius", scan.exclusion_radius}};

    const auto cfg = make_config("nodal-family", c,
                                 {{"alpha", num(alpha)},
                                  {"beta", num(beta)},
                                  {"eps", num(eps)},
                                  {"resolution", std::to_string(resolution)},
                                  {"out", out_formats}});
    if (want_json) emit_json(c, cfg, body, "nodal_family");
    if (want_svg)
        emit_svg(c, cfg, nodal_family_svg(coeffs, eps, set), "nodal_family");

    std::cout << "mu = " << mu.domain_count << (mu.stable ? " (stable)" : " (unstable)")
              << ", interior critical points: " << scan.interior_points.size()
              << ", certified gradient bound " << scan.gradient_lower_bound << "\n";
    return 0;
}

int run_isospec(const CommonOpts& c, double a, double b, double eps, bool eps_set,
                int k, std::vector<double> hs, bool diagonals,
                const std::string& format) {
    if (format != "json" && format != "csv" && format != "both")
        throw std::invalid_argument("--format must be json, csv, or both");
    const auto geom = resolve_geometry(a, b, eps, eps_set);
    if (hs.empty()) hs = {kPi / 100, kPi / 200};
    const auto rep = isospec_battery(geom, k, hs, diagonals, c.tol);

    nlohmann::json body;
    body["k"] = rep.k;
    body["hs"] = rep.hs;
    body["ab_pairs_even"] = rep.ab_pairs_even;
    body["multiplicity_doubling"] = rep.multiplicity_doubling;
    body["max_axis_split"] = rep.max_axis_split;
    body["problems"] = nlohmann::json::array();
    for (const auto& e : rep.problems)
        body["problems"].push_back({{"label", e.label},
                                    {"h", e.h},
                                    {"eigenvalues", e.eigenvalues}});
    body["deviations"] = nlohmann::json::array();
    for (const auto& row : rep.deviations)
        body["deviations"].push_back({{"pair", row.pair}, {"per_h", row.per_h}});

    std::map<std::string, std::string> params = {
        {"a", num(geom.a)}, {"b", num(geom.b)}, {"k", std::to_string(k)},
        {"diagonals", diagonals ? "true" : "false"}};
    for (size_t i = 0; i < hs.size(); ++i) params["h" + std::to_string(i)] = num(hs[i]);
    const auto cfg = make_config("isospec", c, params);
    if (format != "csv") emit_json(c, cfg, body, "isospec");

    if (format != "json") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : rep.deviations)
            for (size_t i = 0; i < row.per_h.size(); ++i)
                rows.push_back({row.pair, num(rep.hs[i]), num(row.per_h[i])});
        emit_csv(c, cfg, {"pair", "h", "deviation"}, rows, "isospec");
    }

    for (const auto& row : rep.deviations)
        std::cout << row.pair << ": deviation "
                  << (row.per_h.empty() ? 0.0 : row.per_h.back())
                  << " at finest h\n";
    std::cout << "ab pairs even: " << (rep.ab_pairs_even ? "yes" : "no")
              << ", multiplicity doubling: "
              << (rep.multiplicity_doubling ? "yes" : "no") << "\n";
    return 0;
}

int run_partition3(const CommonOpts& c, double eps, const std::string& type,
                   double h, int sweep_res, bool diagonal,
                   const std::string& out_formats) {
    if (type.size() != 1 || (type[0] != 'a' && type[0] != 'b' && type[0] != 'c'))
        throw std::invalid_argument("--type must be a, b, or c");
    const bool want_json = out_formats.find("json") != std::string::npos;
    const bool want_csv = out_formats.find("csv") != std::string::npos;
    const bool want_svg = out_formats.find("svg") != std::string::npos;
    if (!want_json && !want_csv && !want_svg)
        throw std::invalid_argument("--out must request json, csv, or svg");

    const auto sweep = diagonal ? diagonal_search(h, sweep_res, c.tol)
                                : dn_sweep(eps, type[0], h, sweep_res, c.tol);

    const auto cfg = make_config("partition3", c,
                                 {{"eps", num(eps)},
                                  {"type", type},
                                  {"h", num(h)},
                                  {"sweep", std::to_string(sweep_res)},
                                  {"diagonal", diagonal ? "true" : "false"},
                                  {"out", out_formats}});

    TripleAngles angles;
    if (sweep.found) angles = triple_point_angles(sweep.best);

    if (want_json) {
        nlohmann::json body;
        body["sweep"] = sweep_json(sweep);
        if (sweep.found) {
            body["partition"] = partition_json(sweep.best);
            nlohmann::json aj;
            aj["ok"] = angles.ok;
            aj["center"] = point_json(angles.center);
            aj["branch_angles"] = angles.branch_angles;
            aj["sector_angles"] = angles.sector_angles;
            aj["boundary_meeting"] = angles.boundary_meeting;
            body["angles"] = aj;
        }
        emit_json(c, cfg, body, "partition3");
    }
    if (want_csv) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& pt : sweep.points)
            rows.push_back({num(pt.x0), num(pt.x1), num(pt.lambda1), num(pt.lambda2),
                            num(pt.lambda3), num(pt.energy), std::to_string(pt.parts),
                            pt.feasible ? "true" : "false",
                            pt.degenerate_pick ? "true" : "false"});
        emit_csv(c, cfg,
                 {"x0", "x1", "lambda1", "lambda2", "lambda3", "energy", "parts",
                  "feasible", "degenerate_pick"},
                 rows, "partition3");
    }
    if (want_svg && sweep.found)
        emit_svg(c, cfg, partition_svg(sweep.best, angles.ok ? &angles : nullptr),
                 "partition3");

    if (!sweep.found) {
        std::cerr << "no feasible 3-partition in the sweep\n";
        return 3;
    }
    std::cout << "argmin x0 = " << sweep.x0_refined << ", energy = "
              << sweep.energy_refined << ", Lambda = " << sweep.best.lambda_max
              << ", topology " << topology_name(sweep.best.topology) << "\n";
    return 0;
}

int run_transition(const CommonOpts& c, double eps_from, double eps_to, int steps,
                   double h, int sweep_res, bool custom_schedule) {
    if (steps < 2) throw std::invalid_argument("--steps must be at least 2");
    if (!(eps_from > 0.0) || eps_to > 1.0 || !(eps_to > eps_from))
        throw std::invalid_argument("need 0 < eps-from < eps-to <= 1");
    std::vector<double> schedule;
    if (custom_schedule) {
        schedule.resize(steps);
        for (int i = 0; i < steps; ++i)
            schedule[i] = eps_from + (eps_to - eps_from) * i / (steps - 1);
    } else {
        schedule = transition_schedule();
    }

    const auto rows = transition_study(schedule, h, sweep_res, c.tol);

    nlohmann::json body;
    body["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
        body["rows"].push_back({{"eps", r.eps},
                                {"x0", r.x0},
                                {"x0_scaled", r.x0_scaled},
                                {"energy", r.energy},
                                {"lambda_max", r.lambda_max},
                                {"bound", r.bound},
                                {"feasible", r.feasible},
                                {"strict_below", r.strict_below}});
    const auto cfg = make_config(
        "transition", c,
        {{"schedule", custom_schedule ? "linear" : "canonical"},
         {"eps-from", num(schedule.front())},
         {"eps-to", num(schedule.back())},
         {"steps", std::to_string(static_cast<int>(schedule.size()))},
         {"h", num(h)},
         {"sweep", std::to_string(sweep_res)}});
    emit_json(c, cfg, body, "transition");

    std::vector<std::vector<std::string>> csv_rows;
    for (const auto& r : rows)
        csv_rows.push_back({num(r.eps), num(r.x0), num(r.x0_scaled), num(r.energy),
                            num(r.lambda_max), num(r.bound),
                            r.feasible ? "true" : "false",
                            r.strict_below ? "true" : "false"});
    emit_csv(c, cfg,
             {"eps", "x0", "x0_scaled", "energy", "lambda_max", "bound", "feasible",
              "strict_below"},
             csv_rows, "transition");

    bool all_feasible = true;
    for (const auto& r : rows) {
        std::cout << "eps " << r.eps << ": x0 = " << r.x0 << ", Lambda = "
                  << r.lambda_max << ", bound = " << r.bound
                  << (r.strict_below ? " (strictly below)" : "") << "\n";
        all_feasible = all_feasible && r.feasible;
    }
    if (!all_feasible) {
        std::cerr << "at least one ratio produced no feasible partition\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral minimal 3-partitions of rectangles"};
    app.require_subcommand(1);
    // several subcommands expose a --h grid option, so help must not claim -h
    app.set_help_flag("--help", "display help");

    CommonOpts common;

    double a = kPi, b = kPi, eps = 1.0;
    int count = 10;
    std::string format = "json";
    auto* spectrum = app.add_subcommand("spectrum", "analytic dirichlet levels");
    add_common(spectrum, common);
    spectrum->add_option("--a", a, "width")->capture_default_str();
    spectrum->add_option("--b", b, "height")->capture_default_str();
    auto* spectrum_eps = spectrum->add_option("--eps", eps, "aspect ratio a/b");
    spectrum->add_option("--count", count, "number of levels")->capture_default_str();
    spectrum->add_option("--format", format, "json or csv")->capture_default_str();

    double cs_a = kPi, cs_b = kPi, cs_eps = 1.0;
    auto* courant = app.add_subcommand("courant-sharp", "courant-sharp classifier");
    add_common(courant, common);
    courant->add_option("--a", cs_a, "width")->capture_default_str();
    courant->add_option("--b", cs_b, "height")->capture_default_str();
    auto* courant_eps = courant->add_option("--eps", cs_eps, "aspect ratio a/b");

    double alpha = 1.0, beta = 0.0;
    double nf_eps = std::sqrt(3.0 / 8.0);
    int resolution = 512;
    std::string nf_out = "json+svg";
    auto* nodal = app.add_subcommand("nodal-family", "critical eigenfamily nodal sets");
    add_common(nodal, common);
    nodal->add_option("--alpha", alpha, "cos-mode coefficient")->capture_default_str();
    nodal->add_option("--beta", beta, "sin-mode coefficient")->capture_default_str();
    nodal->add_option("--eps", nf_eps, "aspect ratio")->capture_default_str();
    nodal->add_option("--resolution", resolution, "contour sampling resolution")
        ->capture_default_str();
    nodal->add_option("--out", nf_out, "formats, e.g. svg or json+svg")
        ->capture_default_str();

    double iso_a = kPi, iso_b = kPi, iso_eps = 1.0;
    int iso_k = 6;
    std::vector<double> iso_hs;
    bool iso_diagonals = false;
    auto* isospec = app.add_subcommand("isospec", "ab vs dirichlet-neumann battery");
    add_common(isospec, common);
    isospec->add_option("--a", iso_a, "width")->capture_default_str();
    isospec->add_option("--b", iso_b, "height")->capture_default_str();
    auto* isospec_eps = isospec->add_option("--eps", iso_eps, "aspect ratio a/b");
    isospec->add_option("--k", iso_k, "levels to compare")->capture_default_str();
    auto* iso_h_opt = isospec->add_option("--h", iso_hs, "grid spacings (repeatable)");
    isospec->add_option("--grids", iso_hs, "grid spacings, comma separated")
        ->delimiter(',')
        ->excludes(iso_h_opt);
    isospec->add_flag("--diagonals", iso_diagonals, "include diagonal halves");
    std::string iso_format = "both";
    isospec->add_option("--format", iso_format, "json, csv, or both")
        ->capture_default_str();

    double p3_eps = 1.0, p3_h = kPi / 200;
    std::string p3_type = "a", p3_out = "json+csv+svg";
    int p3_sweep = 64;
    bool p3_diagonal = false;
    auto* partition3 = app.add_subcommand("partition3", "junction sweep for 3-partitions");
    add_common(partition3, common);
    partition3->add_option("--eps", p3_eps, "aspect ratio a/b")->capture_default_str();
    partition3->add_option("--type", p3_type, "junction family: a, b, or c")
        ->capture_default_str();
    partition3->add_option("--h", p3_h, "target grid spacing")->capture_default_str();
    partition3->add_option("--sweep", p3_sweep, "sweep resolution")->capture_default_str();
    partition3->add_flag("--diagonal", p3_diagonal, "search along the square diagonal");
    partition3->add_option("--out", p3_out, "formats, e.g. json+svg")
        ->capture_default_str();

    double tr_from = std::sqrt(3.0 / 8.0), tr_to = 1.0, tr_h = kPi / 100;
    int tr_steps = 7, tr_sweep = 17;
    auto* transition = app.add_subcommand(
        "transition",
        "continuation across the critical ratio; with no schedule flags the "
        "canonical non-uniform 7-point schedule is used");
    add_common(transition, common);
    auto* tr_from_opt =
        transition->add_option("--eps-from", tr_from, "first ratio (switches to a linear schedule)")
            ->capture_default_str();
    auto* tr_to_opt =
        transition->add_option("--eps-to", tr_to, "last ratio (switches to a linear schedule)")
            ->capture_default_str();
    auto* tr_steps_opt =
        transition->add_option("--steps", tr_steps, "linear schedule length")
            ->capture_default_str();
    transition->add_option("--h", tr_h, "target grid spacing")->capture_default_str();
    transition->add_option("--sweep", tr_sweep, "sweep resolution")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        apply_threads(common);
        if (spectrum->parsed())
            return run_spectrum(common, a, b, eps, spectrum_eps->count() > 0, count,
                                format);
        if (courant->parsed())
            return run_courant_sharp(common, cs_a, cs_b, cs_eps,
                                     courant_eps->count() > 0);
        if (nodal->parsed())
            return run_nodal_family(common, alpha, beta, nf_eps, resolution, nf_out);
        if (isospec->parsed())
            return run_isospec(common, iso_a, iso_b, iso_eps,
                               isospec_eps->count() > 0, iso_k, iso_hs,
                               iso_diagonals, iso_format);
        if (partition3->parsed())
            return run_partition3(common, p3_eps, p3_type, p3_h, p3_sweep,
                                  p3_diagonal, p3_out);
        if (transition->parsed()) {
            const bool custom = tr_from_opt->count() > 0 || tr_to_opt->count() > 0 ||
                                tr_steps_opt->count() > 0;
            return run_transition(common, tr_from, tr_to, tr_steps, tr_h, tr_sweep,
                                  custom);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
