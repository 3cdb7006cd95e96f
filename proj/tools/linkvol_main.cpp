// Command-line surface: loads a scene file, runs one analysis command, and
// emits a result record (JSON) plus optional CSV / diagram artifacts.
//
// Commands: validate, diagram, selflink, sk, wilson, volume, verify-limits.
// Every thrown error carries a category; the process exit code is the
// category's fixed code (see errors.hpp), so scripts can branch on failures.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "linkvol/errors.hpp"
#include "linkvol/observables.hpp"
#include "linkvol/report.hpp"
#include "linkvol/scene.hpp"

namespace {

using namespace linkvol;

struct Flags {
    std::string scene_path;
    std::string command;
    int plane = 0;          // 0: use the scene's plane
    double kappa_max = 0;   // 0: full schedule
    bool jitter = false;
    std::uint64_t jitter_seed = 0;
    std::string out;        // artifact directory; empty: stdout only
    bool csv = false;       // print CSV tables instead of the record
};

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path p = std::filesystem::path(dir) / name;
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCategory::internal, "cannot write '" + p.string() + "'");
    f << text;
}

// Emits the record (and any CSV tables) per the output flags; returns the
// exit code contribution (always 0; failures are exceptions).
void emit(const Flags& f, const SceneFile& scene, const std::string& command,
          const ordered_json& record,
          const std::vector<std::pair<std::string, std::string>>& tables = {}) {
    if (!f.out.empty()) {
        write_file(f.out, scene.name + "_" + command + ".json", record_text(record));
        for (const auto& [name, text] : tables) write_file(f.out, name, text);
    }
    if (f.csv && !tables.empty()) {
        for (const auto& [name, text] : tables) std::cout << "# " << name << "\n" << text;
    } else {
        std::cout << record_text(record);
    }
}

ordered_json params_json(const Flags& f, const SceneFile& scene) {
    ordered_json p;
    p["plane"] = scene.plane;
    p["charge"] = scene.charge;
    p["kappa_schedule"] = scene.kappa_schedule;
    p["eps_schedule"] = scene.eps_schedule;
    p["vol_eps_schedule"] = scene.vol_eps_schedule;
    p["min_spatial_sep"] = scene.min_spatial_sep;
    p["tube_radius"] = scene.tube_radius;
    p["max_cell"] = scene.max_cell;
    p["boundary_tol"] = scene.boundary_tol;
    p["jitter"] = f.jitter ? ordered_json(f.jitter_seed) : ordered_json(nullptr);
    return p;
}

int cmd_validate(const Flags& f, const SceneFile& scene) {
    const Hyperlink h = scene.hyperlink();
    const ValidationReport rep = validate_timelike(h, scene.min_spatial_sep);
    ordered_json out;
    out["valid"] = rep.valid();
    out["violations"] = ordered_json::array();
    for (const Violation& v : rep.violations)
        out["violations"].push_back(ordered_json{{"kind", v.kind},
                                                 {"loop_a", v.loop_a},
                                                 {"loop_b", v.loop_b},
                                                 {"seg_a", v.seg_a},
                                                 {"seg_b", v.seg_b},
                                                 {"value", v.value}});
    emit(f, scene, "validate", make_result_record("validate", scene, params_json(f, scene), out));
    return rep.valid() ? 0 : category_exit_code(ErrorCategory::validation);
}

int cmd_diagram(const Flags& f, const SceneFile& scene) {
    const Hyperlink h = scene.hyperlink();
    const LinkDiagram d = build_diagram(h, scene.plane, scene.eps_schedule);
    const int n_components = static_cast<int>(h.matter.size() + h.geometric.size());
    const std::string text = diagram_export(d, n_components, scene.name);
    ordered_json out;
    out["crossings"] = d.crossings.size();
    out["self_crossings"] = d.self_crossings.size();
    int twists = 0;
    for (const FramedDiagram& fd : d.framing) twists += static_cast<int>(fd.half_twists.size());
    out["half_twists"] = twists;
    out["export"] = text;
    emit(f, scene, "diagram", make_result_record("diagram", scene, params_json(f, scene), out),
         {{scene.name + "_diagram.txt", text}});
    return 0;
}

int cmd_selflink(const Flags& f, const SceneFile& scene) {
    const Hyperlink h = scene.hyperlink();
    ordered_json comps = ordered_json::array();
    for (std::size_t u = 0; u < h.matter.size(); ++u) {
        const FramedDiagram fd =
            framed_diagram(h.matter[u].loop, h.matter[u].frame, scene.plane, scene.eps_schedule);
        ordered_json c;
        c["component"] = u;
        c["self_linking"] = self_linking(fd);
        c["half_twists"] = ordered_json::array();
        for (const HalfTwist& t : fd.half_twists)
            c["half_twists"].push_back(ordered_json{{"s", t.s}, {"sign", t.sign}});
        c["nodes"] = ordered_json::array();
        for (const DiagramNode& n : fd.nodes)
            c["nodes"].push_back(ordered_json{{"s_a", n.s_a}, {"s_b", n.s_b}, {"sign", n.sign}});
        comps.push_back(std::move(c));
    }
    emit(f, scene, "selflink",
         make_result_record("selflink", scene, params_json(f, scene),
                            ordered_json{{"components", comps}}));
    return 0;
}

std::vector<int> combinatorial_sk(const Hyperlink& h, int plane) {
    std::vector<int> sk;
    for (const MatterLoop& m : h.matter) {
        int total = 0;
        for (const Loop4& g : h.geometric) total += sk_combinatorial(m.loop, g, plane);
        sk.push_back(total);
    }
    return sk;
}

int cmd_sk(const Flags& f, const SceneFile& scene) {
    if (scene.kappa_schedule.empty())
        throw Error(ErrorCategory::precondition, "sk requires a non-empty kappa_schedule");
    const Hyperlink h = scene.hyperlink();
    ordered_json comps = ordered_json::array();
    std::vector<ConvergenceRow> rows;
    for (std::size_t u = 0; u < h.matter.size(); ++u) {
        const SkResult r =
            sk_numeric(h, static_cast<int>(u), scene.kappa_schedule, scene.plane);
        ordered_json c;
        c["component"] = u;
        c["kappas"] = r.kappas;
        c["values"] = r.values;
        c["extrapolated"] = r.extrapolated;
        c["err_est"] = r.err_est;
        c["extrapolation_valid"] = r.extrapolation_valid;
        c["combinatorial"] = r.combinatorial;
        comps.push_back(std::move(c));
        for (std::size_t i = 0; i < r.kappas.size(); ++i)
            rows.push_back(ConvergenceRow{r.kappas[i], 0.0, {r.values[i], 0.0},
                                          {static_cast<double>(r.combinatorial), 0.0}});
    }
    emit(f, scene, "sk",
         make_result_record("sk", scene, params_json(f, scene), ordered_json{{"components", comps}}),
         {{scene.name + "_sk.csv", convergence_csv(rows)}});
    return 0;
}

int cmd_wilson(const Flags& f, const SceneFile& scene) {
    const Hyperlink h = scene.hyperlink();
    const std::vector<int> sk = combinatorial_sk(h, scene.plane);
    const std::vector<double> skd(sk.begin(), sk.end());
    const std::complex<double> z = wilson_loop(h, scene.charge, skd);
    ordered_json out;
    out["sk"] = sk;
    out["z_value"] = complex_json(z);
    emit(f, scene, "wilson", make_result_record("wilson", scene, params_json(f, scene), out));
    return 0;
}

ordered_json volume_json(const VolumeResult& vr) {
    ordered_json out;
    out["tdp_counts"] = vr.tdp_counts;
    out["sk"] = vr.sk;
    out["plus_weight"] = vr.plus_weight;
    out["minus_weight"] = vr.minus_weight;
    out["z_value"] = complex_json(vr.z_value);
    out["v_value"] = complex_json(vr.v_value);
    return out;
}

int cmd_volume(const Flags& f, const SceneFile& scene) {
    if (scene.region_boxes.empty())
        throw Error(ErrorCategory::precondition, "volume requires a region block with boxes");
    const Hyperlink h = scene.hyperlink();
    const VolumeResult vr = volume_operator(h, scene.region(), scene.charge, scene.plane,
                                            scene.eps_schedule, scene.boundary_tol);
    emit(f, scene, "volume",
         make_result_record("volume", scene, params_json(f, scene), volume_json(vr)));
    return 0;
}

int cmd_verify_limits(const Flags& f, const SceneFile& scene) {
    if (scene.kappa_schedule.empty())
        throw Error(ErrorCategory::precondition, "verify-limits requires a kappa_schedule");
    const Hyperlink h = scene.hyperlink();
    std::vector<std::pair<std::string, std::string>> tables;
    ordered_json out;

    // Gaussian product-convolution identity: worst residual over 50 seeded
    // point pairs in the unit box, per kappa.
    {
        std::vector<ConvergenceRow> rows;
        std::mt19937_64 rng(20240817);
        auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
        std::vector<std::pair<Vec2, Vec2>> pairs;
        for (int i = 0; i < 50; ++i)
            pairs.push_back({Vec2{u01(), u01()}, Vec2{u01(), u01()}});
        for (double kap : {1.0, 4.0, 16.0}) {
            double worst = 0;
            for (const auto& [a, b] : pairs)
                worst = std::max(worst, std::abs(gaussian_product_identity_residual(kap, a, b)));
            rows.push_back(ConvergenceRow{kap, 0.0, {worst, 0.0}, {0.0, 0.0}});
        }
        out["gaussian_identity_worst"] = rows.back().value.real();
        tables.push_back({scene.name + "_gaussian_identity.csv", convergence_csv(rows)});
    }

    // Smoothed time-order sign vs its limit; the eps column carries the
    // separation |t - s|.
    {
        std::vector<ConvergenceRow> rows;
        for (double dt : {0.25, 0.5, 1.0})
            for (double kap : {4.0, 8.0, 16.0, 32.0})
                rows.push_back(
                    ConvergenceRow{kap, dt, {sgn_limit_value(kap, 0.0, dt), 0.0}, {1.0, 0.0}});
        tables.push_back({scene.name + "_sgn_limit.csv", convergence_csv(rows)});
    }

    // Regulated linking exponent vs the exact count, matter component 0.
    {
        const SkResult r = sk_numeric(h, 0, scene.kappa_schedule, scene.plane);
        std::vector<ConvergenceRow> rows;
        for (std::size_t i = 0; i < r.kappas.size(); ++i)
            rows.push_back(ConvergenceRow{r.kappas[i], 0.0, {r.values[i], 0.0},
                                          {static_cast<double>(r.combinatorial), 0.0}});
        out["sk_extrapolated"] = r.extrapolated;
        out["sk_combinatorial"] = r.combinatorial;
        tables.push_back({scene.name + "_sk.csv", convergence_csv(rows)});
    }

    // Regulated volume vs the exact spectrum value over (kappa, eps).
    if (!scene.region_boxes.empty()) {
        if (scene.vol_eps_schedule.empty())
            throw Error(ErrorCategory::precondition,
                        "verify-limits with a region requires vol_eps_schedule");
        LimitOptions opt;
        opt.plane = scene.plane;
        opt.ht_eps_schedule = scene.eps_schedule;
        opt.boundary_tol = scene.boundary_tol;
        opt.tube_radius = scene.tube_radius;
        opt.max_cell = scene.max_cell;
        const LimitStudy st = limit_study(h, scene.region(), scene.charge, scene.kappa_schedule,
                                          scene.vol_eps_schedule, opt);
        std::vector<ConvergenceRow> rows;
        for (const LimitRow& r : st.rows)
            rows.push_back(ConvergenceRow{r.kappa, r.eps, r.value, r.target});
        out["volume_exact"] = complex_json(st.exact.v_value);
        out["volume_extrapolated"] = complex_json(st.extrapolated);
        out["volume_err_est"] = st.err_est;
        out["volume_eps_change"] = st.eps_change;
        out["volume_kappa_converged"] = st.kappa_converged;
        out["volume_eps_stable"] = st.eps_stable;
        tables.push_back({scene.name + "_volume.csv", convergence_csv(rows)});
    }

    emit(f, scene, "verify-limits",
         make_result_record("verify-limits", scene, params_json(f, scene), out), tables);
    return 0;
}

int dispatch(const Flags& f) {
    if (f.scene_path.empty())
        throw Error(ErrorCategory::precondition, "no scene file given (--scene)");
    SceneFile scene = load_scene(f.scene_path);
    if (f.jitter) scene = jitter_scene(scene, f.jitter_seed);
    if (f.plane != 0) scene.plane = f.plane;
    if (f.kappa_max > 0) {
        std::vector<double> kept;
        for (double k : scene.kappa_schedule)
            if (k <= f.kappa_max) kept.push_back(k);
        if (kept.empty())
            throw Error(ErrorCategory::precondition,
                        "--kappa-max removed every kappa_schedule entry");
        scene.kappa_schedule = std::move(kept);
    }

    if (f.command == "validate") return cmd_validate(f, scene);
    if (f.command == "diagram") return cmd_diagram(f, scene);
    if (f.command == "selflink") return cmd_selflink(f, scene);
    if (f.command == "sk") return cmd_sk(f, scene);
    if (f.command == "wilson") return cmd_wilson(f, scene);
    if (f.command == "volume") return cmd_volume(f, scene);
    if (f.command == "verify-limits") return cmd_verify_limits(f, scene);
    throw Error(ErrorCategory::precondition, "unknown command '" + f.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
    Flags flags;
    CLI::App app{"hyperlink diagram and volume-spectrum toolkit"};
    app.add_option("--scene", flags.scene_path, "scene file path");
    app.add_option("--command", flags.command,
                   "command to run (alternative to the subcommand form)");
    app.add_option("--plane", flags.plane, "projection plane override {1,2,3}")
        ->check(CLI::Range(1, 3));
    app.add_option("--kappa-max", flags.kappa_max, "truncate the kappa schedule")
        ->check(CLI::PositiveNumber);
    auto* jit = app.add_option("--jitter", flags.jitter_seed,
                               "seeded deterministic perturbation of spatial coordinates");
    app.add_option("--out", flags.out, "directory for result artifacts");
    app.add_flag("--csv", flags.csv, "print CSV tables instead of the record");

    for (const char* name :
         {"validate", "diagram", "selflink", "sk", "wilson", "volume", "verify-limits"}) {
        CLI::App* sub = app.add_subcommand(name, "");
        sub->fallthrough();
        sub->parse_complete_callback([&flags, name] { flags.command = name; });
    }
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : linkvol::category_exit_code(linkvol::ErrorCategory::syntax);
    }
    flags.jitter = jit->count() > 0;

    try {
        return dispatch(flags);
    } catch (const linkvol::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return linkvol::category_exit_code(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return linkvol::category_exit_code(linkvol::ErrorCategory::internal);
    }
}
