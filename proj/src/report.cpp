#include "linkvol/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace linkvol {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream out;
    out << "kappa,eps,value_re,value_im,target_re,target_im,abs_error\n";
    for (const ConvergenceRow& r : rows) {
        out << g17(r.kappa) << ',' << g17(r.eps) << ',' << g17(r.value.real()) << ','
            << g17(r.value.imag()) << ',' << g17(r.target.real()) << ',' << g17(r.target.imag())
            << ',' << g17(std::abs(r.value - r.target)) << '\n';
    }
    return out.str();
}

ordered_json complex_json(std::complex<double> z) {
    return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

ordered_json make_result_record(const std::string& command, const SceneFile& scene,
                                const ordered_json& params, const ordered_json& outputs) {
    ordered_json rec;
    rec["command"] = command;
    rec["scene"] = scene.name;
    rec["scene_hash"] = scene_hash_hex(scene);
    rec["params"] = params;
    rec["outputs"] = outputs;
    rec["timestamp"] = utc_timestamp();
    return rec;
}

std::string record_text(const ordered_json& record) { return record.dump(2) + "\n"; }

std::string diagram_export(const LinkDiagram& d, int n_components,
                           const std::string& scene_name) {
    std::ostringstream out;

    // Events per component: (loop parameter, vertex id), used for the edges.
    struct Event {
        double s;
        int vertex;
    };
    std::vector<std::vector<Event>> events(std::max(n_components, 0));
    auto touch = [&events](int comp, double s, int vertex) {
        if (static_cast<int>(events.size()) <= comp) events.resize(comp + 1);
        events[comp].push_back(Event{s, vertex});
    };

    std::ostringstream verts;
    int id = 0;
    for (const Crossing& c : d.crossings) {
        verts << "vertex " << id << " crossing valency 4 comp_a " << c.comp_a << " s_a "
              << g17(c.s_a) << " comp_b " << c.comp_b << " s_b " << g17(c.s_b) << " over "
              << (c.a_over ? "a" : "b") << " sign " << c.sign << "\n";
        touch(c.comp_a, c.s_a, id);
        touch(c.comp_b, c.s_b, id);
        ++id;
    }
    for (const Crossing& c : d.self_crossings) {
        verts << "vertex " << id << " self-crossing valency 4 comp " << c.comp_a << " s_a "
              << g17(c.s_a) << " s_b " << g17(c.s_b) << " over "
              << (c.a_over ? "a" : "b") << " sign " << c.sign << "\n";
        touch(c.comp_a, c.s_a, id);
        touch(c.comp_a, c.s_b, id);
        ++id;
    }
    for (int m = 0; m < static_cast<int>(d.framing.size()); ++m) {
        for (const HalfTwist& h : d.framing[m].half_twists) {
            verts << "vertex " << id << " half-twist valency 2 comp " << m << " s " << g17(h.s)
                  << " sign " << h.sign << "\n";
            touch(m, h.s, id);
            ++id;
        }
    }

    out << "diagram " << scene_name << " plane " << d.plane << " matter " << d.n_matter
        << " vertices " << id << "\n";
    out << verts.str();

    for (int comp = 0; comp < static_cast<int>(events.size()); ++comp) {
        auto& ev = events[comp];
        std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.s < b.s; });
        const int n = static_cast<int>(ev.size());
        for (int i = 0; i < n; ++i) {
            const Event& a = ev[i];
            const Event& b = ev[(i + 1) % n];
            out << "edge comp " << comp << " from " << a.vertex << " to " << b.vertex << " s "
                << g17(a.s) << " " << g17(b.s) << "\n";
        }
        if (n == 0) out << "edge comp " << comp << " closed\n";
    }
    return out.str();
}

}  // namespace linkvol
