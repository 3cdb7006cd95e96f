#pragma once

#include <complex>
#include <string>
#include <vector>

#include "json.hpp"

#include "linkvol/diagram.hpp"
#include "linkvol/scene.hpp"

namespace linkvol {

using ordered_json = nlohmann::ordered_json;

// One row of a convergence table; abs_error is derived as |value - target|.
struct ConvergenceRow {
    double kappa = 0;
    double eps = 0;
    std::complex<double> value{0, 0};
    std::complex<double> target{0, 0};
};

// Fixed-format CSV: header "kappa,eps,value_re,value_im,target_re,target_im,
// abs_error" followed by one row per entry, numbers rendered with "%.17g".
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

// {"re": ..., "im": ...}
ordered_json complex_json(std::complex<double> z);

// Assembles the canonical result record: command, scene name + hash, the
// echoed parameters, command outputs, and a "timestamp" field (ISO 8601
// UTC).  Identical scene + params + outputs give byte-identical dumps apart
// from the timestamp value.
ordered_json make_result_record(const std::string& command, const SceneFile& scene,
                                const ordered_json& params, const ordered_json& outputs);

// Pretty-printed record text (trailing newline included).
std::string record_text(const ordered_json& record);

// Plain-text diagram export: a summary line, one "vertex" line per crossing
// (valency 4), self-crossing (valency 4) and half-twist (valency 2) with
// sign annotations, then per-component "edge" lines connecting consecutive
// events along each loop.  n_components covers event-free loops, which
// export as a single closed edge.
std::string diagram_export(const LinkDiagram& d, int n_components,
                           const std::string& scene_name);

}  // namespace linkvol
