// Regenerates the bundled scene corpus in canonical form.
// Usage: make_scenes [output-dir]   (default: scenes)

#include <cstdio>
#include <filesystem>
#include <vector>

#include "linkvol/samples.hpp"
#include "linkvol/scene.hpp"

int main(int argc, char** argv) {
    using namespace linkvol;
    const std::filesystem::path dir = argc > 1 ? argv[1] : "scenes";
    std::filesystem::create_directories(dir);
    const std::vector<SceneFile> corpus = {
        samples::scene_split_pair(),    samples::scene_hopf_pair(),
        samples::scene_double_wind(),   samples::scene_golden_volume(),
        samples::scene_pair_volume(),   samples::scene_figure_eight(),
        samples::scene_unstable_frame(), samples::scene_axis_hopf(),
    };
    for (const SceneFile& s : corpus) {
        const std::filesystem::path p = dir / (s.name + ".scene");
        save_scene(s, p.string());
        std::printf("%s  %s\n", scene_hash_hex(s).c_str(), p.string().c_str());
    }
    return 0;
}
