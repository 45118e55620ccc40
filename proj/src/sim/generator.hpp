#pragma once

#include <string>
#include <vector>

#include "sim/scene_io.hpp"
#include "sim/world.hpp"

namespace interdyn::sim {

struct GeneratorConfig {
    int scenes = 16;
    int frames = 8;
    int height = 64, width = 64;
    ControlMode control_mode = ControlMode::ColoredMask;
    bool occlusion = false;
    int counterfactual_pairs = 0;
    int chain_scenes = 0;
    uint64_t seed = 1;
    double fps = 7.0;
    int substeps = 8;
    int track_points = 100;
    int jobs = 0;  // 0 = library default
};

struct DatasetManifest {
    std::vector<std::string> scenes;  // scene dir names under the root
    std::vector<std::pair<std::string, std::string>> counterfactual_pairs;
    std::vector<std::string> chain_scenes;
    std::string config_hash;
};

// One in-scene disc struck by a controlled disc entering after frame 1.
SceneSpec make_entry_scene(uint64_t seed, const GeneratorConfig& cfg);

// controlled -> A -> B momentum chain; A and B are uncontrolled.
SceneSpec make_chain_scene(uint64_t seed, const GeneratorConfig& cfg);

// Free-flying discs for conservation checks; no entries, no control.
SceneSpec make_free_scene(uint64_t seed, int num_objects, double arena = 256.0,
                          double max_speed = 1.5);

// Simulate + rasterize + control + ground-truth tracklets for a spec.
SceneBundle build_bundle(const SceneSpec& spec, const GeneratorConfig& cfg);

DatasetManifest generate_dataset(const std::string& root, const GeneratorConfig& cfg,
                                 const std::string& config_hash);

DatasetManifest load_manifest(const std::string& root);
void save_manifest(const std::string& root, const DatasetManifest& m,
                   const GeneratorConfig& cfg);

}  // namespace interdyn::sim
