#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "core/video.hpp"
#include "sim/raster.hpp"
#include "sim/types.hpp"

namespace interdyn::sim {

struct SceneIoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything a scene directory holds. Collision frames are stored relative
// to the exported clip (frame 0 = first exported frame).
struct SceneBundle {
    SceneSpec spec;
    int start_frame = 0;
    ControlMode control_mode = ControlMode::ColoredMask;
    bool occlusion = false;
    std::vector<CollisionEvent> collisions;
    core::VideoClip video;
    core::VideoClip control;
    std::vector<std::vector<uint8_t>> mask_ids;  // [frame][H*W]
    std::vector<TrackletSet> tracklets;
    int height = 0, width = 0;
};

nlohmann::json spec_to_json(const SceneSpec& spec);
SceneSpec spec_from_json(const nlohmann::json& j);

void export_scene(const std::string& dir, const SceneBundle& bundle);
SceneBundle import_scene(const std::string& dir);

// Reads only frames/ (and control/ when present) — the loader used by
// training and evaluation, which do not need physics metadata.
core::VideoClip load_scene_video(const std::string& dir);

}  // namespace interdyn::sim
