#pragma once

#include <stdexcept>
#include <vector>

#include "core/video.hpp"
#include "sim/types.hpp"

namespace interdyn::sim {

struct RasterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-frame products of rasterization. id_map resolves overlap (topmost
// object wins, depth = object list order); silhouettes keep each object's
// full footprint for control rendering and the mask-subset invariant.
struct MaskFrame {
    std::vector<uint8_t> id_map;                 // H*W, 0 = background
    std::vector<std::vector<uint8_t>> silhouette;  // [object][H*W] 0/1
    std::vector<uint8_t> active;                 // [object]
    std::vector<Vec2> center_px;                 // [object] center in pixels
};

struct RasterOutput {
    int height = 0, width = 0;
    double px_per_unit_x = 1.0, px_per_unit_y = 1.0;
    core::VideoClip video;
    std::vector<MaskFrame> masks;

    int mask_pixel_count(int frame, int object_id) const {
        int n = 0;
        for (uint8_t v : masks[size_t(frame)].id_map)
            if (v == object_id) ++n;
        return n;
    }
};

// Anti-aliased RGB frames over a fixed background. Frames [frame_begin,
// frame_begin + count) of the trajectory are rendered.
RasterOutput rasterize(const Trajectory& traj, const SceneSpec& spec, int height, int width,
                       int frame_begin = 0, int count = -1, double fps = 7.0);

enum class ControlMode { BinaryMask, ColoredMask, Keypoints };

const char* control_mode_name(ControlMode m);
ControlMode control_mode_from_name(const std::string& name);

// Control frames carry only controlled objects' signal; hard (un-anti-
// aliased) so pixel counts match mask pixel counts. With occlusion on,
// pixels covered by an uncontrolled object of higher depth are carved out.
core::VideoClip render_control(const RasterOutput& raster, const SceneSpec& spec,
                               ControlMode mode, bool occlusion);

}  // namespace interdyn::sim
