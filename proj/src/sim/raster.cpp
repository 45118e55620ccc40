#include "sim/raster.hpp"

#include <cmath>
#include <cstdio>

namespace interdyn::sim {

namespace {

constexpr int kSub = 4;  // 4x4 supersampling
constexpr float kBg[3] = {32.0f / 255.0f, 32.0f / 255.0f, 36.0f / 255.0f};

// signed "inside" test plus a normalized center distance for shading
inline bool inside(const ObjectSpec& o, Vec2 center, double wx, double wy, double* cdist) {
    if (o.shape == ShapeKind::Disc) {
        const double dx = wx - center.x, dy = wy - center.y;
        const double d2 = dx * dx + dy * dy;
        if (d2 >= o.radius * o.radius) return false;
        *cdist = std::sqrt(d2) / o.radius;
        return true;
    }
    const double dx = std::abs(wx - center.x), dy = std::abs(wy - center.y);
    if (dx >= o.half_extents.x || dy >= o.half_extents.y) return false;
    *cdist = std::max(dx / o.half_extents.x, dy / o.half_extents.y);
    return true;
}

}  // namespace

RasterOutput rasterize(const Trajectory& traj, const SceneSpec& spec, int height, int width,
                       int frame_begin, int count, double fps) {
    if (height < 32 || width < 32) throw RasterError("resolution must be at least 32x32");
    if (count < 0) count = traj.num_frames - frame_begin;
    if (frame_begin < 0 || frame_begin + count > traj.num_frames)
        throw RasterError("frame window out of range");

    const double sx = double(width) / spec.arena_w;
    const double sy = double(height) / spec.arena_h;
    for (const auto& o : spec.objects) {
        const double diam_px = o.shape == ShapeKind::Disc
                                   ? 2.0 * o.radius * std::min(sx, sy)
                                   : 2.0 * std::min(o.half_extents.x * sx, o.half_extents.y * sy);
        if (diam_px < 4.0)
            throw RasterError("object " + std::to_string(o.id) +
                              " is below 4 px at this resolution");
    }

    RasterOutput out;
    out.height = height;
    out.width = width;
    out.px_per_unit_x = sx;
    out.px_per_unit_y = sy;
    out.video.fps = fps;
    out.video.first_frame_index = frame_begin;
    out.video.frames = core::Tensor<float>({count, 3, height, width});
    out.masks.resize(size_t(count));

    const int nobj = int(spec.objects.size());
    const double inv_sub = 1.0 / kSub;

    for (int f = 0; f < count; ++f) {
        const auto& states = traj.frames[size_t(frame_begin + f)];
        MaskFrame& mf = out.masks[size_t(f)];
        mf.id_map.assign(size_t(height) * width, 0);
        mf.silhouette.assign(size_t(nobj), std::vector<uint8_t>(size_t(height) * width, 0));
        mf.active.resize(size_t(nobj));
        mf.center_px.resize(size_t(nobj));
        for (int i = 0; i < nobj; ++i) {
            mf.active[size_t(i)] = states[size_t(i)].active ? 1 : 0;
            mf.center_px[size_t(i)] = {states[size_t(i)].pos.x * sx, states[size_t(i)].pos.y * sy};
        }

        for (int py = 0; py < height; ++py) {
            for (int px = 0; px < width; ++px) {
                float acc[3] = {0, 0, 0};
                std::vector<int> covers(size_t(nobj), 0);
                for (int sy_i = 0; sy_i < kSub; ++sy_i) {
                    for (int sx_i = 0; sx_i < kSub; ++sx_i) {
                        const double wx = (px + (sx_i + 0.5) * inv_sub) / sx;
                        const double wy = (py + (sy_i + 0.5) * inv_sub) / sy;
                        int top = -1;
                        double top_cd = 0;
                        for (int i = 0; i < nobj; ++i) {
                            if (!states[size_t(i)].active) continue;
                            double cd;
                            if (inside(spec.objects[size_t(i)], states[size_t(i)].pos, wx, wy, &cd)) {
                                top = i;  // later index sits on top
                                top_cd = cd;
                                covers[size_t(i)]++;
                            }
                        }
                        if (top < 0) {
                            acc[0] += kBg[0];
                            acc[1] += kBg[1];
                            acc[2] += kBg[2];
                        } else {
                            // mild radial shading keeps local texture on
                            // otherwise flat bodies
                            const float shade = float(1.0 - 0.2 * top_cd);
                            const auto& col = spec.objects[size_t(top)].color;
                            acc[0] += shade * float(col[0]) / 255.0f;
                            acc[1] += shade * float(col[1]) / 255.0f;
                            acc[2] += shade * float(col[2]) / 255.0f;
                        }
                    }
                }
                const float inv_n = 1.0f / float(kSub * kSub);
                for (int c = 0; c < 3; ++c)
                    out.video.frames.at(f, c, py, px) = acc[c] * inv_n;

                const int half = kSub * kSub / 2;
                int top_id = 0;
                for (int i = 0; i < nobj; ++i) {
                    if (covers[size_t(i)] > half) {
                        mf.silhouette[size_t(i)][size_t(py) * width + px] = 1;
                        top_id = spec.objects[size_t(i)].id;
                    }
                }
                mf.id_map[size_t(py) * width + px] = uint8_t(top_id);
            }
        }
    }
    return out;
}

const char* control_mode_name(ControlMode m) {
    switch (m) {
        case ControlMode::BinaryMask: return "binary_mask";
        case ControlMode::ColoredMask: return "colored_mask";
        case ControlMode::Keypoints: return "keypoints";
    }
    return "?";
}

ControlMode control_mode_from_name(const std::string& name) {
    if (name == "binary_mask") return ControlMode::BinaryMask;
    if (name == "colored_mask") return ControlMode::ColoredMask;
    if (name == "keypoints") return ControlMode::Keypoints;
    throw std::runtime_error("unknown control mode: " + name);
}

core::VideoClip render_control(const RasterOutput& raster, const SceneSpec& spec,
                               ControlMode mode, bool occlusion) {
    const int count = raster.video.num_frames();
    const int H = raster.height, W = raster.width;
    const int nobj = int(spec.objects.size());

    core::VideoClip ctrl;
    ctrl.fps = raster.video.fps;
    ctrl.first_frame_index = raster.video.first_frame_index;
    ctrl.frames = core::Tensor<float>({count, 3, H, W});

    bool any_controlled = false;
    for (const auto& o : spec.objects) any_controlled |= o.controlled;
    if (!any_controlled)
        std::fprintf(stderr, "warning: scene %s has no controlled objects; control is all-zero\n",
                     spec.scene_id.c_str());

    for (int f = 0; f < count; ++f) {
        const MaskFrame& mf = raster.masks[size_t(f)];
        for (int i = 0; i < nobj; ++i) {
            const auto& obj = spec.objects[size_t(i)];
            if (!obj.controlled || !mf.active[size_t(i)]) continue;

            // occluded = covered by an uncontrolled object drawn above
            auto carved = [&](size_t pix) {
                if (!occlusion) return false;
                for (int j = i + 1; j < nobj; ++j)
                    if (!spec.objects[size_t(j)].controlled && mf.active[size_t(j)] &&
                        mf.silhouette[size_t(j)][pix])
                        return true;
                return false;
            };

            float col[3];
            if (mode == ControlMode::BinaryMask) {
                col[0] = col[1] = col[2] = 1.0f;
            } else {
                col[0] = float(obj.color[0]) / 255.0f;
                col[1] = float(obj.color[1]) / 255.0f;
                col[2] = float(obj.color[2]) / 255.0f;
            }

            if (mode == ControlMode::Keypoints) {
                const Vec2 c = mf.center_px[size_t(i)];
                const double rx = (obj.shape == ShapeKind::Disc ? obj.radius : obj.half_extents.x) *
                                  raster.px_per_unit_x;
                const double ry = (obj.shape == ShapeKind::Disc ? obj.radius : obj.half_extents.y) *
                                  raster.px_per_unit_y;
                const Vec2 pts[5] = {c, {c.x - rx, c.y}, {c.x + rx, c.y}, {c.x, c.y - ry},
                                     {c.x, c.y + ry}};
                const double kp_r = std::max(1.0, std::min(H, W) / 48.0);
                for (int py = 0; py < H; ++py)
                    for (int px = 0; px < W; ++px) {
                        const double cx = px + 0.5, cy = py + 0.5;
                        bool hit = false;
                        for (const auto& p : pts) {
                            const double dx = cx - p.x, dy = cy - p.y;
                            if (dx * dx + dy * dy <= kp_r * kp_r) {
                                hit = true;
                                break;
                            }
                        }
                        if (!hit) continue;
                        const size_t pix = size_t(py) * W + px;
                        if (carved(pix)) continue;
                        for (int ch = 0; ch < 3; ++ch) ctrl.frames.at(f, ch, py, px) = col[ch];
                    }
            } else {
                const auto& sil = mf.silhouette[size_t(i)];
                for (int py = 0; py < H; ++py)
                    for (int px = 0; px < W; ++px) {
                        const size_t pix = size_t(py) * W + px;
                        if (!sil[pix] || carved(pix)) continue;
                        for (int ch = 0; ch < 3; ++ch) ctrl.frames.at(f, ch, py, px) = col[ch];
                    }
            }
        }
    }
    return ctrl;
}

}  // namespace interdyn::sim
