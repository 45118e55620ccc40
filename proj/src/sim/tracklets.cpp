#include "sim/tracklets.hpp"

#include "core/rng.hpp"

namespace interdyn::sim {

std::optional<TrackletSet> ground_truth_tracklets(const Trajectory& traj,
                                                  const RasterOutput& raster,
                                                  const SceneSpec& spec, int object_id,
                                                  int n_points, uint64_t seed,
                                                  TrackletExclusion* excl) {
    int obj_index = -1;
    for (size_t i = 0; i < spec.objects.size(); ++i)
        if (spec.objects[i].id == object_id) obj_index = int(i);
    if (obj_index < 0) throw std::runtime_error("unknown object id " + std::to_string(object_id));

    const int H = raster.height, W = raster.width;
    const int count = raster.video.num_frames();
    const int begin = raster.video.first_frame_index;

    std::vector<int> pixels;
    const auto& id_map = raster.masks[0].id_map;
    for (int p = 0; p < H * W; ++p)
        if (id_map[size_t(p)] == object_id) pixels.push_back(p);

    if (int(pixels.size()) < n_points) {
        if (excl)
            *excl = {object_id, "too few points: mask has " + std::to_string(pixels.size()) +
                                    " px, need " + std::to_string(n_points)};
        return std::nullopt;
    }

    // partial Fisher-Yates keeps the draw deterministic in the seed
    core::Rng rng(core::Rng::mix(seed, uint64_t(object_id)));
    for (int i = 0; i < n_points; ++i) {
        const size_t j = size_t(i) + rng.below(pixels.size() - size_t(i));
        std::swap(pixels[size_t(i)], pixels[j]);
    }

    const Vec2 origin = traj.frames[size_t(begin)][size_t(obj_index)].pos;

    TrackletSet set;
    set.source = TrackletSource::GroundTruth;
    set.object_id = object_id;
    set.tracks.resize(size_t(n_points));
    for (int i = 0; i < n_points; ++i) {
        const int p = pixels[size_t(i)];
        const Vec2 p0{double(p % W) + 0.5, double(p / W) + 0.5};
        auto& tr = set.tracks[size_t(i)];
        tr.pos.resize(size_t(count));
        tr.in_frame.resize(size_t(count));
        for (int f = 0; f < count; ++f) {
            const auto& st = traj.frames[size_t(begin + f)][size_t(obj_index)];
            const Vec2 off{(st.pos.x - origin.x) * raster.px_per_unit_x,
                           (st.pos.y - origin.y) * raster.px_per_unit_y};
            const Vec2 pt{p0.x + off.x, p0.y + off.y};
            tr.pos[size_t(f)] = pt;
            tr.in_frame[size_t(f)] =
                (pt.x >= 0 && pt.x < W && pt.y >= 0 && pt.y < H && st.active) ? 1 : 0;
        }
    }
    return set;
}

}  // namespace interdyn::sim
