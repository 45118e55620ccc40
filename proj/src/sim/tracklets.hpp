#pragma once

#include <optional>
#include <string>

#include "sim/raster.hpp"
#include "sim/types.hpp"

namespace interdyn::sim {

struct TrackletExclusion {
    int object_id = 0;
    std::string reason;
};

// n_points seeded uniformly (without replacement) on the object's visible
// mask in the first rendered frame, advected by the object's rigid motion.
// Returns nullopt (with *excl filled) when the mask is too small; per the
// evaluation protocol that excludes the video from motion fidelity rather
// than failing.
std::optional<TrackletSet> ground_truth_tracklets(const Trajectory& traj,
                                                  const RasterOutput& raster,
                                                  const SceneSpec& spec, int object_id,
                                                  int n_points, uint64_t seed,
                                                  TrackletExclusion* excl = nullptr);

}  // namespace interdyn::sim
