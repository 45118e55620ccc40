#pragma once

#include <stdexcept>
#include <utility>

#include "sim/types.hpp"

namespace interdyn::sim {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throws ValidationError on bad ids/masses/sizes/overlaps.
void validate_spec(const SceneSpec& spec);

// Deterministic substepped rigid-body run. Elastic impulse resolution for
// object-object and object-wall contacts; wall events carry id_b == 0.
// A recorded collision at frame f means the impact happened in (f-1, f].
Trajectory simulate_scene(const SceneSpec& spec, int num_frames, int substeps = 8);

// Largest t0 with every collision between two initially in-scene objects
// at frame >= t0 + num_frames and num_frames frames left; 0 when no such
// collision exists. Throws SimulationError when no window fits.
int choose_start_frame(const Trajectory& traj, const SceneSpec& spec, int num_frames);

struct Intervention {
    enum class Kind { Remove, VelocityEdit };
    Kind kind = Kind::Remove;
    int object_id = 0;
    Vec2 new_vel;  // VelocityEdit only
};

// Base scene plus its intervened twin. The target must be controlled and
// must not have entered by start_frame, so frame start_frame is identical
// by construction.
std::pair<SceneSpec, SceneSpec> make_counterfactual_pair(const SceneSpec& spec,
                                                         const Intervention& iv,
                                                         int start_frame);

}  // namespace interdyn::sim
