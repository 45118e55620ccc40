#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace interdyn::sim {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(Vec2 o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Vec2& operator-=(Vec2 o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::sqrt(x * x + y * y); }
};

enum class ShapeKind { Disc, Box };

struct ObjectSpec {
    int id = 0;  // 1..255; doubles as the mask palette index
    ShapeKind shape = ShapeKind::Disc;
    double radius = 0.0;       // disc
    Vec2 half_extents;         // box
    double mass = 1.0;
    std::array<uint8_t, 3> color{255, 255, 255};
    Vec2 init_pos;
    Vec2 init_vel;             // world units per frame
    bool controlled = false;
};

struct EntryEvent {
    int object_id = 0;
    int entry_frame = 0;
};

struct SceneSpec {
    std::string scene_id;
    double arena_w = 64.0, arena_h = 64.0;
    Vec2 gravity;              // world units per frame^2, default zero
    double restitution = 1.0;  // in [0, 1]
    std::vector<ObjectSpec> objects;
    std::vector<EntryEvent> entry_events;
    uint64_t seed = 0;

    // entry frame of an object; 0 means present from the start
    int entry_frame(int object_id) const {
        for (const auto& e : entry_events)
            if (e.object_id == object_id) return e.entry_frame;
        return 0;
    }

    const ObjectSpec* find(int object_id) const {
        for (const auto& o : objects)
            if (o.id == object_id) return &o;
        return nullptr;
    }
};

// id_b == 0 marks an arena-wall contact.
struct CollisionEvent {
    int frame = 0;  // first recorded frame at which post-impact velocities show
    int id_a = 0;
    int id_b = 0;
    Vec2 contact;
    Vec2 impulse;  // impulse applied to object id_a
};

struct ObjectState {
    Vec2 pos;
    Vec2 vel;
    double angle = 0.0;
    bool active = false;
};

struct Trajectory {
    int num_frames = 0;
    // frames[f][i] is the state of spec.objects[i] at frame f
    std::vector<std::vector<ObjectState>> frames;
    std::vector<CollisionEvent> collisions;

    Vec2 momentum(const SceneSpec& spec, int frame) const {
        Vec2 p;
        for (size_t i = 0; i < spec.objects.size(); ++i)
            if (frames[size_t(frame)][i].active)
                p += frames[size_t(frame)][i].vel * spec.objects[i].mass;
        return p;
    }

    double kinetic_energy(const SceneSpec& spec, int frame) const {
        double e = 0;
        for (size_t i = 0; i < spec.objects.size(); ++i) {
            const auto& s = frames[size_t(frame)][i];
            if (s.active) e += 0.5 * spec.objects[i].mass * s.vel.dot(s.vel);
        }
        return e;
    }
};

struct Tracklet {
    std::vector<Vec2> pos;          // pixel coordinates, one per frame
    std::vector<uint8_t> in_frame;  // 1 while inside the frame bounds
};

enum class TrackletSource { GroundTruth, Tracked };

struct TrackletSet {
    std::vector<Tracklet> tracks;
    TrackletSource source = TrackletSource::GroundTruth;
    int object_id = 0;
};

}  // namespace interdyn::sim
