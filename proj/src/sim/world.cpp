#include "sim/world.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace interdyn::sim {

namespace {

struct Body {
    const ObjectSpec* spec;
    int index;
    int entry;
    Vec2 pos, vel;
    bool active = false;
};

bool overlap(const Body& a, const Body& b, double* depth, Vec2* normal, Vec2* contact) {
    const bool a_disc = a.spec->shape == ShapeKind::Disc;
    const bool b_disc = b.spec->shape == ShapeKind::Disc;
    if (a_disc && b_disc) {
        const Vec2 d = b.pos - a.pos;
        const double dist = d.norm();
        const double rsum = a.spec->radius + b.spec->radius;
        if (dist >= rsum) return false;
        const Vec2 n = dist > 1e-12 ? d * (1.0 / dist) : Vec2{1, 0};
        *depth = rsum - dist;
        *normal = n;
        *contact = a.pos + n * a.spec->radius;
        return true;
    }
    if (a_disc != b_disc) {
        const Body& disc = a_disc ? a : b;
        const Body& box = a_disc ? b : a;
        const Vec2 he = box.spec->half_extents;
        const Vec2 rel = disc.pos - box.pos;
        const Vec2 closest{std::clamp(rel.x, -he.x, he.x), std::clamp(rel.y, -he.y, he.y)};
        Vec2 d = rel - closest;
        double dist = d.norm();
        Vec2 n;
        double depth_v;
        if (dist > 1e-12) {
            if (dist >= disc.spec->radius) return false;
            n = d * (1.0 / dist);
            depth_v = disc.spec->radius - dist;
        } else {
            // center inside the box: push along the least-penetrated axis
            const double px = he.x - std::abs(rel.x);
            const double py = he.y - std::abs(rel.y);
            if (px < py)
                n = {rel.x >= 0 ? 1.0 : -1.0, 0.0};
            else
                n = {0.0, rel.y >= 0 ? 1.0 : -1.0};
            depth_v = disc.spec->radius + std::min(px, py);
        }
        // normal must point from a to b
        *normal = a_disc ? n * -1.0 : n;
        *depth = depth_v;
        *contact = box.pos + closest;
        return true;
    }
    // box-box (axis-aligned)
    const Vec2 d = b.pos - a.pos;
    const double ox = a.spec->half_extents.x + b.spec->half_extents.x - std::abs(d.x);
    const double oy = a.spec->half_extents.y + b.spec->half_extents.y - std::abs(d.y);
    if (ox <= 0 || oy <= 0) return false;
    if (ox < oy) {
        *normal = {d.x >= 0 ? 1.0 : -1.0, 0.0};
        *depth = ox;
    } else {
        *normal = {0.0, d.y >= 0 ? 1.0 : -1.0};
        *depth = oy;
    }
    *contact = a.pos + d * 0.5;
    return true;
}

double min_extent(const ObjectSpec& o) {
    return o.shape == ShapeKind::Disc ? o.radius : std::min(o.half_extents.x, o.half_extents.y);
}

}  // namespace

void validate_spec(const SceneSpec& spec) {
    if (spec.arena_w <= 0 || spec.arena_h <= 0) throw ValidationError("arena must be positive");
    if (spec.restitution < 0 || spec.restitution > 1)
        throw ValidationError("restitution must be in [0,1]");
    if (spec.objects.empty()) return;

    std::set<int> ids;
    std::set<std::array<uint8_t, 3>> colors;
    for (const auto& o : spec.objects) {
        if (o.id < 1 || o.id > 255)
            throw ValidationError("object id must be in [1,255]: " + std::to_string(o.id));
        if (!ids.insert(o.id).second)
            throw ValidationError("duplicate object id " + std::to_string(o.id));
        if (!colors.insert(o.color).second)
            throw ValidationError("duplicate object color (id " + std::to_string(o.id) + ")");
        if (o.mass <= 0) throw ValidationError("mass must be positive (id " + std::to_string(o.id) + ")");
        if (o.shape == ShapeKind::Disc && o.radius <= 0)
            throw ValidationError("disc radius must be positive (id " + std::to_string(o.id) + ")");
        if (o.shape == ShapeKind::Box && (o.half_extents.x <= 0 || o.half_extents.y <= 0))
            throw ValidationError("box extents must be positive (id " + std::to_string(o.id) + ")");
        if (o.controlled) {
            const bool enters = spec.entry_frame(o.id) > 0;
            const bool moves = o.init_vel.norm() > 0;
            if (!enters && !moves)
                throw ValidationError("controlled object " + std::to_string(o.id) +
                                      " neither enters nor moves");
        }
    }
    for (const auto& e : spec.entry_events) {
        if (!spec.find(e.object_id))
            throw ValidationError("entry event for unknown id " + std::to_string(e.object_id));
        if (e.entry_frame < 0) throw ValidationError("entry frame must be >= 0");
    }

    // initial interiors pairwise non-overlapping among co-present objects
    for (size_t i = 0; i < spec.objects.size(); ++i)
        for (size_t j = i + 1; j < spec.objects.size(); ++j) {
            const auto& a = spec.objects[i];
            const auto& b = spec.objects[j];
            if (spec.entry_frame(a.id) != spec.entry_frame(b.id)) continue;
            Body ba{&a, 0, 0, a.init_pos, {}, true};
            Body bb{&b, 0, 0, b.init_pos, {}, true};
            double depth;
            Vec2 n, c;
            if (overlap(ba, bb, &depth, &n, &c) && depth > 1e-9)
                throw ValidationError("objects " + std::to_string(a.id) + " and " +
                                      std::to_string(b.id) + " overlap at spawn");
        }
}

Trajectory simulate_scene(const SceneSpec& spec, int num_frames, int substeps) {
    validate_spec(spec);
    if (num_frames < 2) throw ValidationError("num_frames must be >= 2");
    if (substeps < 1) throw ValidationError("substeps must be >= 1");

    std::vector<Body> bodies;
    bodies.reserve(spec.objects.size());
    for (size_t i = 0; i < spec.objects.size(); ++i) {
        const auto& o = spec.objects[i];
        bodies.push_back({&o, int(i), spec.entry_frame(o.id), o.init_pos, o.init_vel, false});
    }

    Trajectory traj;
    traj.num_frames = num_frames;
    traj.frames.resize(size_t(num_frames));

    const double h = 1.0 / double(substeps);
    const double e = spec.restitution;

    double min_radius = 1e30;
    for (const auto& b : bodies) min_radius = std::min(min_radius, min_extent(*b.spec));

    auto record = [&](int f) {
        auto& out = traj.frames[size_t(f)];
        out.resize(bodies.size());
        for (size_t i = 0; i < bodies.size(); ++i)
            out[i] = {bodies[i].pos, bodies[i].vel, 0.0, bodies[i].active};
    };

    auto activate = [&](int f) {
        for (auto& b : bodies) {
            if (b.active || b.entry != f) continue;
            b.active = true;
            for (const auto& other : bodies) {
                if (&other == &b || !other.active) continue;
                double depth;
                Vec2 n, c;
                if (overlap(b, other, &depth, &n, &c) && depth > 1e-9)
                    throw ValidationError("object " + std::to_string(b.spec->id) +
                                          " overlaps object " + std::to_string(other.spec->id) +
                                          " at entry frame " + std::to_string(f));
            }
        }
    };

    activate(0);
    record(0);

    for (int f = 1; f < num_frames; ++f) {
        activate(f);
        std::set<std::pair<int, int>> seen;  // one event per pair per frame
        for (int s = 0; s < substeps; ++s) {
            for (auto& b : bodies) {
                if (!b.active) continue;
                b.vel += spec.gravity * h;
                b.pos += b.vel * h;
            }
            // object-object contacts, fixed (i < j) order
            for (size_t i = 0; i < bodies.size(); ++i) {
                if (!bodies[i].active) continue;
                for (size_t j = i + 1; j < bodies.size(); ++j) {
                    if (!bodies[j].active) continue;
                    double depth;
                    Vec2 n, contact;
                    if (!overlap(bodies[i], bodies[j], &depth, &n, &contact)) continue;
                    if (depth > 0.5 * min_radius)
                        throw SimulationError(
                            "tunneling detected between objects " +
                            std::to_string(bodies[i].spec->id) + " and " +
                            std::to_string(bodies[j].spec->id) + " at frame " + std::to_string(f) +
                            "; reduce speeds or increase substeps");
                    const double ma = bodies[i].spec->mass, mb = bodies[j].spec->mass;
                    const double vrel = (bodies[j].vel - bodies[i].vel).dot(n);
                    if (vrel < 0) {
                        const double jimp = -(1.0 + e) * vrel / (1.0 / ma + 1.0 / mb);
                        const Vec2 imp = n * jimp;
                        bodies[i].vel -= imp * (1.0 / ma);
                        bodies[j].vel += imp * (1.0 / mb);
                        if (seen.insert({bodies[i].spec->id, bodies[j].spec->id}).second)
                            traj.collisions.push_back(
                                {f, bodies[i].spec->id, bodies[j].spec->id, contact, imp * -1.0});
                    }
                    // positional separation split by inverse mass
                    const double inv_sum = 1.0 / ma + 1.0 / mb;
                    bodies[i].pos -= n * (depth * (1.0 / ma) / inv_sum);
                    bodies[j].pos += n * (depth * (1.0 / mb) / inv_sum);
                }
            }
            // walls
            for (auto& b : bodies) {
                if (!b.active) continue;
                const double rx = b.spec->shape == ShapeKind::Disc ? b.spec->radius
                                                                   : b.spec->half_extents.x;
                const double ry = b.spec->shape == ShapeKind::Disc ? b.spec->radius
                                                                   : b.spec->half_extents.y;
                // every wall impulse is recorded so momentum accounting
                // (objects + arena) stays exact
                auto bounce = [&](double& p, double& v, double lo, double hi, double r, Vec2 cdir) {
                    if (p - r < lo && v < 0) {
                        const double dv = -(1.0 + e) * v;
                        traj.collisions.push_back(
                            {f, b.spec->id, 0, b.pos + cdir * -r, cdir * (b.spec->mass * dv)});
                        v += dv;
                        p = lo + r;
                    } else if (p + r > hi && v > 0) {
                        const double dv = -(1.0 + e) * v;
                        traj.collisions.push_back(
                            {f, b.spec->id, 0, b.pos + cdir * r, cdir * (b.spec->mass * dv)});
                        v += dv;
                        p = hi - r;
                    }
                };
                bounce(b.pos.x, b.vel.x, 0.0, spec.arena_w, rx, Vec2{1, 0});
                bounce(b.pos.y, b.vel.y, 0.0, spec.arena_h, ry, Vec2{0, 1});
            }
        }
        record(f);
    }

    std::stable_sort(traj.collisions.begin(), traj.collisions.end(),
                     [](const CollisionEvent& a, const CollisionEvent& b) { return a.frame < b.frame; });
    for (const auto& fr : traj.frames)
        for (const auto& s : fr)
            if (s.active && (!std::isfinite(s.pos.x) || !std::isfinite(s.pos.y)))
                throw SimulationError("nonfinite position");
    return traj;
}

int choose_start_frame(const Trajectory& traj, const SceneSpec& spec, int num_frames) {
    int first = -1;
    for (const auto& c : traj.collisions) {
        if (c.id_b == 0) continue;  // wall contacts do not constrain
        if (spec.entry_frame(c.id_a) > 0 || spec.entry_frame(c.id_b) > 0) continue;
        first = c.frame;
        break;
    }
    if (first < 0) return 0;
    const int t0 = std::min(first - num_frames, traj.num_frames - num_frames);
    if (t0 < 0)
        throw SimulationError("no valid start window: earliest in-scene collision at frame " +
                              std::to_string(first));
    return t0;
}

std::pair<SceneSpec, SceneSpec> make_counterfactual_pair(const SceneSpec& spec,
                                                         const Intervention& iv,
                                                         int start_frame) {
    const ObjectSpec* target = spec.find(iv.object_id);
    if (!target) throw ValidationError("intervention target not found: " + std::to_string(iv.object_id));
    if (!target->controlled)
        throw ValidationError("intervention target must be controlled: " + std::to_string(iv.object_id));
    if (spec.entry_frame(iv.object_id) <= start_frame)
        throw ValidationError("intervention target is visible at the start frame");

    SceneSpec base = spec;
    SceneSpec edited = spec;
    base.scene_id = spec.scene_id + "_a";
    edited.scene_id = spec.scene_id + "_b";

    if (iv.kind == Intervention::Kind::Remove) {
        std::erase_if(edited.objects, [&](const ObjectSpec& o) { return o.id == iv.object_id; });
        std::erase_if(edited.entry_events,
                      [&](const EntryEvent& e) { return e.object_id == iv.object_id; });
    } else {
        for (auto& o : edited.objects)
            if (o.id == iv.object_id) o.init_vel = iv.new_vel;
    }
    return {base, edited};
}

}  // namespace interdyn::sim
