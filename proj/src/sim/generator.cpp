#include "sim/generator.hpp"

#include <omp.h>

#include <cmath>

#include "core/fs.hpp"
#include "core/rng.hpp"
#include "sim/tracklets.hpp"

namespace interdyn::sim {

using core::Rng;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// saturated, mutually distant colors; index 0 is reserved for background
constexpr std::array<uint8_t, 3> kPalette[] = {
    {230, 60, 50},   {60, 120, 230}, {70, 200, 90},   {240, 200, 60},
    {200, 80, 220},  {70, 220, 220}, {240, 140, 50},  {150, 230, 60},
    {240, 100, 160}, {110, 90, 240}, {180, 180, 180}, {120, 70, 40},
};
constexpr int kPaletteSize = int(sizeof(kPalette) / sizeof(kPalette[0]));

std::vector<int> shuffled_colors(Rng& rng, int n) {
    std::vector<int> idx(kPaletteSize);
    for (int i = 0; i < kPaletteSize; ++i) idx[size_t(i)] = i;
    for (int i = 0; i < n; ++i) {
        const size_t j = size_t(i) + rng.below(idx.size() - size_t(i));
        std::swap(idx[size_t(i)], idx[j]);
    }
    idx.resize(size_t(n));
    return idx;
}

ObjectSpec disc(int id, double radius, std::array<uint8_t, 3> color, Vec2 pos, Vec2 vel,
                bool controlled) {
    ObjectSpec o;
    o.id = id;
    o.shape = ShapeKind::Disc;
    o.radius = radius;
    o.mass = radius * radius;  // mass tracks area
    o.color = color;
    o.init_pos = pos;
    o.init_vel = vel;
    o.controlled = controlled;
    return o;
}

// Place an entering disc so first contact lands near entry + lead frames.
// Spawns are pulled toward the arena when possible; a spawn outside the
// visible area is fine (the disc flies in, walls only act on separating
// velocities) as long as it clears the target at entry.
Vec2 entry_spawn(Vec2 target, Vec2 dir, double speed, double lead, double surface_gap,
                 double radius, double arena_w, double arena_h) {
    const double floor_dist = surface_gap + 1.0;
    double dist = std::max(speed * lead + surface_gap, floor_dist);
    Vec2 pos{target.x - dir.x * dist, target.y - dir.y * dist};
    const double margin = radius + 0.5;
    for (int iter = 0; iter < 32 && dist > floor_dist; ++iter) {
        if (pos.x >= margin && pos.x <= arena_w - margin && pos.y >= margin &&
            pos.y <= arena_h - margin)
            break;
        dist = std::max(dist * 0.92, floor_dist);
        pos = {target.x - dir.x * dist, target.y - dir.y * dist};
    }
    return pos;
}

}  // namespace

SceneSpec make_entry_scene(uint64_t seed, const GeneratorConfig& cfg) {
    Rng rng(seed);
    SceneSpec spec;
    spec.seed = seed;
    spec.arena_w = double(cfg.width);
    spec.arena_h = double(cfg.height);
    spec.restitution = 1.0;

    const auto colors = shuffled_colors(rng, 3);
    const double r_target = rng.uniform(6.5, 8.5);
    const Vec2 center{spec.arena_w * rng.uniform(0.38, 0.62),
                      spec.arena_h * rng.uniform(0.38, 0.62)};
    spec.objects.push_back(disc(1, r_target, kPalette[size_t(colors[0])], center, {0, 0}, false));

    // an extra stationary bystander in half the scenes
    const bool bystander = rng.uniform() < 0.5;
    if (bystander) {
        const double r2 = rng.uniform(6.5, 7.5);
        for (int tries = 0; tries < 64; ++tries) {
            const double ang = rng.uniform(0, 2 * M_PI);
            const double d = r_target + r2 + rng.uniform(10.0, 18.0);
            const Vec2 p{center.x + std::cos(ang) * d, center.y + std::sin(ang) * d};
            const double m = r2 + 1.0;
            if (p.x < m || p.x > spec.arena_w - m || p.y < m || p.y > spec.arena_h - m) continue;
            spec.objects.push_back(disc(2, r2, kPalette[size_t(colors[1])], p, {0, 0}, false));
            break;
        }
    }

    const int ctrl_id = bystander && spec.objects.size() > 1 ? 3 : 2;
    const int color_i = ctrl_id - 1;
    const double r_ctrl = rng.uniform(6.5, 8.0);
    const double speed = rng.uniform(1.6, 2.3);
    const int entry = 1;
    const double lead = rng.uniform(2.2, 3.2);  // frames from entry to contact
    const double ang = rng.uniform(0, 2 * M_PI);
    const Vec2 dir{std::cos(ang), std::sin(ang)};
    const Vec2 spawn = entry_spawn(center, dir, speed, lead, r_ctrl + r_target, r_ctrl,
                                   spec.arena_w, spec.arena_h);
    spec.objects.push_back(
        disc(ctrl_id, r_ctrl, kPalette[size_t(colors[size_t(color_i)])], spawn,
             dir * speed, true));
    spec.entry_events.push_back({ctrl_id, entry});
    return spec;
}

SceneSpec make_chain_scene(uint64_t seed, const GeneratorConfig& cfg) {
    Rng rng(seed);
    SceneSpec spec;
    spec.seed = seed;
    spec.arena_w = double(cfg.width);
    spec.arena_h = double(cfg.height);
    spec.restitution = 1.0;

    const auto colors = shuffled_colors(rng, 3);
    const double r = rng.uniform(6.5, 7.5);
    const double ang = rng.uniform(0, 2 * M_PI);
    const Vec2 dir{std::cos(ang), std::sin(ang)};
    const Vec2 center{spec.arena_w * 0.5, spec.arena_h * 0.5};

    // A and B lie on the line of motion; equal masses pass momentum on
    const double gap = rng.uniform(3.0, 5.0);
    const Vec2 a_pos{center.x - dir.x * (r + gap / 2), center.y - dir.y * (r + gap / 2)};
    const Vec2 b_pos{a_pos.x + dir.x * (2 * r + gap), a_pos.y + dir.y * (2 * r + gap)};
    spec.objects.push_back(disc(1, r, kPalette[size_t(colors[0])], a_pos, {0, 0}, false));
    spec.objects.push_back(disc(2, r, kPalette[size_t(colors[1])], b_pos, {0, 0}, false));

    const double speed = rng.uniform(1.8, 2.3);
    const Vec2 spawn = entry_spawn(a_pos, dir, speed, 2.2, 2 * r, r, spec.arena_w, spec.arena_h);
    spec.objects.push_back(disc(3, r, kPalette[size_t(colors[2])], spawn, dir * speed, true));
    spec.entry_events.push_back({3, 1});
    return spec;
}

SceneSpec make_free_scene(uint64_t seed, int num_objects, double arena, double max_speed) {
    Rng rng(seed);
    SceneSpec spec;
    spec.seed = seed;
    spec.arena_w = arena;
    spec.arena_h = arena;
    spec.restitution = 1.0;
    for (int i = 0; i < num_objects; ++i) {
        const double r = rng.uniform(5.0, 9.0);
        Vec2 pos;
        bool placed = false;
        for (int tries = 0; tries < 256 && !placed; ++tries) {
            pos = {rng.uniform(r + 1, arena - r - 1), rng.uniform(r + 1, arena - r - 1)};
            placed = true;
            for (const auto& o : spec.objects) {
                const double d = (pos - o.init_pos).norm();
                if (d < r + o.radius + 1.0) placed = false;
            }
        }
        if (!placed) break;
        const double sp = rng.uniform(0.2, max_speed);
        const double ang = rng.uniform(0, 2 * M_PI);
        auto o = disc(i + 1, r, kPalette[size_t(i % kPaletteSize)], pos,
                      {std::cos(ang) * sp, std::sin(ang) * sp}, false);
        o.color[2] = uint8_t(o.color[2] ^ (i / kPaletteSize));  // keep colors unique
        spec.objects.push_back(o);
    }
    return spec;
}

SceneBundle build_bundle(const SceneSpec& spec, const GeneratorConfig& cfg) {
    SceneBundle b;
    b.spec = spec;
    b.start_frame = 0;
    b.control_mode = cfg.control_mode;
    b.occlusion = cfg.occlusion;
    b.height = cfg.height;
    b.width = cfg.width;

    const Trajectory traj = simulate_scene(spec, cfg.frames, cfg.substeps);
    const RasterOutput raster = rasterize(traj, spec, cfg.height, cfg.width, 0, cfg.frames, cfg.fps);
    b.video = raster.video;
    b.control = render_control(raster, spec, cfg.control_mode, cfg.occlusion);
    b.collisions = traj.collisions;
    b.mask_ids.resize(size_t(cfg.frames));
    for (int f = 0; f < cfg.frames; ++f) b.mask_ids[size_t(f)] = raster.masks[size_t(f)].id_map;

    for (const auto& o : spec.objects) {
        TrackletExclusion excl;
        auto set = ground_truth_tracklets(traj, raster, spec, o.id, cfg.track_points,
                                          core::Rng::mix(spec.seed, 0x7261636bull), &excl);
        if (set) b.tracklets.push_back(std::move(*set));
    }
    return b;
}

void save_manifest(const std::string& root, const DatasetManifest& m,
                   const GeneratorConfig& cfg) {
    json j;
    j["scenes"] = m.scenes;
    j["counterfactual_pairs"] = json::array();
    for (const auto& [a, b] : m.counterfactual_pairs)
        j["counterfactual_pairs"].push_back({a, b});
    j["chain_scenes"] = m.chain_scenes;
    j["config_hash"] = m.config_hash;
    j["generator"] = {{"scenes", cfg.scenes},
                      {"frames", cfg.frames},
                      {"height", cfg.height},
                      {"width", cfg.width},
                      {"control_mode", control_mode_name(cfg.control_mode)},
                      {"occlusion", cfg.occlusion},
                      {"counterfactual_pairs", cfg.counterfactual_pairs},
                      {"chain_scenes", cfg.chain_scenes},
                      {"seed", cfg.seed},
                      {"fps", cfg.fps},
                      {"substeps", cfg.substeps},
                      {"track_points", cfg.track_points}};
    core::write_text_file(fs::path(root) / "manifest.json", j.dump(1));
}

DatasetManifest load_manifest(const std::string& root) {
    const json j = json::parse(core::read_text_file(fs::path(root) / "manifest.json"));
    DatasetManifest m;
    m.scenes = j.at("scenes").get<std::vector<std::string>>();
    for (const auto& p : j.at("counterfactual_pairs"))
        m.counterfactual_pairs.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
    m.chain_scenes = j.at("chain_scenes").get<std::vector<std::string>>();
    m.config_hash = j.at("config_hash").get<std::string>();
    return m;
}

DatasetManifest generate_dataset(const std::string& root, const GeneratorConfig& cfg,
                                 const std::string& config_hash) {
    fs::create_directories(root);

    struct Job {
        std::string dir;
        SceneSpec spec;
    };
    std::vector<Job> jobs;
    DatasetManifest m;
    m.config_hash = config_hash;

    char buf[64];
    for (int i = 0; i < cfg.scenes; ++i) {
        const uint64_t s = Rng::mix(cfg.seed, uint64_t(i));
        const bool chain = i < cfg.chain_scenes;
        SceneSpec spec = chain ? make_chain_scene(s, cfg) : make_entry_scene(s, cfg);
        std::snprintf(buf, sizeof(buf), "scene_%04d", i);
        spec.scene_id = buf;
        jobs.push_back({buf, spec});
        m.scenes.push_back(buf);
        if (chain) m.chain_scenes.push_back(buf);
    }
    for (int i = 0; i < cfg.counterfactual_pairs; ++i) {
        const uint64_t s = Rng::mix(cfg.seed, 0x10000u + uint64_t(i));
        SceneSpec spec = make_entry_scene(s, cfg);
        std::snprintf(buf, sizeof(buf), "pair_%04d", i);
        spec.scene_id = buf;
        Rng rng(Rng::mix(s, 1));
        Intervention iv;
        iv.object_id = spec.objects.back().id;  // the entering disc
        if (rng.uniform() < 0.5) {
            iv.kind = Intervention::Kind::Remove;
        } else {
            iv.kind = Intervention::Kind::VelocityEdit;
            const Vec2 v = spec.objects.back().init_vel;
            const double rot = rng.uniform(0.5, 0.9) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
            iv.new_vel = {v.x * std::cos(rot) - v.y * std::sin(rot),
                          v.x * std::sin(rot) + v.y * std::cos(rot)};
        }
        auto [a, b] = make_counterfactual_pair(spec, iv, 0);
        jobs.push_back({a.scene_id, a});
        jobs.push_back({b.scene_id, b});
        m.scenes.push_back(a.scene_id);
        m.scenes.push_back(b.scene_id);
        m.counterfactual_pairs.push_back({a.scene_id, b.scene_id});
    }

    std::vector<std::string> errors(jobs.size());
    const int nthreads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (size_t i = 0; i < jobs.size(); ++i) {
        try {
            const SceneBundle bundle = build_bundle(jobs[i].spec, cfg);
            export_scene((fs::path(root) / jobs[i].dir).string(), bundle);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (size_t i = 0; i < jobs.size(); ++i)
        if (!errors[i].empty())
            throw std::runtime_error("scene " + jobs[i].dir + ": " + errors[i]);

    save_manifest(root, m, cfg);
    return m;
}

}  // namespace interdyn::sim
