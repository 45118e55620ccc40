#include "sim/scene_io.hpp"

#include <cstdio>

#include "core/fs.hpp"
#include "core/hash.hpp"
#include "core/png_io.hpp"

namespace interdyn::sim {

using json = nlohmann::json;
namespace fs = std::filesystem;
using core::fnv1a;

namespace {

std::string frame_name(const char* stem, int i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s_%03d.png", stem, i);
    return buf;
}

json tracklets_to_json(const std::vector<TrackletSet>& sets) {
    json out = json::array();
    for (const auto& s : sets) {
        json js;
        js["object_id"] = s.object_id;
        js["source"] = s.source == TrackletSource::GroundTruth ? "ground_truth" : "tracked";
        json points = json::array();
        for (const auto& t : s.tracks) {
            json track = json::array();
            for (size_t f = 0; f < t.pos.size(); ++f)
                track.push_back({t.pos[f].x, t.pos[f].y, int(t.in_frame[f])});
            points.push_back(std::move(track));
        }
        js["points"] = std::move(points);
        out.push_back(std::move(js));
    }
    return out;
}

std::vector<TrackletSet> tracklets_from_json(const json& j) {
    std::vector<TrackletSet> sets;
    for (const auto& js : j) {
        TrackletSet s;
        s.object_id = js.at("object_id").get<int>();
        s.source = js.at("source").get<std::string>() == "tracked" ? TrackletSource::Tracked
                                                                   : TrackletSource::GroundTruth;
        for (const auto& track : js.at("points")) {
            Tracklet t;
            for (const auto& p : track) {
                t.pos.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
                t.in_frame.push_back(uint8_t(p.at(2).get<int>()));
            }
            s.tracks.push_back(std::move(t));
        }
        sets.push_back(std::move(s));
    }
    return sets;
}

uint64_t bundle_checksum(const fs::path& dir, int frames, const json& meta_no_checksum,
                         const std::string& tracklets_text) {
    static constexpr std::pair<const char*, const char*> kParts[] = {
        {"frames", "frame"}, {"masks", "mask"}, {"control", "ctrl"}};
    uint64_t h = 0xcbf29ce484222325ull;
    for (int f = 0; f < frames; ++f) {
        for (const auto& [sub, stem] : kParts) {
            const auto bytes = core::read_binary_file(dir / sub / frame_name(stem, f));
            h = fnv1a(bytes.data(), bytes.size(), h);
        }
    }
    h = fnv1a(tracklets_text, h);
    h = fnv1a(meta_no_checksum.dump(), h);
    return h;
}

}  // namespace

json spec_to_json(const SceneSpec& spec) {
    json j;
    j["scene_id"] = spec.scene_id;
    j["seed"] = spec.seed;
    j["arena"] = {{"width", spec.arena_w}, {"height", spec.arena_h}};
    j["gravity"] = {spec.gravity.x, spec.gravity.y};
    j["restitution"] = spec.restitution;
    j["objects"] = json::array();
    for (const auto& o : spec.objects) {
        json jo;
        jo["id"] = o.id;
        jo["shape"] = o.shape == ShapeKind::Disc ? "disc" : "box";
        if (o.shape == ShapeKind::Disc)
            jo["size"] = o.radius;
        else
            jo["size"] = {o.half_extents.x, o.half_extents.y};
        jo["mass"] = o.mass;
        jo["color"] = {int(o.color[0]), int(o.color[1]), int(o.color[2])};
        jo["init_pos"] = {o.init_pos.x, o.init_pos.y};
        jo["init_vel"] = {o.init_vel.x, o.init_vel.y};
        jo["controlled"] = o.controlled;
        j["objects"].push_back(std::move(jo));
    }
    j["entry_events"] = json::array();
    for (const auto& e : spec.entry_events)
        j["entry_events"].push_back({{"object_id", e.object_id}, {"entry_frame", e.entry_frame}});
    return j;
}

SceneSpec spec_from_json(const json& j) {
    SceneSpec spec;
    spec.scene_id = j.at("scene_id").get<std::string>();
    spec.seed = j.at("seed").get<uint64_t>();
    spec.arena_w = j.at("arena").at("width").get<double>();
    spec.arena_h = j.at("arena").at("height").get<double>();
    spec.gravity = {j.at("gravity").at(0).get<double>(), j.at("gravity").at(1).get<double>()};
    spec.restitution = j.at("restitution").get<double>();
    for (const auto& jo : j.at("objects")) {
        ObjectSpec o;
        o.id = jo.at("id").get<int>();
        o.shape = jo.at("shape").get<std::string>() == "box" ? ShapeKind::Box : ShapeKind::Disc;
        if (o.shape == ShapeKind::Disc)
            o.radius = jo.at("size").get<double>();
        else
            o.half_extents = {jo.at("size").at(0).get<double>(), jo.at("size").at(1).get<double>()};
        o.mass = jo.at("mass").get<double>();
        o.color = {uint8_t(jo.at("color").at(0).get<int>()), uint8_t(jo.at("color").at(1).get<int>()),
                   uint8_t(jo.at("color").at(2).get<int>())};
        o.init_pos = {jo.at("init_pos").at(0).get<double>(), jo.at("init_pos").at(1).get<double>()};
        o.init_vel = {jo.at("init_vel").at(0).get<double>(), jo.at("init_vel").at(1).get<double>()};
        o.controlled = jo.at("controlled").get<bool>();
        spec.objects.push_back(o);
    }
    for (const auto& je : j.value("entry_events", json::array()))
        spec.entry_events.push_back(
            {je.at("object_id").get<int>(), je.at("entry_frame").get<int>()});
    return spec;
}

void export_scene(const std::string& dir_s, const SceneBundle& bundle) {
    const fs::path dir(dir_s);
    fs::create_directories(dir / "frames");
    fs::create_directories(dir / "masks");
    fs::create_directories(dir / "control");

    const int n = bundle.video.num_frames();
    const int H = bundle.height, W = bundle.width;

    std::vector<std::array<uint8_t, 3>> palette(256, {0, 0, 0});
    for (const auto& o : bundle.spec.objects)
        palette[size_t(o.id)] = {o.color[0], o.color[1], o.color[2]};
    int max_id = 0;
    for (const auto& o : bundle.spec.objects) max_id = std::max(max_id, o.id);
    palette.resize(size_t(max_id) + 1);

    for (int f = 0; f < n; ++f) {
        core::write_png_rgb8((dir / "frames" / frame_name("frame", f)).string(),
                             core::frame_to_rgb8(bundle.video.frames, f));
        core::ImageIndexed8 mask;
        mask.width = W;
        mask.height = H;
        mask.indices = bundle.mask_ids[size_t(f)];
        mask.palette = palette;
        core::write_png_indexed8((dir / "masks" / frame_name("mask", f)).string(), mask);
        core::write_png_rgb8((dir / "control" / frame_name("ctrl", f)).string(),
                             core::frame_to_rgb8(bundle.control.frames, f));
    }

    const json jtracks = tracklets_to_json(bundle.tracklets);
    const std::string tracklets_text = jtracks.dump(1);
    core::write_text_file(dir / "tracklets.json", tracklets_text);

    json meta = spec_to_json(bundle.spec);
    meta["fps"] = bundle.video.fps;
    meta["start_frame"] = bundle.start_frame;
    meta["num_frames"] = n;
    meta["height"] = H;
    meta["width"] = W;
    meta["control_mode"] = control_mode_name(bundle.control_mode);
    meta["occlusion"] = bundle.occlusion;
    meta["collisions"] = json::array();
    for (const auto& c : bundle.collisions)
        meta["collisions"].push_back({{"frame", c.frame},
                                      {"ids", {c.id_a, c.id_b}},
                                      {"contact", {c.contact.x, c.contact.y}},
                                      {"impulse", {c.impulse.x, c.impulse.y}}});
    meta["checksum"] = core::hex64(bundle_checksum(dir, n, meta, tracklets_text));
    core::write_text_file(dir / "meta.json", meta.dump(1));
}

SceneBundle import_scene(const std::string& dir_s) {
    const fs::path dir(dir_s);
    if (!fs::exists(dir / "meta.json")) throw SceneIoError("missing meta.json in " + dir_s);

    json meta;
    try {
        meta = json::parse(core::read_text_file(dir / "meta.json"));
    } catch (const std::exception& e) {
        throw SceneIoError("bad meta.json in " + dir_s + ": " + e.what());
    }

    SceneBundle b;
    try {
        b.spec = spec_from_json(meta);
        b.start_frame = meta.at("start_frame").get<int>();
        b.control_mode = control_mode_from_name(meta.at("control_mode").get<std::string>());
        b.occlusion = meta.at("occlusion").get<bool>();
        b.height = meta.at("height").get<int>();
        b.width = meta.at("width").get<int>();
        for (const auto& jc : meta.at("collisions")) {
            CollisionEvent c;
            c.frame = jc.at("frame").get<int>();
            c.id_a = jc.at("ids").at(0).get<int>();
            c.id_b = jc.at("ids").at(1).get<int>();
            c.contact = {jc.at("contact").at(0).get<double>(), jc.at("contact").at(1).get<double>()};
            c.impulse = {jc.at("impulse").at(0).get<double>(), jc.at("impulse").at(1).get<double>()};
            b.collisions.push_back(c);
        }
    } catch (const json::exception& e) {
        throw SceneIoError("meta.json schema mismatch in " + dir_s + ": " + e.what());
    }

    const int n = meta.at("num_frames").get<int>();
    const std::string tracklets_text = core::read_text_file(dir / "tracklets.json");

    json meta_wo = meta;
    meta_wo.erase("checksum");
    const std::string expect = meta.at("checksum").get<std::string>();
    const std::string actual = core::hex64(bundle_checksum(dir, n, meta_wo, tracklets_text));
    if (expect != actual)
        throw SceneIoError("checksum mismatch in " + dir_s + " (expected " + expect + ", got " +
                           actual + ")");

    b.video.fps = meta.at("fps").get<double>();
    b.video.frames = core::Tensor<float>({n, 3, b.height, b.width});
    b.control.fps = b.video.fps;
    b.control.frames = core::Tensor<float>({n, 3, b.height, b.width});
    b.mask_ids.resize(size_t(n));
    for (int f = 0; f < n; ++f) {
        const auto img = core::read_png_rgb8((dir / "frames" / frame_name("frame", f)).string());
        core::rgb8_to_frame(img, b.video.frames, f);
        const auto ctl = core::read_png_rgb8((dir / "control" / frame_name("ctrl", f)).string());
        core::rgb8_to_frame(ctl, b.control.frames, f);
        const auto mask = core::read_png_indexed8((dir / "masks" / frame_name("mask", f)).string());
        b.mask_ids[size_t(f)] = mask.indices;
    }
    b.tracklets = tracklets_from_json(json::parse(tracklets_text));
    return b;
}

core::VideoClip load_scene_video(const std::string& dir_s) {
    const fs::path dir(dir_s);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir / "frames"))
        if (e.path().extension() == ".png") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw SceneIoError("no frames in " + dir_s);

    const auto first = core::read_png_rgb8(files[0].string());
    core::VideoClip clip;
    clip.frames = core::Tensor<float>({int(files.size()), 3, first.height, first.width});
    core::rgb8_to_frame(first, clip.frames, 0);
    for (size_t i = 1; i < files.size(); ++i)
        core::rgb8_to_frame(core::read_png_rgb8(files[i].string()), clip.frames, int(i));
    return clip;
}

}  // namespace interdyn::sim
