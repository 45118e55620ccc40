#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "core/png_io.hpp"
#include "core/tensor.hpp"

namespace interdyn::core {

// A clip is a (N, 3, H, W) float tensor in [0, 1]; the model rescales to
// [-1, 1] internally.
struct VideoClip {
    Tensor<float> frames;
    double fps = 7.0;
    int first_frame_index = 0;

    int num_frames() const { return frames.empty() ? 0 : frames.dim(0); }
    int height() const { return frames.dim(2); }
    int width() const { return frames.dim(3); }

    void validate() const {
        if (frames.ndim() != 4 || frames.dim(1) != 3)
            throw std::runtime_error("video clip must be (N,3,H,W)");
        if (frames.dim(0) < 2) throw std::runtime_error("video clip needs at least 2 frames");
        if (fps <= 0) throw std::runtime_error("fps must be positive");
        if (!frames.all_finite()) throw std::runtime_error("video clip has nonfinite values");
    }
};

inline ImageRgb8 frame_to_rgb8(const Tensor<float>& frames, int n) {
    const int h = frames.dim(2), w = frames.dim(3);
    ImageRgb8 img;
    img.width = w;
    img.height = h;
    img.pixels.resize(size_t(w) * h * 3);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c) {
                float v = frames.at(n, c, y, x);
                v = std::clamp(v, 0.0f, 1.0f);
                img.pixels[(size_t(y) * w + x) * 3 + c] = uint8_t(std::lround(v * 255.0f));
            }
    return img;
}

inline void rgb8_to_frame(const ImageRgb8& img, Tensor<float>& frames, int n) {
    const int h = frames.dim(2), w = frames.dim(3);
    if (img.width != w || img.height != h) throw std::runtime_error("frame size mismatch");
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c)
                frames.at(n, c, y, x) = float(img.pixels[(size_t(y) * w + x) * 3 + c]) / 255.0f;
}

}  // namespace interdyn::core
