#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/rng.hpp"
#include "core/tensor.hpp"

namespace interdyn::nn {

using core::Rng;
using core::Tensor;

template <typename T>
struct Param {
    Tensor<T> v;
    Tensor<T> g;
    bool trainable = true;

    void init(std::vector<int> shape) {
        v = Tensor<T>(shape);
        g = Tensor<T>(std::move(shape));
    }

    void init_randn(std::vector<int> shape, Rng& rng, double stddev) {
        v = Tensor<T>::randn(shape, rng, stddev);
        g = Tensor<T>(std::move(shape));
    }
};

// Named references to every parameter of a model, in a fixed traversal
// order. The optimizer, serializer and copier all walk this list.
template <typename T>
using ParamRefs = std::vector<std::pair<std::string, Param<T>*>>;

template <typename T>
void zero_grads(ParamRefs<T>& refs) {
    for (auto& [name, p] : refs) p->g.zero();
}

template <typename T>
size_t param_count(const ParamRefs<T>& refs) {
    size_t n = 0;
    for (const auto& [name, p] : refs) n += p->v.numel();
    return n;
}

template <typename T>
double grad_norm(const ParamRefs<T>& refs, bool trainable_only = true) {
    double s = 0;
    for (const auto& [name, p] : refs) {
        if (trainable_only && !p->trainable) continue;
        for (T g : p->g.data) s += double(g) * double(g);
    }
    return std::sqrt(s);
}

template <typename T>
void set_trainable(ParamRefs<T>& refs, bool trainable) {
    for (auto& [name, p] : refs) p->trainable = trainable;
}

}  // namespace interdyn::nn
