#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "core/rng.hpp"

namespace interdyn::core {

// Dense row-major tensor. Float for the model pipeline, double where
// tests need finite-difference headroom.
template <typename T>
struct Tensor {
    std::vector<int> shape;
    std::vector<T> data;

    Tensor() = default;
    explicit Tensor(std::vector<int> s) : shape(std::move(s)), data(count(shape), T(0)) {}

    static size_t count(const std::vector<int>& s) {
        size_t n = 1;
        for (int d : s) {
            assert(d >= 0);
            n *= size_t(d);
        }
        return n;
    }

    static Tensor zeros(std::vector<int> s) { return Tensor(std::move(s)); }

    static Tensor full(std::vector<int> s, T v) {
        Tensor t(std::move(s));
        std::fill(t.data.begin(), t.data.end(), v);
        return t;
    }

    static Tensor randn(std::vector<int> s, Rng& rng, double stddev = 1.0) {
        Tensor t(std::move(s));
        for (auto& v : t.data) v = T(rng.normal() * stddev);
        return t;
    }

    size_t numel() const { return data.size(); }
    bool empty() const { return data.empty(); }

    int dim(int i) const { return shape[size_t(i)]; }
    int ndim() const { return int(shape.size()); }

    T* ptr() { return data.data(); }
    const T* ptr() const { return data.data(); }

    T& operator[](size_t i) { return data[i]; }
    const T& operator[](size_t i) const { return data[i]; }

    // (n, c, h, w) indexing for 4-D tensors.
    T& at(int n, int c, int h, int w) {
        return data[((size_t(n) * shape[1] + c) * shape[2] + h) * shape[3] + w];
    }
    const T& at(int n, int c, int h, int w) const {
        return data[((size_t(n) * shape[1] + c) * shape[2] + h) * shape[3] + w];
    }

    void zero() { std::fill(data.begin(), data.end(), T(0)); }

    void reshape(std::vector<int> s) {
        if (count(s) != numel()) throw std::runtime_error("reshape: element count mismatch");
        shape = std::move(s);
    }

    bool same_shape(const Tensor& o) const { return shape == o.shape; }

    Tensor& operator+=(const Tensor& o) {
        assert(same_shape(o));
        for (size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
        return *this;
    }

    Tensor& operator*=(T s) {
        for (auto& v : data) v *= s;
        return *this;
    }

    bool all_finite() const {
        for (T v : data)
            if (!std::isfinite(double(v))) return false;
        return true;
    }

    T max_abs() const {
        T m = 0;
        for (T v : data) m = std::max(m, std::abs(v));
        return m;
    }
};

template <typename T>
double max_abs_diff(const Tensor<T>& a, const Tensor<T>& b) {
    assert(a.same_shape(b));
    double m = 0;
    for (size_t i = 0; i < a.numel(); ++i) m = std::max(m, std::abs(double(a[i]) - double(b[i])));
    return m;
}

template <typename T>
bool bitwise_equal(const Tensor<T>& a, const Tensor<T>& b) {
    if (!a.same_shape(b)) return false;
    for (size_t i = 0; i < a.numel(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace interdyn::core
