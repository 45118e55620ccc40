#pragma once

#include "core/tensor.hpp"

// Plain-loop reference kernels. Single-threaded, written independently of
// the OpenMP versions; tests and the kernel benchmark compare the two.

namespace interdyn::kern::ref {

using core::Tensor;

template <typename T>
void conv2d_fwd(Tensor<T>& y, const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>* b,
                int stride, int pad) {
    const int N = x.dim(0), IC = x.dim(1), H = x.dim(2), W = x.dim(3);
    const int OC = w.dim(0), K = w.dim(2);
    const int OH = (H + 2 * pad - K) / stride + 1;
    const int OW = (W + 2 * pad - K) / stride + 1;
    y.shape = {N, OC, OH, OW};
    y.data.assign(size_t(N) * OC * OH * OW, T(0));
    for (int n = 0; n < N; ++n)
        for (int oc = 0; oc < OC; ++oc) {
            if (b)
                for (int oh = 0; oh < OH; ++oh)
                    for (int ow = 0; ow < OW; ++ow) y.at(n, oc, oh, ow) = (*b)[size_t(oc)];
            for (int ic = 0; ic < IC; ++ic)
                for (int kh = 0; kh < K; ++kh)
                    for (int kw = 0; kw < K; ++kw) {
                        const T wv = w.at(oc, ic, kh, kw);
                        for (int oh = 0; oh < OH; ++oh) {
                            const int ih = oh * stride + kh - pad;
                            if (ih < 0 || ih >= H) continue;
                            for (int ow = 0; ow < OW; ++ow) {
                                const int iw = ow * stride + kw - pad;
                                if (iw < 0 || iw >= W) continue;
                                y.at(n, oc, oh, ow) += wv * x.at(n, ic, ih, iw);
                            }
                        }
                    }
        }
}

template <typename T>
void conv2d_bwd_input(Tensor<T>& gx, const Tensor<T>& gy, const Tensor<T>& w, int stride,
                      int pad, int H, int W) {
    const int N = gy.dim(0), OC = gy.dim(1), OH = gy.dim(2), OW = gy.dim(3);
    const int IC = w.dim(1), K = w.dim(2);
    gx.shape = {N, IC, H, W};
    gx.data.assign(size_t(N) * IC * H * W, T(0));
    for (int n = 0; n < N; ++n)
        for (int ic = 0; ic < IC; ++ic)
            for (int oc = 0; oc < OC; ++oc)
                for (int kh = 0; kh < K; ++kh)
                    for (int kw = 0; kw < K; ++kw) {
                        const T wv = w.at(oc, ic, kh, kw);
                        for (int oh = 0; oh < OH; ++oh) {
                            const int ih = oh * stride + kh - pad;
                            if (ih < 0 || ih >= H) continue;
                            for (int ow = 0; ow < OW; ++ow) {
                                const int iw = ow * stride + kw - pad;
                                if (iw < 0 || iw >= W) continue;
                                gx.at(n, ic, ih, iw) += wv * gy.at(n, oc, oh, ow);
                            }
                        }
                    }
}

template <typename T>
void conv2d_bwd_params(Tensor<T>& gw, Tensor<T>* gb, const Tensor<T>& gy, const Tensor<T>& x,
                       int stride, int pad) {
    const int N = x.dim(0), IC = x.dim(1), H = x.dim(2), W = x.dim(3);
    const int OC = gy.dim(1), OH = gy.dim(2), OW = gy.dim(3);
    const int K = gw.dim(2);
    for (int n = 0; n < N; ++n) {
        for (int oc = 0; oc < OC; ++oc) {
            for (int oh = 0; oh < OH; ++oh)
                for (int ow = 0; ow < OW; ++ow) {
                    const T g = gy.at(n, oc, oh, ow);
                    if (gb) (*gb)[size_t(oc)] += g;
                    for (int ic = 0; ic < IC; ++ic)
                        for (int kh = 0; kh < K; ++kh)
                            for (int kw = 0; kw < K; ++kw) {
                                const int ih = oh * stride + kh - pad;
                                const int iw = ow * stride + kw - pad;
                                if (ih < 0 || ih >= H || iw < 0 || iw >= W) continue;
                                gw.at(oc, ic, kh, kw) += g * x.at(n, ic, ih, iw);
                            }
                }
        }
    }
}

template <typename T>
void gemm(T* C, const T* A, const T* B, int M, int K, int N, bool accumulate = false) {
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < N; ++j) {
            T acc = accumulate ? C[size_t(i) * N + j] : T(0);
            for (int k = 0; k < K; ++k) acc += A[size_t(i) * K + k] * B[size_t(k) * N + j];
            C[size_t(i) * N + j] = acc;
        }
}

}  // namespace interdyn::kern::ref
