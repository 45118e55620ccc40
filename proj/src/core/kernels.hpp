#pragma once

#include "core/tensor.hpp"

// Hot numeric kernels, OpenMP-parallel over independent output slices.
// Every output element is accumulated by exactly one thread in a fixed
// index order, so results are bitwise identical for any thread count.
// Serial reference versions live in kernels_ref.hpp.

namespace interdyn::kern {

using core::Tensor;

inline int conv_out(int in, int k, int stride, int pad) {
    return (in + 2 * pad - k) / stride + 1;
}

// y[N,OC,OH,OW] = x[N,IC,H,W] * w[OC,IC,K,K] + b. Overwrites y.
template <typename T>
void conv2d_fwd(Tensor<T>& y, const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>* b,
                int stride, int pad) {
    const int N = x.dim(0), IC = x.dim(1), H = x.dim(2), W = x.dim(3);
    const int OC = w.dim(0), K = w.dim(2);
    const int OH = conv_out(H, K, stride, pad), OW = conv_out(W, K, stride, pad);
    y.shape = {N, OC, OH, OW};
    y.data.assign(size_t(N) * OC * OH * OW, T(0));

#pragma omp parallel for collapse(2) schedule(static)
    for (int n = 0; n < N; ++n) {
        for (int oc = 0; oc < OC; ++oc) {
            T* yp = &y.at(n, oc, 0, 0);
            if (b) {
                const T bv = (*b)[size_t(oc)];
                for (int i = 0; i < OH * OW; ++i) yp[i] = bv;
            }
            for (int ic = 0; ic < IC; ++ic) {
                const T* xp = &x.at(n, ic, 0, 0);
                for (int kh = 0; kh < K; ++kh) {
                    for (int kw = 0; kw < K; ++kw) {
                        const T wv = w.at(oc, ic, kh, kw);
                        for (int oh = 0; oh < OH; ++oh) {
                            const int ih = oh * stride + kh - pad;
                            if (ih < 0 || ih >= H) continue;
                            // valid ow range keeps iw inside [0, W)
                            int ow0 = 0, ow1 = OW;
                            while (ow0 < OW && ow0 * stride + kw - pad < 0) ++ow0;
                            while (ow1 > ow0 && (ow1 - 1) * stride + kw - pad >= W) --ow1;
                            T* yrow = yp + size_t(oh) * OW;
                            const T* xrow = xp + size_t(ih) * W + (ow0 * stride + kw - pad);
                            if (stride == 1) {
                                for (int ow = ow0; ow < ow1; ++ow)
                                    yrow[ow] += wv * xrow[ow - ow0];
                            } else {
                                for (int ow = ow0; ow < ow1; ++ow)
                                    yrow[ow] += wv * xrow[size_t(ow - ow0) * stride];
                            }
                        }
                    }
                }
            }
        }
    }
}

// gx[N,IC,H,W] from gy[N,OC,OH,OW]; overwrites gx.
template <typename T>
void conv2d_bwd_input(Tensor<T>& gx, const Tensor<T>& gy, const Tensor<T>& w, int stride,
                      int pad, int H, int W) {
    const int N = gy.dim(0), OC = gy.dim(1), OH = gy.dim(2), OW = gy.dim(3);
    const int IC = w.dim(1), K = w.dim(2);
    gx.shape = {N, IC, H, W};
    gx.data.assign(size_t(N) * IC * H * W, T(0));

#pragma omp parallel for collapse(2) schedule(static)
    for (int n = 0; n < N; ++n) {
        for (int ic = 0; ic < IC; ++ic) {
            T* gxp = &gx.at(n, ic, 0, 0);
            for (int oc = 0; oc < OC; ++oc) {
                const T* gyp = &gy.at(n, oc, 0, 0);
                for (int kh = 0; kh < K; ++kh) {
                    for (int kw = 0; kw < K; ++kw) {
                        const T wv = w.at(oc, ic, kh, kw);
                        for (int oh = 0; oh < OH; ++oh) {
                            const int ih = oh * stride + kh - pad;
                            if (ih < 0 || ih >= H) continue;
                            int ow0 = 0, ow1 = OW;
                            while (ow0 < OW && ow0 * stride + kw - pad < 0) ++ow0;
                            while (ow1 > ow0 && (ow1 - 1) * stride + kw - pad >= W) --ow1;
                            const T* gyrow = gyp + size_t(oh) * OW;
                            T* gxrow = gxp + size_t(ih) * W + (ow0 * stride + kw - pad);
                            if (stride == 1) {
                                for (int ow = ow0; ow < ow1; ++ow)
                                    gxrow[ow - ow0] += wv * gyrow[ow];
                            } else {
                                for (int ow = ow0; ow < ow1; ++ow)
                                    gxrow[size_t(ow - ow0) * stride] += wv * gyrow[ow];
                            }
                        }
                    }
                }
            }
        }
    }
}

// Accumulates into gw[OC,IC,K,K] and gb[OC]. Uses an im2col scratch per
// sample so the inner update is a contiguous axpy over the patch row.
template <typename T>
void conv2d_bwd_params(Tensor<T>& gw, Tensor<T>* gb, const Tensor<T>& gy, const Tensor<T>& x,
                       int stride, int pad) {
    const int N = x.dim(0), IC = x.dim(1), H = x.dim(2), W = x.dim(3);
    const int OC = gy.dim(1), OH = gy.dim(2), OW = gy.dim(3);
    const int K = gw.dim(2);
    const int patch = IC * K * K;
    const int npos = OH * OW;

    std::vector<T> col(size_t(npos) * patch);
    for (int n = 0; n < N; ++n) {
#pragma omp parallel for schedule(static)
        for (int pos = 0; pos < npos; ++pos) {
            const int oh = pos / OW, ow = pos % OW;
            T* row = col.data() + size_t(pos) * patch;
            int idx = 0;
            for (int ic = 0; ic < IC; ++ic) {
                const T* xp = &x.at(n, ic, 0, 0);
                for (int kh = 0; kh < K; ++kh) {
                    const int ih = oh * stride + kh - pad;
                    for (int kw = 0; kw < K; ++kw, ++idx) {
                        const int iw = ow * stride + kw - pad;
                        row[idx] = (ih >= 0 && ih < H && iw >= 0 && iw < W)
                                       ? xp[size_t(ih) * W + iw]
                                       : T(0);
                    }
                }
            }
        }
#pragma omp parallel for schedule(static)
        for (int oc = 0; oc < OC; ++oc) {
            T* gwrow = gw.ptr() + size_t(oc) * patch;
            const T* gyp = &gy.at(n, oc, 0, 0);
            T bacc = 0;
            for (int pos = 0; pos < npos; ++pos) {
                const T g = gyp[pos];
                bacc += g;
                const T* row = col.data() + size_t(pos) * patch;
                for (int i = 0; i < patch; ++i) gwrow[i] += g * row[i];
            }
            if (gb) (*gb)[size_t(oc)] += bacc;
        }
    }
}

// C[M,N] = A[M,K] * B[K,N] (+ C if accumulate). i-k-j order: the j loop
// vectorizes while each C element keeps a strict k-ascending sum.
template <typename T>
void gemm(T* C, const T* A, const T* B, int M, int K, int N, bool accumulate = false) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < M; ++i) {
        T* crow = C + size_t(i) * N;
        if (!accumulate)
            for (int j = 0; j < N; ++j) crow[j] = T(0);
        const T* arow = A + size_t(i) * K;
        for (int k = 0; k < K; ++k) {
            const T a = arow[k];
            const T* brow = B + size_t(k) * N;
            for (int j = 0; j < N; ++j) crow[j] += a * brow[j];
        }
    }
}

}  // namespace interdyn::kern
