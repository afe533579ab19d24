#include "liveness/kernels.hpp"

#include <cstring>

namespace liveness::kernels::serial {

void conv2d_forward(const double* x, const double* w, const double* b, double* y, const ConvShape& s) {
    const int oh_n = s.out_h(), ow_n = s.out_w();
    for (int n = 0; n < s.n; ++n) {
        for (int oh = 0; oh < oh_n; ++oh) {
            for (int ow = 0; ow < ow_n; ++ow) {
                double* yp = y + (((static_cast<long>(n) * oh_n + oh) * ow_n + ow) * s.c_out);
                for (int co = 0; co < s.c_out; ++co) yp[co] = b[co];
                for (int kh = 0; kh < s.k; ++kh) {
                    const int ih = oh * s.stride - s.pad + kh;
                    if (ih < 0 || ih >= s.h) continue;
                    for (int kw = 0; kw < s.k; ++kw) {
                        const int iw = ow * s.stride - s.pad + kw;
                        if (iw < 0 || iw >= s.w) continue;
                        const double* xp = x + (((static_cast<long>(n) * s.h + ih) * s.w + iw) * s.c_in);
                        const double* wp = w + ((static_cast<long>(kh) * s.k + kw) * s.c_in * s.c_out);
                        for (int ci = 0; ci < s.c_in; ++ci) {
                            const double xv = xp[ci];
                            const double* wc = wp + static_cast<long>(ci) * s.c_out;
                            for (int co = 0; co < s.c_out; ++co) yp[co] += xv * wc[co];
                        }
                    }
                }
            }
        }
    }
}

void conv2d_backward_input(const double* gy, const double* w, double* gx, const ConvShape& s) {
    const int oh_n = s.out_h(), ow_n = s.out_w();
    for (int n = 0; n < s.n; ++n) {
        for (int ih = 0; ih < s.h; ++ih) {
            for (int iw = 0; iw < s.w; ++iw) {
                double* gxp = gx + (((static_cast<long>(n) * s.h + ih) * s.w + iw) * s.c_in);
                for (int ci = 0; ci < s.c_in; ++ci) gxp[ci] = 0.0;
                for (int kh = 0; kh < s.k; ++kh) {
                    const int ohs = ih + s.pad - kh;
                    if (ohs % s.stride != 0) continue;
                    const int oh = ohs / s.stride;
                    if (oh < 0 || oh >= oh_n) continue;
                    for (int kw = 0; kw < s.k; ++kw) {
                        const int ows = iw + s.pad - kw;
                        if (ows % s.stride != 0) continue;
                        const int ow = ows / s.stride;
                        if (ow < 0 || ow >= ow_n) continue;
                        const double* gyp = gy + (((static_cast<long>(n) * oh_n + oh) * ow_n + ow) * s.c_out);
                        const double* wp = w + ((static_cast<long>(kh) * s.k + kw) * s.c_in * s.c_out);
                        for (int ci = 0; ci < s.c_in; ++ci) {
                            const double* wc = wp + static_cast<long>(ci) * s.c_out;
                            double acc = 0.0;
                            for (int co = 0; co < s.c_out; ++co) acc += gyp[co] * wc[co];
                            gxp[ci] += acc;
                        }
                    }
                }
            }
        }
    }
}

// Gather form: one pass per weight element over all the positions that
// touch it. This keeps the accumulation order fixed per element, which is
// what lets the omp variant partition over weights without changing sums.
void conv2d_backward_params(const double* x, const double* gy, double* gw, double* gb, const ConvShape& s) {
    const int oh_n = s.out_h(), ow_n = s.out_w();
    for (int kh = 0; kh < s.k; ++kh) {
        for (int kw = 0; kw < s.k; ++kw) {
            for (int ci = 0; ci < s.c_in; ++ci) {
                for (int co = 0; co < s.c_out; ++co) {
                    double acc = 0.0;
                    for (int n = 0; n < s.n; ++n) {
                        for (int oh = 0; oh < oh_n; ++oh) {
                            const int ih = oh * s.stride - s.pad + kh;
                            if (ih < 0 || ih >= s.h) continue;
                            for (int ow = 0; ow < ow_n; ++ow) {
                                const int iw = ow * s.stride - s.pad + kw;
                                if (iw < 0 || iw >= s.w) continue;
                                acc += x[((static_cast<long>(n) * s.h + ih) * s.w + iw) * s.c_in + ci] *
                                       gy[((static_cast<long>(n) * oh_n + oh) * ow_n + ow) * s.c_out + co];
                            }
                        }
                    }
                    gw[((static_cast<long>(kh) * s.k + kw) * s.c_in + ci) * s.c_out + co] = acc;
                }
            }
        }
    }
    for (int co = 0; co < s.c_out; ++co) {
        double acc = 0.0;
        for (int n = 0; n < s.n; ++n)
            for (int oh = 0; oh < oh_n; ++oh)
                for (int ow = 0; ow < ow_n; ++ow)
                    acc += gy[((static_cast<long>(n) * oh_n + oh) * ow_n + ow) * s.c_out + co];
        gb[co] = acc;
    }
}

void dense_forward(const double* x, const double* w, const double* b, double* y, int n, int d_in, int d_out) {
    for (int i = 0; i < n; ++i) {
        double* yp = y + static_cast<long>(i) * d_out;
        for (int o = 0; o < d_out; ++o) yp[o] = b[o];
        const double* xp = x + static_cast<long>(i) * d_in;
        for (int j = 0; j < d_in; ++j) {
            const double xv = xp[j];
            const double* wp = w + static_cast<long>(j) * d_out;
            for (int o = 0; o < d_out; ++o) yp[o] += xv * wp[o];
        }
    }
}

void dense_backward_input(const double* gy, const double* w, double* gx, int n, int d_in, int d_out) {
    for (int i = 0; i < n; ++i) {
        const double* gyp = gy + static_cast<long>(i) * d_out;
        double* gxp = gx + static_cast<long>(i) * d_in;
        for (int j = 0; j < d_in; ++j) {
            const double* wp = w + static_cast<long>(j) * d_out;
            double acc = 0.0;
            for (int o = 0; o < d_out; ++o) acc += gyp[o] * wp[o];
            gxp[j] = acc;
        }
    }
}

void dense_backward_params(const double* x, const double* gy, double* gw, double* gb, int n, int d_in, int d_out) {
    for (int j = 0; j < d_in; ++j) {
        double* gwp = gw + static_cast<long>(j) * d_out;
        for (int o = 0; o < d_out; ++o) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += x[static_cast<long>(i) * d_in + j] * gy[static_cast<long>(i) * d_out + o];
            gwp[o] = acc;
        }
    }
    for (int o = 0; o < d_out; ++o) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += gy[static_cast<long>(i) * d_out + o];
        gb[o] = acc;
    }
}

} // namespace liveness::kernels::serial
