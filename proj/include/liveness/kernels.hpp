#pragma once

namespace liveness::kernels {

// Shapes for the conv kernels. Input x is NHWC, weights are {k,k,c_in,c_out},
// output is {n, out_h, out_w, c_out}.
struct ConvShape {
    int n, h, w, c_in, c_out, k, stride, pad;
    int out_h() const { return (h + 2 * pad - k) / stride + 1; }
    int out_w() const { return (w + 2 * pad - k) / stride + 1; }
};

// Serial reference implementations. Every value is produced by one fixed
// summation order; the omp variants below partition work over disjoint
// output elements and keep that order, so serial and parallel results are
// bit-identical for any thread count.
namespace serial {
void conv2d_forward(const double* x, const double* w, const double* b, double* y, const ConvShape& s);
void conv2d_backward_input(const double* gy, const double* w, double* gx, const ConvShape& s);
void conv2d_backward_params(const double* x, const double* gy, double* gw, double* gb, const ConvShape& s);
void dense_forward(const double* x, const double* w, const double* b, double* y, int n, int d_in, int d_out);
void dense_backward_input(const double* gy, const double* w, double* gx, int n, int d_in, int d_out);
void dense_backward_params(const double* x, const double* gy, double* gw, double* gb, int n, int d_in, int d_out);
} // namespace serial

namespace omp {
void conv2d_forward(const double* x, const double* w, const double* b, double* y, const ConvShape& s);
void conv2d_backward_input(const double* gy, const double* w, double* gx, const ConvShape& s);
void conv2d_backward_params(const double* x, const double* gy, double* gw, double* gb, const ConvShape& s);
void dense_forward(const double* x, const double* w, const double* b, double* y, int n, int d_in, int d_out);
void dense_backward_input(const double* gy, const double* w, double* gx, int n, int d_in, int d_out);
void dense_backward_params(const double* x, const double* gy, double* gw, double* gb, int n, int d_in, int d_out);
} // namespace omp

// Global execution setting: 1 = serial reference path, 0 = all available
// cores, k > 1 = that many threads.
void set_num_threads(int threads);
int num_threads();
bool use_parallel();

// Dispatch to serial:: or omp:: based on the setting above.
void conv2d_forward(const double* x, const double* w, const double* b, double* y, const ConvShape& s);
void conv2d_backward_input(const double* gy, const double* w, double* gx, const ConvShape& s);
void conv2d_backward_params(const double* x, const double* gy, double* gw, double* gb, const ConvShape& s);
void dense_forward(const double* x, const double* w, const double* b, double* y, int n, int d_in, int d_out);
void dense_backward_input(const double* gy, const double* w, double* gx, int n, int d_in, int d_out);
void dense_backward_params(const double* x, const double* gy, double* gw, double* gb, int n, int d_in, int d_out);

} // namespace liveness::kernels
