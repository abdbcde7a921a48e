#include "causalabs/kernels.hpp"

namespace causalabs::kernels {
namespace {

void scale_scalar(double* dst, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] *= s;
}

void mul_scalar(double* dst, const double* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] *= src[i];
}

void add_scalar(double* dst, const double* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

double sum_scalar(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i];
    return s;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void matmul_scalar(double* c, const double* a, const double* b,
                   std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
        for (std::size_t p = 0; p < k; ++p) {
            const double aip = a[i * k + p];
            if (aip == 0.0) continue;
            const double* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
        }
    }
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar", scale_scalar, mul_scalar, add_scalar,
        sum_scalar, dot_scalar, matmul_scalar,
    };
    return ops;
}

} // namespace causalabs::kernels
