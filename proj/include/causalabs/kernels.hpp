#pragma once

#include <cstddef>
#include <string>

namespace causalabs::kernels {

// Dense double-precision primitives behind the inference and measure algebra.
// Every op has a scalar reference implementation and may have a SIMD variant;
// the active set is chosen once at startup (see select()).
struct Ops {
    const char* name;

    // dst[i] *= s
    void (*scale)(double* dst, double s, std::size_t n);
    // dst[i] *= src[i]
    void (*mul)(double* dst, const double* src, std::size_t n);
    // dst[i] += src[i]
    void (*add)(double* dst, const double* src, std::size_t n);
    double (*sum)(const double* a, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    // C[m x n] = A[m x k] * B[k x n], row-major, C overwritten
    void (*matmul)(double* c, const double* a, const double* b,
                   std::size_t m, std::size_t k, std::size_t n);
};

const Ops& scalar_ops();

// AVX2+FMA variants; null when the build or the CPU lacks them.
const Ops* avx2_ops();

// Active op set. Defaults to the widest supported variant; the
// CAUSALABS_KERNELS environment variable ("scalar" or "avx2") overrides.
const Ops& active();

// Force a variant by name; throws std::invalid_argument for unknown or
// unsupported names. Intended for tests and the CLI.
void select(const std::string& name);

} // namespace causalabs::kernels
