#include "causalabs/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace causalabs::kernels {
namespace {

const Ops* g_active = nullptr;

const Ops* pick_default() {
    if (const char* env = std::getenv("CAUSALABS_KERNELS")) {
        std::string want(env);
        if (want == "scalar") return &scalar_ops();
        if (want == "avx2" && avx2_ops()) return avx2_ops();
        // Unknown or unsupported request falls through to auto-detection.
    }
    if (const Ops* v = avx2_ops()) return v;
    return &scalar_ops();
}

} // namespace

const Ops& active() {
    if (!g_active) g_active = pick_default();
    return *g_active;
}

void select(const std::string& name) {
    if (name == "scalar") {
        g_active = &scalar_ops();
        return;
    }
    if (name == "avx2") {
        if (const Ops* v = avx2_ops()) {
            g_active = v;
            return;
        }
        throw std::invalid_argument("avx2 kernels unavailable on this CPU/build");
    }
    throw std::invalid_argument("unknown kernel variant: " + name);
}

} // namespace causalabs::kernels
