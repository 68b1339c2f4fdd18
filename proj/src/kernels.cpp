#include "qrelax/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace qrelax {

bool avx2_available() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const Kernels& resolve() {
    const char* env = std::getenv("QRELAX_KERNELS");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return scalar_kernels();
#if defined(__x86_64__)
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return avx2_kernels();
#endif
        return scalar_kernels();
    }
#if defined(__x86_64__)
    if (avx2_available()) return avx2_kernels();
#endif
    return scalar_kernels();
}

} // namespace

const Kernels& kernels() {
    static const Kernels& k = resolve();
    return k;
}

} // namespace qrelax
