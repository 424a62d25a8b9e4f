#include "nullgeo/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace nullgeo::kernels {

#ifndef NULLGEO_BUILD_AVX2
const Ops* avx2() { return nullptr; }
#endif

namespace {

const Ops& select() {
    const char* env = std::getenv("NULLGEO_KERNEL");
    if (env && std::strcmp(env, "scalar") == 0) return scalar();
    const Ops* v = avx2();
    if (env && std::strcmp(env, "avx2") == 0) return v ? *v : scalar();
#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
    if (v && __builtin_cpu_supports("avx2")) return *v;
#endif
    return scalar();
}

}  // namespace

const Ops& active() {
    static const Ops& ops = select();
    return ops;
}

}  // namespace nullgeo::kernels
