#include <cstdlib>
#include <cstring>

#include "kernels.hpp"

namespace ssiss::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

struct Selection {
    const Ops* ops;
    const char* name;
};

Selection select() {
    const char* env = std::getenv("SSISS_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0) return {&scalar_ops(), "scalar"};
    if (env && std::strcmp(env, "avx2") == 0 && avx2_supported()) return {&avx2_ops(), "avx2"};
    if (avx2_supported()) return {&avx2_ops(), "avx2"};
    return {&scalar_ops(), "scalar"};
}

const Selection& selection() {
    static const Selection s = select();
    return s;
}

}  // namespace

const Ops& active() { return *selection().ops; }
const char* active_name() { return selection().name; }

}  // namespace ssiss::kernels
