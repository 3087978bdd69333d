#include <stdexcept>

#include "poolgame/kernels/revision.hpp"

namespace poolgame::kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

ReviseFn select(Impl impl) {
    switch (impl) {
        case Impl::Scalar:
            return revise_scalar;
        case Impl::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
            if (avx2_available()) return revise_avx2;
#endif
            throw std::runtime_error("avx2 revision kernel requested but not supported here");
        case Impl::Auto:
        default:
#if defined(__x86_64__) || defined(_M_X64)
            if (avx2_available()) return revise_avx2;
#endif
            return revise_scalar;
    }
}

const char* name(ReviseFn fn) {
#if defined(__x86_64__) || defined(_M_X64)
    if (fn == revise_avx2) return "avx2";
#endif
    return fn == revise_scalar ? "scalar" : "unknown";
}

}  // namespace poolgame::kernels
