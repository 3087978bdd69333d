#pragma once

#include <cstdint>
#include <span>

#include "poolgame/rng.hpp"

namespace poolgame::kernels {

enum class Impl { Auto, Scalar, Avx2 };

// One synchronous revision round over the miner assignment array.
// switch_prob is the pools x pools row-major table P[current][candidate],
// frozen at the state the round started from.
struct RoundContext {
    std::uint64_t seed = 0;
    std::uint64_t round = 0;
    std::uint32_t pools = 0;
    const double* switch_prob = nullptr;
};

// Per-miner decision, the single source of truth for every backend. Miner i
// draws its Philox block at counter (round_lo, round_hi, i, 0): word 0 picks
// the candidate pool, words 2:3 form the uniform acceptance threshold.
inline void revise_one(std::uint32_t* assignments, std::size_t i, const RoundContext& ctx) {
    const auto r = philox::block({static_cast<std::uint32_t>(ctx.round),
                                  static_cast<std::uint32_t>(ctx.round >> 32),
                                  static_cast<std::uint32_t>(i), 0u},
                                 ctx.seed);
    const std::uint32_t candidate = philox::bounded(r[0], ctx.pools);
    const double u = philox::uniform52(r[2], r[3]);
    if (u < ctx.switch_prob[assignments[i] * ctx.pools + candidate]) {
        assignments[i] = candidate;
    }
}

using ReviseFn = void (*)(std::span<std::uint32_t>, const RoundContext&);

void revise_scalar(std::span<std::uint32_t> assignments, const RoundContext& ctx);
#if defined(__x86_64__) || defined(_M_X64)
void revise_avx2(std::span<std::uint32_t> assignments, const RoundContext& ctx);
#endif

bool avx2_available();
// Runtime CPU dispatch. Throws std::runtime_error if a specific backend is
// requested on a host that lacks it.
ReviseFn select(Impl impl = Impl::Auto);
const char* name(ReviseFn fn);

}  // namespace poolgame::kernels
