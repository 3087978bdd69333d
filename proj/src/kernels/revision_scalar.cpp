#include "poolgame/kernels/revision.hpp"

namespace poolgame::kernels {

void revise_scalar(std::span<std::uint32_t> assignments, const RoundContext& ctx) {
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        revise_one(assignments.data(), i, ctx);
    }
}

}  // namespace poolgame::kernels
