#include "affiq/rng.hpp"

namespace affiq {

std::vector<double> rng_draw_gaussian(RngStream& s, std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(s.gaussian());
    return out;
}

}  // namespace affiq
