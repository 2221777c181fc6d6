#pragma once

#include "lvqkit/types.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace lvqkit {

using Rng = std::mt19937_64;

// Independent generator for one (seed, stream...) tuple. Every randomized
// operation draws from its own stream so results do not depend on the order
// in which unrelated work runs.
inline Rng make_rng(Seed seed, std::initializer_list<std::uint64_t> stream = {}) {
    std::vector<std::uint32_t> words;
    words.reserve(2 + 2 * stream.size());
    auto push = [&words](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    for (auto s : stream) push(s);
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

}  // namespace lvqkit
