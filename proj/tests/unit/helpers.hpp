#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "seqnet/core.hpp"

namespace testing {

// Flat ids of the fanals with the given letters, A = 0.
inline std::vector<seqnet::FanalId> letters(const std::string& s) {
    std::vector<seqnet::FanalId> out;
    for (char ch : s) out.push_back(static_cast<seqnet::FanalId>(ch - 'A'));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace testing
