#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

namespace seqnet::detail {

// Calls fn(bit_index) for every set bit of `words` in [begin, end).
template <typename Fn>
inline void for_each_set_bit(std::span<const std::uint64_t> words, std::size_t begin,
                             std::size_t end, Fn&& fn) {
    if (begin >= end) return;
    std::size_t w = begin / 64;
    const std::size_t last = (end - 1) / 64;
    for (; w <= last; ++w) {
        std::uint64_t word = words[w];
        if (w == begin / 64) word &= ~std::uint64_t{0} << (begin % 64);
        if (w == last && end % 64 != 0) word &= ~std::uint64_t{0} >> (64 - end % 64);
        while (word != 0) {
            fn(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
            word &= word - 1;
        }
    }
}

inline std::size_t popcount_range(std::span<const std::uint64_t> words, std::size_t begin,
                                  std::size_t end) {
    if (begin >= end) return 0;
    std::size_t count = 0;
    const std::size_t first = begin / 64;
    const std::size_t last = (end - 1) / 64;
    for (std::size_t w = first; w <= last; ++w) {
        std::uint64_t word = words[w];
        if (w == first) word &= ~std::uint64_t{0} << (begin % 64);
        if (w == last && end % 64 != 0) word &= ~std::uint64_t{0} >> (64 - end % 64);
        count += static_cast<std::size_t>(std::popcount(word));
    }
    return count;
}

}  // namespace seqnet::detail
