#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "partdet/error.hpp"

namespace partdet {

/// Subsets of the index set [k] = {1,..,k} as bitmasks; bit i-1 is index i.
using SubsetMask = std::uint32_t;

inline constexpr int kMaxIndices = 24;

inline int mask_size(SubsetMask m) { return std::popcount(m); }
inline bool mask_has(SubsetMask m, int index1) { return (m >> (index1 - 1)) & 1u; }
inline SubsetMask full_mask(int k) { return (k == 32) ? ~0u : ((1u << k) - 1u); }

/// 1-based indices in increasing order.
inline std::vector<int> mask_indices(SubsetMask m) {
    std::vector<int> out;
    for (int i = 1; m != 0; ++i, m >>= 1)
        if (m & 1u) out.push_back(i);
    return out;
}

inline SubsetMask mask_from_indices(const std::vector<int>& indices1, int k) {
    SubsetMask m = 0;
    for (int i : indices1) {
        if (i < 1 || i > k) fail("BadIndex", "index " + std::to_string(i) + " outside [1," + std::to_string(k) + "]");
        m |= (1u << (i - 1));
    }
    return m;
}

/// "{1,3}" with 1-based indices; "{}" for the empty mask.
inline std::string mask_str(SubsetMask m) {
    std::string s = "{";
    bool first = true;
    for (int i : mask_indices(m)) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
    }
    return s + "}";
}

/// Parses "{1,3}" (spaces tolerated); indices must be in [1, k], distinct.
inline SubsetMask parse_mask(const std::string& text, int k) {
    std::size_t a = text.find('{'), b = text.find('}');
    if (a == std::string::npos || b == std::string::npos || b < a)
        fail("BadMask", "expected '{i,j,..}', got '" + text + "'");
    SubsetMask m = 0;
    std::string body = text.substr(a + 1, b - a - 1);
    std::size_t pos = 0;
    while (pos < body.size()) {
        while (pos < body.size() && (body[pos] == ' ' || body[pos] == ',')) ++pos;
        if (pos >= body.size()) break;
        std::size_t end = pos;
        while (end < body.size() && body[end] >= '0' && body[end] <= '9') ++end;
        if (end == pos) fail("BadMask", "expected index in '" + text + "'");
        int idx = std::stoi(body.substr(pos, end - pos));
        if (idx < 1 || idx > k)
            fail("BadMask", "index " + std::to_string(idx) + " outside [1," + std::to_string(k) + "] in '" + text + "'");
        if (mask_has(m, idx)) fail("BadMask", "duplicate index in '" + text + "'");
        m |= (1u << (idx - 1));
        pos = end;
    }
    return m;
}

}  // namespace partdet
