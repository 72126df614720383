// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace nc {

using BigInt = boost::multiprecision::cpp_int;
using u128 = unsigned __int128;
using i128 = __int128;

/// Residue of `v` in [0, m).
inline std::int64_t mod_floor(BigInt const& v, std::int64_t m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

/// `v` modulo 2^128, two's complement wrap.
inline u128 wrap_u128(BigInt const& v) {
    BigInt const modulus = BigInt(1) << 128;
    BigInt r = v % modulus;
    if (r < 0) r += modulus;
    u128 out = 0;
    u128 const lo = static_cast<std::uint64_t>(r & BigInt(0xFFFFFFFFFFFFFFFFull));
    u128 const hi = static_cast<std::uint64_t>(r >> 64);
    out = (hi << 64) | lo;
    return out;
}

inline std::optional<std::int64_t> to_int64(BigInt const& v) {
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) return std::nullopt;
    return static_cast<std::int64_t>(v);
}

inline std::string to_string(BigInt const& v) { return v.str(); }

} // namespace nc
