#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pathsched {

inline constexpr const char* kVersion = "0.1.0";

/// Malformed input: bad file contents, violated preconditions.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A file that cannot be opened or read at all.
struct file_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A configured budget (states, node expansions, key width) was exhausted.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// FNV-1a over a byte string, hex-encoded. Used to stamp outputs with an input digest.
std::string fnv1a_hex(const std::string& bytes);

/// splitmix64 step; used to derive per-instance seeds from (base, cell, sample).
std::uint64_t mix64(std::uint64_t x);

}  // namespace pathsched
