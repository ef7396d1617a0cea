#pragma once

#include <cstdint>
#include <string>

namespace tracelab {

inline constexpr const char* kVersion = "0.1.0";

// Stable identifier of the tool build (version + compiler), embedded in every
// output header so result files are traceable without timestamps.
inline std::string version_hash() {
    std::string material = std::string(kVersion) + "|" +
#if defined(__VERSION__)
                           __VERSION__;
#else
                           "unknown-compiler";
#endif
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : material) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace tracelab
