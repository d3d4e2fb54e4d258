#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace stringforge {

// Global run configuration. Precedence, fixed: config file overrides flags,
// flags override defaults. STRINGFORGE_THREADS seeds the default thread
// count.
struct RunConfig {
    std::string format = "text";  // text | json
    int threads = 0;              // 0 = all cores
    int order = 6;                // series truncation (total coupling degree)
    uint64_t seed = 20250808;     // property-suite randomization

    // key = value lines, '#' comments
    static std::map<std::string, std::string> read_config_file(
        const std::string& path);
    void apply_entries(const std::map<std::string, std::string>& entries);
    void apply_threads() const;
};

}  // namespace stringforge
