#include "stringforge/runconfig.hpp"

#include <fstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stringforge {

std::map<std::string, std::string> RunConfig::read_config_file(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not readable: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) out[key] = value;
    }
    return out;
}

void RunConfig::apply_entries(const std::map<std::string, std::string>& entries) {
    for (const auto& [k, v] : entries) {
        if (k == "format") {
            if (v != "text" && v != "json")
                throw std::invalid_argument("config: format must be text or json");
            format = v;
        } else if (k == "threads") {
            threads = std::stoi(v);
        } else if (k == "order") {
            order = std::stoi(v);
        } else if (k == "seed") {
            seed = std::stoull(v);
        } else {
            throw std::invalid_argument("config: unknown key '" + k + "'");
        }
    }
}

void RunConfig::apply_threads() const {
#ifdef _OPENMP
    int n = threads;
    if (n <= 0) {
        if (const char* env = std::getenv("STRINGFORGE_THREADS"))
            n = std::atoi(env);
    }
    if (n > 0) omp_set_num_threads(n);
#endif
}

}  // namespace stringforge
