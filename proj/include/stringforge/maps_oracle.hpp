#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stringforge/coupling.hpp"
#include "stringforge/solver.hpp"

namespace stringforge {

struct Disconnected : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Embedded graph as a rotation system on labeled darts: sigma's cycles are
// the fixed counterclockwise orders at each labeled vertex, alpha is the
// fixed-point-free pairing of darts into edges. Faces are the cycles of
// sigma after alpha.
struct RotationSystem {
    std::vector<int> sigma;
    std::vector<int> alpha;

    int dart_count() const { return static_cast<int>(sigma.size()); }
    int edge_count() const { return dart_count() / 2; }
    int vertex_count() const;

    bool connected() const;
    int face_count() const;
    // Euler: V - E + F = 2 - 2g; throws Disconnected
    int genus() const;

    // darts of vertex i of valence j are consecutive, cyclically shifted;
    // dart 1 of each vertex realizes the marked incident edge
    static RotationSystem with_profile(const std::map<int, int>& profile,
                                       const std::vector<int>& alpha);
    static std::vector<int> profile_sigma(const std::map<int, int>& profile);
};

// counts of connected dart pairings keyed by (genus, faces)
using OracleCounts = std::map<std::pair<int, int>, int64_t>;

inline constexpr int kMaxDarts = 16;  // (2E-1)!! stays desk-scale

OracleCounts enumerate_maps_serial(const std::map<int, int>& profile);
OracleCounts enumerate_maps_parallel(const std::map<int, int>& profile);
OracleCounts enumerate_maps(const std::map<int, int>& profile);

// totals for one genus, keyed by face count
std::map<int, int64_t> enumerate_maps_genus(const std::map<int, int>& profile,
                                            int genus);

// number of fixed-point-free involutions on 2E darts: (2E-1)!!
int64_t double_factorial_odd(int edges);

struct CompareReport {
    bool all_match = true;
    int profiles_checked = 0;
    std::vector<std::string> lines;       // one line per profile
    std::vector<std::string> mismatches;  // subset that disagreed
};

// Every vertex profile over the potential's couplings with at most
// max_vertices vertices: generating-function coefficients vs. exhaustive
// enumeration, split by face count.
CompareReport compare_with_series(const Potential& V, int genus, int max_vertices,
                                  GenusTable& table, OperatorTable& ops);

}  // namespace stringforge
