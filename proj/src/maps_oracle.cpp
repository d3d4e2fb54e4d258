#include "stringforge/maps_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "stringforge/specialize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stringforge {

int RotationSystem::vertex_count() const {
    // cycles of sigma
    int n = dart_count();
    std::vector<bool> seen(n, false);
    int v = 0;
    for (int d = 0; d < n; ++d) {
        if (seen[d]) continue;
        ++v;
        int cur = d;
        while (!seen[cur]) {
            seen[cur] = true;
            cur = sigma[cur];
        }
    }
    return v;
}

bool RotationSystem::connected() const {
    int n = dart_count();
    if (n == 0) return false;
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int visited = 1;
    while (!stack.empty()) {
        int d = stack.back();
        stack.pop_back();
        for (int nb : {sigma[d], alpha[d]}) {
            if (!seen[nb]) {
                seen[nb] = true;
                ++visited;
                stack.push_back(nb);
            }
        }
    }
    return visited == n;
}

int RotationSystem::face_count() const {
    int n = dart_count();
    std::vector<bool> seen(n, false);
    int f = 0;
    for (int d = 0; d < n; ++d) {
        if (seen[d]) continue;
        ++f;
        int cur = d;
        while (!seen[cur]) {
            seen[cur] = true;
            cur = sigma[alpha[cur]];
        }
    }
    return f;
}

int RotationSystem::genus() const {
    if (!connected()) throw Disconnected("rotation system is not connected");
    int v = vertex_count(), e = edge_count(), f = face_count();
    int chi = v - e + f;
    if ((2 - chi) % 2 != 0) throw std::logic_error("odd Euler defect");
    return (2 - chi) / 2;
}

std::vector<int> RotationSystem::profile_sigma(const std::map<int, int>& profile) {
    std::vector<int> sigma;
    int base = 0;
    for (const auto& [j, n] : profile) {
        if (j < 1) throw std::invalid_argument("profile: valence must be >= 1");
        for (int v = 0; v < n; ++v) {
            sigma.resize(base + j);
            for (int k = 0; k < j; ++k) sigma[base + k] = base + (k + 1) % j;
            base += j;
        }
    }
    return sigma;
}

RotationSystem RotationSystem::with_profile(const std::map<int, int>& profile,
                                            const std::vector<int>& alpha) {
    RotationSystem rs;
    rs.sigma = profile_sigma(profile);
    rs.alpha = alpha;
    if (rs.alpha.size() != rs.sigma.size())
        throw std::invalid_argument("alpha size mismatch");
    return rs;
}

namespace {

// backtracking over fixed-point-free involutions; at each leaf, classify by
// (genus, faces) if connected
void enumerate_rec(const std::vector<int>& sigma, std::vector<int>& alpha,
                   uint32_t paired_mask, OracleCounts& counts) {
    int n = static_cast<int>(sigma.size());
    int first = -1;
    for (int d = 0; d < n; ++d)
        if (!(paired_mask & (1u << d))) {
            first = d;
            break;
        }
    if (first < 0) {
        RotationSystem rs{sigma, alpha};
        if (!rs.connected()) return;
        int f = rs.face_count();
        int v = rs.vertex_count();
        int g = (2 - (v - n / 2 + f)) / 2;
        ++counts[{g, f}];
        return;
    }
    for (int d = first + 1; d < n; ++d) {
        if (paired_mask & (1u << d)) continue;
        alpha[first] = d;
        alpha[d] = first;
        enumerate_rec(sigma, alpha, paired_mask | (1u << first) | (1u << d), counts);
    }
}

void check_profile(const std::map<int, int>& profile) {
    int darts = 0;
    for (const auto& [j, n] : profile) {
        if (n < 0) throw std::invalid_argument("profile: negative count");
        darts += j * n;
    }
    if (darts % 2 != 0)
        throw std::invalid_argument("profile: odd dart count has no pairings");
    if (darts > kMaxDarts)
        throw TooLarge("profile needs " + std::to_string(darts) + " darts, cap is " +
                       std::to_string(kMaxDarts));
    if (darts == 0) throw std::invalid_argument("profile: empty");
}

}  // namespace

OracleCounts enumerate_maps_serial(const std::map<int, int>& profile) {
    check_profile(profile);
    std::vector<int> sigma = RotationSystem::profile_sigma(profile);
    std::vector<int> alpha(sigma.size(), -1);
    OracleCounts counts;
    enumerate_rec(sigma, alpha, 0, counts);
    return counts;
}

OracleCounts enumerate_maps_parallel(const std::map<int, int>& profile) {
    check_profile(profile);
    std::vector<int> sigma = RotationSystem::profile_sigma(profile);
    int n = static_cast<int>(sigma.size());
    std::vector<OracleCounts> partial(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int d = 1; d < n; ++d) {
        std::vector<int> alpha(n, -1);
        alpha[0] = d;
        alpha[d] = 0;
        enumerate_rec(sigma, alpha, (1u << 0) | (1u << d), partial[d]);
    }
    OracleCounts counts;
    for (const auto& p : partial)
        for (const auto& [k, c] : p) counts[k] += c;
    return counts;
}

OracleCounts enumerate_maps(const std::map<int, int>& profile) {
#ifdef _OPENMP
    int darts = 0;
    for (const auto& [j, n] : profile) darts += j * n;
    if (darts >= 10) return enumerate_maps_parallel(profile);
#endif
    return enumerate_maps_serial(profile);
}

std::map<int, int64_t> enumerate_maps_genus(const std::map<int, int>& profile,
                                            int genus) {
    std::map<int, int64_t> out;
    for (const auto& [k, c] : enumerate_maps(profile))
        if (k.first == genus) out[k.second] += c;
    return out;
}

int64_t double_factorial_odd(int edges) {
    int64_t r = 1;
    for (int k = 2 * edges - 1; k > 1; k -= 2) r *= k;
    return r;
}

namespace {

void all_profiles(const std::vector<int>& valences, int max_vertices,
                  std::map<int, int>& cur, int used,
                  std::vector<std::map<int, int>>& out, size_t idx) {
    if (idx == valences.size()) {
        int darts = 0;
        for (const auto& [j, n] : cur) darts += j * n;
        if (used >= 1 && darts % 2 == 0 && darts > 0 && darts <= kMaxDarts)
            out.push_back(cur);
        return;
    }
    for (int n = 0; used + n <= max_vertices; ++n) {
        if (n > 0) cur[valences[idx]] = n;
        all_profiles(valences, max_vertices, cur, used + n, out, idx + 1);
        cur.erase(valences[idx]);
    }
}

}  // namespace

CompareReport compare_with_series(const Potential& V, int genus, int max_vertices,
                                  GenusTable& table, OperatorTable& ops) {
    CompareReport rep;
    std::vector<std::map<int, int>> profiles;
    {
        std::map<int, int> cur;
        all_profiles(V.coupling_indices(), max_vertices, cur, 0, profiles, 0);
    }
    CouplingSeries F = f_series(genus, V, table, ops, max_vertices);
    for (const auto& profile : profiles) {
        MapCountReport engine = map_count(F, profile);
        std::map<int, int64_t> oracle = enumerate_maps_genus(profile, genus);
        std::ostringstream name;
        name << "genus " << genus << " profile {";
        bool first = true;
        for (const auto& [j, n] : profile) {
            if (!first) name << ", ";
            first = false;
            name << j << ":" << n;
        }
        name << "}";
        bool match = true;
        std::map<int, Rational> engine_clean;
        for (const auto& [f, c] : engine.by_faces)
            if (!c.is_zero()) engine_clean[f] = c;
        if (engine_clean.size() != oracle.size()) match = false;
        if (match)
            for (const auto& [f, c] : oracle)
                if (engine_clean.count(f) == 0 ||
                    engine_clean[f] != Rational(c))
                    match = false;
        std::ostringstream line;
        line << name.str() << ": ";
        if (match) {
            line << "match (";
            bool f1 = true;
            for (const auto& [f, c] : oracle) {
                if (!f1) line << ", ";
                f1 = false;
                line << c << " with " << f << " faces";
            }
            if (oracle.empty()) line << "none";
            line << ")";
        } else {
            line << "MISMATCH engine={";
            for (const auto& [f, c] : engine_clean)
                line << f << ":" << c.to_string() << " ";
            line << "} oracle={";
            for (const auto& [f, c] : oracle) line << f << ":" << c << " ";
            line << "}";
            rep.mismatches.push_back(line.str());
            rep.all_match = false;
        }
        rep.lines.push_back(line.str());
        ++rep.profiles_checked;
    }
    return rep;
}

}  // namespace stringforge
