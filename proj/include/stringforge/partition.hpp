#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stringforge {

// Integer partition used as a differentiation multi-index. Parts are weakly
// decreasing positive integers; the empty partition is written "phi".
class Partition {
  public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : parts_(parts) { canonicalize(); }
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        canonicalize();
    }

    const std::vector<int>& parts() const { return parts_; }
    int weight() const {
        int w = 0;
        for (int p : parts_) w += p;
        return w;
    }
    int len() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }

    // multiplicity of a part value
    int mult(int v) const {
        int m = 0;
        for (int p : parts_) m += p == v;
        return m;
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.parts_ == b.parts_;
    }
    friend bool operator<(const Partition& a, const Partition& b) {
        return a.parts_ < b.parts_;
    }

    std::string to_string() const;

    static std::vector<Partition> all_of_weight(int w);
    // all pairs (lambda, eta) with |lambda|+|eta| <= max_weight, ordered by
    // total weight then lexicographically
    static std::vector<std::pair<Partition, Partition>> all_pairs(int max_weight);

  private:
    std::vector<int> parts_;
    void canonicalize();
};

}  // namespace stringforge
