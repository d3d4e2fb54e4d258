#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stringforge/partition.hpp"
#include "stringforge/poly.hpp"

namespace stringforge {

// Bilateral Motzkin paths: heights are unrestricted integers relative to the
// large matrix index, so powers of the Jacobi operator far from the boundary
// expand without edge effects.
enum class Step : uint8_t { Up, Flat, Down };

struct MotzkinPath {
    std::vector<Step> steps;

    int length() const { return static_cast<int>(steps.size()); }
    int end_height() const;
    std::vector<int> heights() const;  // prefix sums, heights[0] = 0

    std::string to_string() const;  // string over {U, F, D}
    static MotzkinPath parse(std::string_view s);
};

// All paths of the given length from height 0 to end_height, in U < F < D
// lexicographic order. The callback form enumerates lazily.
void for_each_path(int length, int end_height,
                   const std::function<void(const MotzkinPath&)>& fn);
std::vector<MotzkinPath> enumerate_paths(int length, int end_height);
uint64_t count_paths(int length, int end_height);

// Truncated N-graded expansion: grade k holds the coefficient of N^-k, a
// polynomial in the jets of s and r (grade = total derivative order).
struct NGradedExpr {
    std::map<int, Poly> grades;
    int order = 0;

    Poly grade(int k) const {
        auto it = grades.find(k);
        return it == grades.end() ? Poly() : it->second;
    }
    void add(int k, const Poly& p) {
        if (p.is_zero()) return;
        auto [it, fresh] = grades.try_emplace(k, Poly());
        it->second += p;
        if (it->second.is_zero()) grades.erase(it);
    }
    friend NGradedExpr operator*(const NGradedExpr& a, const NGradedExpr& b);
    friend NGradedExpr operator+(const NGradedExpr& a, const NGradedExpr& b);
    friend bool operator==(const NGradedExpr& a, const NGradedExpr& b) {
        return a.grades == b.grades;
    }
};

// Contribution of one path: product over steps of 1 (up), s_{n+p(i)} (flat),
// r_{n+p(i)} (down), each shifted coefficient expanded as
// sum_m (k^m/m!) N^-m d_x^m applied to the unshifted series, truncated at
// N^-order.
NGradedExpr contribution(const MotzkinPath& p, int order);

enum class Variant : uint8_t { A, B };  // end height 0 / end height -1

// Sum of contributions over all paths of length J-1 ending at 0 (variant A)
// or -1 (variant B), truncated at the given order. Serial reference,
// OpenMP-parallel, and transfer-matrix implementations agree exactly.
NGradedExpr motzkin_sum_serial(int J, Variant v, int order);
NGradedExpr motzkin_sum_parallel(int J, Variant v, int order);
NGradedExpr motzkin_sum_transfer(int J, Variant v, int order);
NGradedExpr motzkin_sum(int J, Variant v, int order);  // dispatches

// Coefficient of the jet monomial prod_i s^(lambda_i) * prod_j r^(eta_j) in a
// graded sum; the result is a polynomial in the base variables s, r.
Poly extract_jet_cell(const NGradedExpr& sum, const Partition& lambda,
                      const Partition& eta);

// Modified string polynomial: the (lambda, eta) jet coefficient of the path
// sum at length J-1. J >= 1.
Poly modified_string_poly(const Partition& lambda, const Partition& eta, int J,
                          Variant v);

}  // namespace stringforge
