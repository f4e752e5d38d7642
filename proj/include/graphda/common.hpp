#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphda {

// Length-p real vector; paired with a Graph it indexes the nodes.
using DenseVector = std::vector<double>;

// Sorted, duplicate-free node index set.
using Support = std::vector<int>;

inline double dot(const DenseVector& a, const DenseVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double squared_norm(const DenseVector& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s;
}

inline double norm(const DenseVector& a) { return std::sqrt(squared_norm(a)); }

inline void scale_in_place(DenseVector& a, double c) {
    for (double& v : a) v *= c;
}

inline DenseVector scaled(const DenseVector& a, double c) {
    DenseVector out(a);
    scale_in_place(out, c);
    return out;
}

// a += c*b
inline void axpy(DenseVector& a, double c, const DenseVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("axpy: length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

inline Support make_support(std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return indices;
}

inline bool support_contains(const Support& s, int i) {
    return std::binary_search(s.begin(), s.end(), i);
}

inline Support support_intersection(const Support& a, const Support& b) {
    Support out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

inline Support support_union(const Support& a, const Support& b) {
    Support out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out));
    return out;
}

// splitmix64; used to derive independent per-unit seeds from a base seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0) {
    return mix_seed(base ^ mix_seed(a ^ mix_seed(b)));
}

}  // namespace graphda
