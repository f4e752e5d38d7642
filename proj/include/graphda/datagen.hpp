#pragma once

#include <cstdio>
#include <fstream>
#include <random>

#include "graphda/graph.hpp"
#include "graphda/losses.hpp"

namespace graphda {

using Rng = std::mt19937_64;

struct BenchmarkSpec {
    int rows = 33;
    int cols = 33;
    int subgraph_size = 26;
    double mu = 0.3;
    int n_train = 400;
    int n_validate = 400;
    int n_test = 400;
    std::uint64_t seed = 0;

    void validate() const {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("BenchmarkSpec: grid dims must be >= 1");
        if (subgraph_size < 1 || subgraph_size > rows * cols)
            throw std::invalid_argument("BenchmarkSpec: subgraph_size out of range");
        if (n_train < 0 || n_validate < 0 || n_test < 0)
            throw std::invalid_argument("BenchmarkSpec: negative sample count");
    }
};

struct GroundTruth {
    DenseVector wstar;
    Support support;
};

enum class WStarStrategy { normalized, constant, gaussian };

inline const char* wstar_strategy_name(WStarStrategy s) {
    switch (s) {
        case WStarStrategy::normalized: return "normalized";
        case WStarStrategy::constant: return "constant";
        case WStarStrategy::gaussian: return "gaussian";
    }
    return "unknown";
}

inline WStarStrategy wstar_strategy_from_name(const std::string& name) {
    for (WStarStrategy s : {WStarStrategy::normalized, WStarStrategy::constant,
                            WStarStrategy::gaussian})
        if (name == wstar_strategy_name(s)) return s;
    throw std::invalid_argument("unknown wstar strategy: " + name);
}

// Connected support of exactly `size` nodes grown by seeded randomized
// breadth-first expansion from a random start node.
inline Support gen_connected_subgraph(const Graph& graph, int size,
                                      std::uint64_t seed) {
    if (size < 1 || size > graph.node_count())
        throw std::invalid_argument("gen_connected_subgraph: size out of range");
    Rng rng(seed);
    std::vector<char> selected(graph.node_count(), 0);
    std::vector<char> queued(graph.node_count(), 0);
    std::vector<int> frontier;

    const int start = static_cast<int>(
        std::uniform_int_distribution<int>(0, graph.node_count() - 1)(rng));
    Support out{start};
    selected[start] = 1;
    for (int ei : graph.incident(start)) {
        const int n = graph.other_endpoint(ei, start);
        if (!queued[n]) {
            queued[n] = 1;
            frontier.push_back(n);
        }
    }
    while (static_cast<int>(out.size()) < size) {
        if (frontier.empty())
            throw std::runtime_error(
                "gen_connected_subgraph: graph component smaller than requested size");
        const int pick = static_cast<int>(std::uniform_int_distribution<std::size_t>(
            0, frontier.size() - 1)(rng));
        const int v = frontier[pick];
        frontier[pick] = frontier.back();
        frontier.pop_back();
        selected[v] = 1;
        out.push_back(v);
        for (int ei : graph.incident(v)) {
            const int n = graph.other_endpoint(ei, v);
            if (!selected[n] && !queued[n]) {
                queued[n] = 1;
                frontier.push_back(n);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Positive samples carry mean mu on the truth support; negatives are pure
// standard normal noise.
inline Sample gen_classification_sample(const GroundTruth& truth, double mu,
                                        double label, Rng& rng) {
    if (label != 1.0 && label != -1.0)
        throw std::invalid_argument("gen_classification_sample: label must be +1 or -1");
    std::normal_distribution<double> normal(0.0, 1.0);
    Sample s;
    s.y = label;
    s.x.resize(truth.wstar.size());
    for (double& v : s.x) v = normal(rng);
    if (label == 1.0)
        for (int i : truth.support) s.x[i] += mu;
    return s;
}

inline GroundTruth make_wstar(WStarStrategy strategy, const Support& mask,
                              const DenseVector* intensities, std::size_t dim,
                              Rng& rng) {
    GroundTruth out;
    out.support = mask;
    out.wstar.assign(dim, 0.0);
    switch (strategy) {
        case WStarStrategy::normalized: {
            if (intensities == nullptr)
                throw std::invalid_argument(
                    "make_wstar: normalized strategy requires intensities");
            if (intensities->size() != dim)
                throw std::invalid_argument("make_wstar: intensity length mismatch");
            double max_val = 0.0;
            for (int i : mask) max_val = std::max(max_val, (*intensities)[i]);
            if (max_val <= 0.0)
                throw std::invalid_argument(
                    "make_wstar: normalized strategy needs a positive intensity");
            for (int i : mask) out.wstar[i] = (*intensities)[i] / max_val;
            break;
        }
        case WStarStrategy::constant:
            for (int i : mask) out.wstar[i] = 1.0;
            break;
        case WStarStrategy::gaussian: {
            std::normal_distribution<double> normal(0.0, 1.0);
            for (int i : mask) out.wstar[i] = normal(rng);
            break;
        }
    }
    return out;
}

// Noiseless linear response y = <x, wstar> with standard normal features.
inline Sample gen_regression_sample(const GroundTruth& truth, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Sample s;
    s.x.resize(truth.wstar.size());
    for (double& v : s.x) v = normal(rng);
    s.y = 0.0;
    for (int i : truth.support) s.y += s.x[i] * truth.wstar[i];
    return s;
}

// Benchmark ground truth: wstar = mu on a random connected support.
inline GroundTruth make_benchmark_truth(const Graph& grid,
                                        const BenchmarkSpec& spec) {
    spec.validate();
    GroundTruth truth;
    truth.support =
        gen_connected_subgraph(grid, spec.subgraph_size, derive_seed(spec.seed, 0));
    truth.wstar.assign(grid.node_count(), 0.0);
    for (int i : truth.support) truth.wstar[i] = spec.mu;
    return truth;
}

inline std::vector<Sample> gen_classification_set(const GroundTruth& truth,
                                                  double mu, int count,
                                                  std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<Sample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double label = coin(rng) == 1 ? 1.0 : -1.0;
        out.push_back(gen_classification_sample(truth, mu, label, rng));
    }
    return out;
}

inline std::vector<Sample> gen_regression_set(const GroundTruth& truth, int count,
                                              std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Sample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(gen_regression_sample(truth, rng));
    return out;
}

// --------------------------- IDX image files ---------------------------

struct Image {
    int rows = 0;
    int cols = 0;
    std::vector<double> pixels;  // row-major, 0..255

    double at(int r, int c) const { return pixels[r * cols + c]; }
};

namespace detail {

inline std::uint32_t read_be32(std::istream& in, std::size_t& offset,
                               const char* what) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (in.gcount() != 4)
        throw std::runtime_error(std::string("idx parse error at byte ") +
                                 std::to_string(offset) + ": truncated " + what);
    offset += 4;
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
           (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

}  // namespace detail

// Big-endian IDX image file (magic 0x00000803).
inline std::vector<Image> load_idx_images(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::size_t offset = 0;
    const std::uint32_t magic = detail::read_be32(in, offset, "magic");
    if (magic != 0x00000803)
        throw std::runtime_error("idx parse error at byte 0: bad image magic " +
                                 std::to_string(magic));
    const std::uint32_t count = detail::read_be32(in, offset, "count");
    const std::uint32_t rows = detail::read_be32(in, offset, "rows");
    const std::uint32_t cols = detail::read_be32(in, offset, "cols");
    std::vector<Image> out;
    out.reserve(count);
    std::vector<unsigned char> buf(static_cast<std::size_t>(rows) * cols);
    for (std::uint32_t i = 0; i < count; ++i) {
        in.read(reinterpret_cast<char*>(buf.data()), buf.size());
        if (in.gcount() != static_cast<std::streamsize>(buf.size()))
            throw std::runtime_error(
                "idx parse error at byte " + std::to_string(offset) +
                ": expected " + std::to_string(buf.size()) + " pixel bytes, got " +
                std::to_string(in.gcount()));
        offset += buf.size();
        Image img;
        img.rows = static_cast<int>(rows);
        img.cols = static_cast<int>(cols);
        img.pixels.assign(buf.begin(), buf.end());
        out.push_back(std::move(img));
    }
    return out;
}

// Big-endian IDX label file (magic 0x00000801).
inline std::vector<int> load_idx_labels(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::size_t offset = 0;
    const std::uint32_t magic = detail::read_be32(in, offset, "magic");
    if (magic != 0x00000801)
        throw std::runtime_error("idx parse error at byte 0: bad label magic " +
                                 std::to_string(magic));
    const std::uint32_t count = detail::read_be32(in, offset, "count");
    std::vector<unsigned char> buf(count);
    in.read(reinterpret_cast<char*>(buf.data()), count);
    if (in.gcount() != static_cast<std::streamsize>(count))
        throw std::runtime_error("idx parse error at byte " + std::to_string(offset) +
                                 ": expected " + std::to_string(count) +
                                 " label bytes, got " + std::to_string(in.gcount()));
    return std::vector<int>(buf.begin(), buf.end());
}

// Pixels brighter than the threshold, flattened row-major to match the grid
// graph's node order.
inline Support image_mask(const Image& img, double threshold = 0.0) {
    if (threshold < 0.0)
        throw std::invalid_argument("image_mask: threshold must be >= 0");
    Support out;
    for (int i = 0; i < static_cast<int>(img.pixels.size()); ++i)
        if (img.pixels[i] > threshold) out.push_back(i);
    return out;
}

// ---------------- offline digit-like masks (IDX fallback) ----------------

namespace detail {

inline void mark_cell(std::vector<char>& on, int rows, int cols, int r, int c) {
    if (r >= 0 && r < rows && c >= 0 && c < cols) on[r * cols + c] = 1;
}

// 4-connected rasterized segment: axis steps only, no diagonal jumps.
inline void draw_segment(std::vector<char>& on, int rows, int cols, int r0,
                         int c0, int r1, int c1) {
    int r = r0, c = c0;
    mark_cell(on, rows, cols, r, c);
    const int steps = std::abs(r1 - r0) + std::abs(c1 - c0);
    for (int i = 0; i < steps; ++i) {
        const int dr = r1 - r, dc = c1 - c;
        if (std::abs(dr) >= std::abs(dc))
            r += dr > 0 ? 1 : -1;
        else
            c += dc > 0 ? 1 : -1;
        mark_cell(on, rows, cols, r, c);
    }
}

}  // namespace detail

// Seven-segment style digit stroke on an arbitrary grid; always a single
// 4-connected component. The border ring of intensities makes the normalized
// strategy distinct from the constant one.
inline Image synthetic_digit_image(int digit, int rows = 28, int cols = 28) {
    if (digit < 0 || digit > 9)
        throw std::invalid_argument("synthetic_digit_image: digit must be 0..9");
    if (rows < 7 || cols < 7)
        throw std::invalid_argument("synthetic_digit_image: grid too small");
    const int top = rows / 5, mid = rows / 2, bot = rows - 1 - rows / 5;
    const int left = cols / 4, right = cols - 1 - cols / 4;
    struct Seg { int r0, c0, r1, c1; };
    const Seg segs[7] = {
        {top, left, top, right},      // A
        {top, right, mid, right},     // B
        {mid, right, bot, right},     // C
        {bot, left, bot, right},      // D
        {mid, left, bot, left},       // E
        {top, left, mid, left},       // F
        {mid, left, mid, right},      // G
    };
    static const char* lit[10] = {"ABCDEF", "BC",     "ABGED", "ABGCD", "FGBC",
                                  "AFGCD",  "AFGEDC", "ABC",   "ABCDEFG", "ABCDFG"};
    std::vector<char> core(rows * cols, 0);
    for (const char* s = lit[digit]; *s; ++s) {
        const Seg& g = segs[*s - 'A'];
        detail::draw_segment(core, rows, cols, g.r0, g.c0, g.r1, g.c1);
    }
    Image img;
    img.rows = rows;
    img.cols = cols;
    img.pixels.assign(rows * cols, 0.0);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (core[r * cols + c]) img.pixels[r * cols + c] = 255.0;
    // one-cell dilation at half intensity
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (!core[r * cols + c]) continue;
            const int dr[4] = {1, -1, 0, 0}, dc[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                const int rr = r + dr[k], cc = c + dc[k];
                if (rr >= 0 && rr < rows && cc >= 0 && cc < cols &&
                    img.pixels[rr * cols + cc] == 0.0)
                    img.pixels[rr * cols + cc] = 128.0;
            }
        }
    }
    return img;
}

}  // namespace graphda
