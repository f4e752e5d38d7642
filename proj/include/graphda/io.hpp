#pragma once

#include <fstream>
#include <map>
#include <sstream>

#include "graphda/graph.hpp"
#include "graphda/losses.hpp"

namespace graphda {

// ---- edge-list text format: "p <node_count>" then "u v cost" per line ----

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << "p " << g.node_count() << "\n";
    for (const Edge& e : g.edges())
        out << e.u << " " << e.v << " " << e.cost << "\n";
}

inline void write_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_edge_list(out, g);
}

inline Graph read_edge_list(std::istream& in) {
    std::string tag;
    int p = 0;
    if (!(in >> tag >> p) || tag != "p")
        throw std::runtime_error("edge list: expected header 'p <node_count>'");
    std::vector<Edge> edges;
    Edge e;
    while (in >> std::ws, in.peek() != EOF) {
        // stop at a non-numeric block such as "prizes:"
        if (!std::isdigit(in.peek()) && in.peek() != '-') break;
        if (!(in >> e.u >> e.v >> e.cost))
            throw std::runtime_error("edge list: malformed edge line");
        edges.push_back(e);
    }
    return Graph(p, std::move(edges));
}

inline Graph read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_edge_list(in);
}

// ---- vectors: one value per line ----

inline void write_vector(const std::string& path, const DenseVector& v) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    for (double x : v) out << x << "\n";
}

inline DenseVector read_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    DenseVector v;
    double x;
    while (in >> x) v.push_back(x);
    return v;
}

// ---- PCST instance: edge list followed by a "prizes:" block ----

struct PcstFile {
    Graph graph;
    DenseVector prizes;
};

inline PcstFile read_pcst_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    PcstFile f{read_edge_list(in), {}};
    std::string tag;
    if (!(in >> tag) || tag != "prizes:")
        throw std::runtime_error("pcst file: expected 'prizes:' block");
    f.prizes.resize(f.graph.node_count());
    for (double& x : f.prizes)
        if (!(in >> x)) throw std::runtime_error("pcst file: truncated prize block");
    return f;
}

inline void write_pcst_file(const std::string& path, const Graph& g,
                            const DenseVector& prizes) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_edge_list(out, g);
    out << "prizes:\n";
    out.precision(17);
    for (double x : prizes) out << x << "\n";
}

// ---- model snapshot: "p <dim> t <step>" then one value per line ----

inline void write_snapshot(const std::string& path, const DenseVector& w, long t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "p " << w.size() << " t " << t << "\n";
    out.precision(17);
    for (double x : w) out << x << "\n";
}

struct Snapshot {
    DenseVector w;
    long t = 0;
};

inline Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string ptag, ttag;
    std::size_t dim = 0;
    Snapshot s;
    if (!(in >> ptag >> dim >> ttag >> s.t) || ptag != "p" || ttag != "t")
        throw std::runtime_error("snapshot: bad header");
    s.w.resize(dim);
    for (double& x : s.w)
        if (!(in >> x)) throw std::runtime_error("snapshot: truncated");
    return s;
}

// ---- dataset dump: CSV with columns y, x_0..x_{p-1} ----

inline void write_dataset_csv(const std::string& path,
                              const std::vector<Sample>& samples) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    const std::size_t p = samples.empty() ? 0 : samples.front().x.size();
    out << "y";
    for (std::size_t i = 0; i < p; ++i) out << ",x_" << i;
    out << "\n";
    for (const Sample& s : samples) {
        out << s.y;
        for (double x : s.x) out << "," << x;
        out << "\n";
    }
}

inline std::vector<Sample> read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("dataset csv: empty file");
    std::vector<Sample> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Sample s;
        std::stringstream ss(line);
        std::string cell;
        if (!std::getline(ss, cell, ',')) continue;
        s.y = std::stod(cell);
        while (std::getline(ss, cell, ',')) s.x.push_back(std::stod(cell));
        out.push_back(std::move(s));
    }
    return out;
}

// ---- ground-truth dump: "index value" per support entry ----

inline void write_ground_truth(const std::string& path, const DenseVector& wstar,
                               const Support& support) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    out << "p " << wstar.size() << "\n";
    for (int i : support) out << i << " " << wstar[i] << "\n";
}

// ---- flat key-value config: "key = value", '#' comments ----

class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config " + path);
        Config c;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto eq = line.find('=');
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            if (eq == std::string::npos)
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": expected key = value");
            c.values_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        return c;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : std::stod(it->second);
    }

    long get_long(const std::string& key, long fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : std::stol(it->second);
    }

    void set(const std::string& key, const std::string& value) {
        values_[key] = value;
    }

    const std::map<std::string, std::string>& values() const { return values_; }

    static std::vector<std::string> split_list(const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) out.push_back(item);
        }
        return out;
    }

private:
    static std::string trim(const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return "";
        const auto b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    }

    std::map<std::string, std::string> values_;
};

}  // namespace graphda
