#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "octolattice/lattice.hpp"
#include "octolattice/octonion.hpp"
#include "octolattice/split.hpp"

namespace octolattice {

inline bool is_zero(const Octonion& v) { return v == Octonion{}; }
inline bool is_zero(const SplitElement& v) { return v.empty(); }
inline double max_abs(const Octonion& v) { return v.max_abs(); }
inline double max_abs(const SplitElement& v) { return v.max_abs(); }

// Finitely supported lattice function; evaluation off the stored points returns zero.
template <class V>
struct Field {
    double h = 1.0;
    std::unordered_map<Point, V, PointHash> values;

    Field() = default;
    explicit Field(double spacing) : h(spacing) {}

    V at(const Point& p) const {
        auto it = values.find(p);
        return it == values.end() ? V{} : it->second;
    }
    void set(const Point& p, const V& v) {
        if (is_zero(v)) values.erase(p);
        else values[p] = v;
    }
    void add(const Point& p, const V& v) {
        auto& slot = values[p];
        slot += v;
        if (is_zero(slot)) values.erase(p);
    }
    size_t size() const { return values.size(); }

    // sorted for deterministic traversal
    std::vector<Point> support() const {
        std::vector<Point> pts;
        pts.reserve(values.size());
        for (const auto& kv : values) pts.push_back(kv.first);
        std::sort(pts.begin(), pts.end());
        return pts;
    }
    Box support_box() const { return Box::around(support()); }

    double max_abs() const {
        double m = 0;
        for (const auto& kv : values) m = std::max(m, octolattice::max_abs(kv.second));
        return m;
    }
};

using OctField = Field<Octonion>;
using SplitField = Field<SplitElement>;

// Points of the support together with their 16 neighbours, sorted.
template <class V>
std::vector<Point> support_star(const Field<V>& f) {
    PointSet s;
    for (const auto& kv : f.values) {
        s.insert(kv.first);
        for (int j = 0; j < kDim; ++j)
            for (int d : {-1, 1}) s.insert(shifted(kv.first, j, d));
    }
    std::vector<Point> pts(s.begin(), s.end());
    std::sort(pts.begin(), pts.end());
    return pts;
}

template <class V>
Field<V> operator-(const Field<V>& a, const Field<V>& b) {
    Field<V> out = a;
    for (const auto& kv : b.values) out.add(kv.first, -1.0 * kv.second);
    return out;
}

// Text format: "h=<v>" header, then "m0 .. m7 c0 .. c7" per point.
void write_field(const OctField& f, const std::string& path);
OctField read_field(const std::string& path);

}  // namespace octolattice
