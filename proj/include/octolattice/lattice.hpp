#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

namespace octolattice {

constexpr int kDim = 8;

using Point = std::array<int, kDim>;

struct PointHash {
    size_t operator()(const Point& p) const noexcept {
        uint64_t x = 0x9e3779b97f4a7c15ull;
        for (int v : p) {
            x ^= static_cast<uint64_t>(static_cast<uint32_t>(v)) + 0x9e3779b97f4a7c15ull + (x << 6) + (x >> 2);
        }
        return static_cast<size_t>(x);
    }
};

using PointSet = std::unordered_set<Point, PointHash>;

inline Point unit(int j, int s = 1) {
    Point p{};
    p[j] = s;
    return p;
}
inline Point operator+(Point a, const Point& b) {
    for (int j = 0; j < kDim; ++j) a[j] += b[j];
    return a;
}
inline Point operator-(Point a, const Point& b) {
    for (int j = 0; j < kDim; ++j) a[j] -= b[j];
    return a;
}
inline Point operator-(Point a) {
    for (int& v : a) v = -v;
    return a;
}
inline Point shifted(Point p, int j, int s) {
    p[j] += s;
    return p;
}
inline int linf(const Point& p) {
    int m = 0;
    for (int v : p) m = std::max(m, v < 0 ? -v : v);
    return m;
}
std::string to_string(const Point& p);

// Inclusive integer box.
struct Box {
    Point lo{}, hi{};

    bool empty() const;
    bool contains(const Point& p) const;
    size_t size() const;
    Box dilated(int k) const;
    size_t index(const Point& p) const;  // row-major, axis 7 fastest
    Point point(size_t idx) const;
    void for_each(const std::function<void(const Point&)>& fn) const;
    static Box around(const std::vector<Point>& pts);
    static Box cube(int lo, int hi);
};

class LatticeDomain {
public:
    LatticeDomain(double h, std::vector<Point> points);

    // Cuboid with indices m_i in {0..N_i}; the mask is the index-convention interior
    // m_i in [1, N_i - 1].
    static LatticeDomain cuboid(double h, const Point& N);
    static LatticeDomain read(const std::string& path);
    void write(const std::string& path) const;

    double h() const { return h_; }
    const std::vector<Point>& points() const { return points_; }
    const Box& bbox() const { return bbox_; }
    size_t size() const { return points_.size(); }
    bool contains(const Point& p) const { return index_.count(p) != 0; }

private:
    double h_;
    std::vector<Point> points_;  // sorted
    PointSet index_;
    Box bbox_;
};

enum class Side : int { Left = 0, Right = 1 };

struct BoundaryLayers {
    std::vector<Point> gamma_plus, gamma_star, gamma_minus;
    // star_sub[j][Left]  = {p in gamma* : p + e_j in Omega}
    // star_sub[j][Right] = {p in gamma* : p - e_j in Omega}
    std::array<std::array<std::vector<Point>, 2>, kDim> star_sub;
    PointSet star_index;

    bool in_star(const Point& p) const { return star_index.count(p) != 0; }
};

// Membership rule: gamma* = points outside the mask with a mask neighbour; Omega_ext is
// the rest of the complement; gamma+ / gamma- are the points of Omega / Omega_ext with a
// neighbour outside their own set.
BoundaryLayers classify(const LatticeDomain& domain);

// Literal layer definition with int(.) read as "all 16 neighbours inside"; used only for
// comparison reports (its layers overlap).
BoundaryLayers classify_literal(const LatticeDomain& domain);

std::pair<std::vector<Point>, std::vector<Point>> face_sublayers(const BoundaryLayers& layers,
                                                                 const LatticeDomain& domain, int j);

// Sub-layers of Omega_ext: left = {p in gamma* : p + e_j in Omega_ext}, right = {p in gamma* : p - e_j in Omega_ext}.
std::pair<std::vector<Point>, std::vector<Point>> exterior_sublayers(const BoundaryLayers& layers,
                                                                     const LatticeDomain& domain, int j);

bool in_exterior(const LatticeDomain& domain, const BoundaryLayers& layers, const Point& p);

std::function<double(const Point&)> characteristic(const LatticeDomain& domain);
std::function<double(const Point&)> characteristic_exterior(const LatticeDomain& domain,
                                                            const BoundaryLayers& layers);

// Parses "cuboid:N0,...,N7" (a single N is broadcast), "lshape:N" (cuboid minus its
// lowest-corner voxel) or "file:<path>".
LatticeDomain parse_domain(const std::string& spec, double h = 1.0);

}  // namespace octolattice
