#include "octolattice/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace octolattice {

std::string to_string(const Point& p) {
    std::string s = "(";
    for (int j = 0; j < kDim; ++j) {
        if (j) s += ",";
        s += std::to_string(p[j]);
    }
    return s + ")";
}

bool Box::empty() const {
    for (int j = 0; j < kDim; ++j)
        if (hi[j] < lo[j]) return true;
    return false;
}

bool Box::contains(const Point& p) const {
    for (int j = 0; j < kDim; ++j)
        if (p[j] < lo[j] || p[j] > hi[j]) return false;
    return true;
}

size_t Box::size() const {
    if (empty()) return 0;
    size_t n = 1;
    for (int j = 0; j < kDim; ++j) n *= static_cast<size_t>(hi[j] - lo[j] + 1);
    return n;
}

Box Box::dilated(int k) const {
    Box b = *this;
    for (int j = 0; j < kDim; ++j) {
        b.lo[j] -= k;
        b.hi[j] += k;
    }
    return b;
}

size_t Box::index(const Point& p) const {
    size_t idx = 0;
    for (int j = 0; j < kDim; ++j) idx = idx * static_cast<size_t>(hi[j] - lo[j] + 1) + (p[j] - lo[j]);
    return idx;
}

Point Box::point(size_t idx) const {
    Point p{};
    for (int j = kDim - 1; j >= 0; --j) {
        size_t n = static_cast<size_t>(hi[j] - lo[j] + 1);
        p[j] = lo[j] + static_cast<int>(idx % n);
        idx /= n;
    }
    return p;
}

void Box::for_each(const std::function<void(const Point&)>& fn) const {
    if (empty()) return;
    Point p = lo;
    while (true) {
        fn(p);
        int j = kDim - 1;
        while (j >= 0 && p[j] == hi[j]) {
            p[j] = lo[j];
            --j;
        }
        if (j < 0) return;
        ++p[j];
    }
}

Box Box::around(const std::vector<Point>& pts) {
    Box b;
    if (pts.empty()) {
        b.lo.fill(0);
        b.hi.fill(-1);
        return b;
    }
    b.lo = b.hi = pts.front();
    for (const auto& p : pts)
        for (int j = 0; j < kDim; ++j) {
            b.lo[j] = std::min(b.lo[j], p[j]);
            b.hi[j] = std::max(b.hi[j], p[j]);
        }
    return b;
}

Box Box::cube(int lo, int hi) {
    Box b;
    b.lo.fill(lo);
    b.hi.fill(hi);
    return b;
}

LatticeDomain::LatticeDomain(double h, std::vector<Point> points) : h_(h), points_(std::move(points)) {
    if (!(h_ > 0)) throw std::invalid_argument("lattice spacing must be positive");
    if (points_.empty()) throw std::invalid_argument("empty domain");
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    index_.reserve(points_.size() * 2);
    index_.insert(points_.begin(), points_.end());
    bbox_ = Box::around(points_);
}

LatticeDomain LatticeDomain::cuboid(double h, const Point& N) {
    Box b;
    for (int j = 0; j < kDim; ++j) {
        if (N[j] < 2) throw std::invalid_argument("cuboid needs N_i >= 2");
        b.lo[j] = 1;
        b.hi[j] = N[j] - 1;
    }
    std::vector<Point> pts;
    pts.reserve(b.size());
    b.for_each([&](const Point& p) { pts.push_back(p); });
    return LatticeDomain(h, std::move(pts));
}

LatticeDomain LatticeDomain::read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open domain file " + path);
    std::string line;
    double h = 1.0;
    std::vector<Point> pts;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("h=", 0) == 0) {
            h = std::stod(line.substr(2));
            continue;
        }
        std::istringstream ls(line);
        Point p{};
        for (int j = 0; j < kDim; ++j)
            if (!(ls >> p[j])) throw std::runtime_error("malformed domain line: " + line);
        pts.push_back(p);
    }
    return LatticeDomain(h, std::move(pts));
}

void LatticeDomain::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    out << "h=" << h_ << "\n";
    for (const auto& p : points_) {
        for (int j = 0; j < kDim; ++j) out << (j ? " " : "") << p[j];
        out << "\n";
    }
}

namespace {

template <class Pred>
bool any_neighbour(const Point& p, Pred pred) {
    for (int j = 0; j < kDim; ++j)
        for (int s : {-1, 1})
            if (pred(shifted(p, j, s))) return true;
    return false;
}

void finish(BoundaryLayers& L) {
    for (auto* v : {&L.gamma_plus, &L.gamma_star, &L.gamma_minus}) std::sort(v->begin(), v->end());
    L.star_index = PointSet(L.gamma_star.begin(), L.gamma_star.end());
}

}  // namespace

BoundaryLayers classify(const LatticeDomain& domain) {
    BoundaryLayers L;
    PointSet star;
    for (const auto& p : domain.points()) {
        bool edge = false;
        for (int j = 0; j < kDim; ++j)
            for (int s : {-1, 1}) {
                Point q = shifted(p, j, s);
                if (!domain.contains(q)) {
                    edge = true;
                    star.insert(q);
                }
            }
        if (edge) L.gamma_plus.push_back(p);
    }
    L.gamma_star.assign(star.begin(), star.end());
    finish(L);
    PointSet minus;
    for (const auto& p : L.gamma_star)
        for (int j = 0; j < kDim; ++j)
            for (int s : {-1, 1}) {
                Point q = shifted(p, j, s);
                if (!domain.contains(q) && !L.in_star(q)) minus.insert(q);
            }
    L.gamma_minus.assign(minus.begin(), minus.end());
    std::sort(L.gamma_minus.begin(), L.gamma_minus.end());
    for (int j = 0; j < kDim; ++j) {
        auto [l, r] = face_sublayers(L, domain, j);
        L.star_sub[j][0] = std::move(l);
        L.star_sub[j][1] = std::move(r);
    }
    return L;
}

BoundaryLayers classify_literal(const LatticeDomain& domain) {
    // int(A): points of A whose 16 neighbours are all in A.
    // Omega_ext := int(complement); gamma+ := Omega \ int(Omega);
    // gamma* := {p : exists j, s with p + s e_j in Omega and p - s e_j in Omega_ext};
    // gamma- := Omega_ext points with a neighbour outside Omega_ext.
    BoundaryLayers L;
    auto in_omega = [&](const Point& p) { return domain.contains(p); };
    auto in_ext = [&](const Point& p) {
        if (in_omega(p)) return false;
        return !any_neighbour(p, in_omega);
    };
    for (const auto& p : domain.points())
        if (any_neighbour(p, [&](const Point& q) { return !in_omega(q); })) L.gamma_plus.push_back(p);
    // every candidate lies within two steps of Omega
    PointSet near(domain.points().begin(), domain.points().end());
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<Point> grow;
        for (const auto& p : near)
            for (int j = 0; j < kDim; ++j)
                for (int s : {-1, 1}) grow.push_back(shifted(p, j, s));
        near.insert(grow.begin(), grow.end());
    }
    for (const auto& p : near) {
        bool star = false;
        for (int j = 0; j < kDim && !star; ++j)
            for (int s : {-1, 1})
                if (in_omega(shifted(p, j, s)) && in_ext(shifted(p, j, -s))) {
                    star = true;
                    break;
                }
        if (star) L.gamma_star.push_back(p);
        if (in_ext(p) && any_neighbour(p, [&](const Point& q) { return !in_ext(q); }))
            L.gamma_minus.push_back(p);
    }
    finish(L);
    for (int j = 0; j < kDim; ++j) {
        auto [l, r] = face_sublayers(L, domain, j);
        L.star_sub[j][0] = std::move(l);
        L.star_sub[j][1] = std::move(r);
    }
    return L;
}

std::pair<std::vector<Point>, std::vector<Point>> face_sublayers(const BoundaryLayers& layers,
                                                                 const LatticeDomain& domain, int j) {
    if (j < 0 || j >= kDim) throw std::out_of_range("axis out of range");
    std::vector<Point> left, right;
    for (const auto& p : layers.gamma_star) {
        if (domain.contains(shifted(p, j, 1))) left.push_back(p);
        if (domain.contains(shifted(p, j, -1))) right.push_back(p);
    }
    return {left, right};
}

bool in_exterior(const LatticeDomain& domain, const BoundaryLayers& layers, const Point& p) {
    return !domain.contains(p) && !layers.in_star(p);
}

std::pair<std::vector<Point>, std::vector<Point>> exterior_sublayers(const BoundaryLayers& layers,
                                                                     const LatticeDomain& domain, int j) {
    if (j < 0 || j >= kDim) throw std::out_of_range("axis out of range");
    std::vector<Point> left, right;
    for (const auto& p : layers.gamma_star) {
        if (in_exterior(domain, layers, shifted(p, j, 1))) left.push_back(p);
        if (in_exterior(domain, layers, shifted(p, j, -1))) right.push_back(p);
    }
    return {left, right};
}

std::function<double(const Point&)> characteristic(const LatticeDomain& domain) {
    return [&domain](const Point& p) { return domain.contains(p) ? 1.0 : 0.0; };
}

std::function<double(const Point&)> characteristic_exterior(const LatticeDomain& domain,
                                                            const BoundaryLayers& layers) {
    return [&domain, &layers](const Point& p) { return in_exterior(domain, layers, p) ? 1.0 : 0.0; };
}

LatticeDomain parse_domain(const std::string& spec, double h) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("domain spec needs a kind prefix: " + spec);
    std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    if (kind == "file") return LatticeDomain::read(arg);
    std::vector<int> n;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) n.push_back(std::stoi(tok));
    if (n.size() == 1) n.assign(kDim, n[0]);
    if (n.size() != kDim) throw std::invalid_argument("cuboid needs 1 or 8 sizes: " + spec);
    Point N{};
    std::copy(n.begin(), n.end(), N.begin());
    if (kind == "cuboid") return LatticeDomain::cuboid(h, N);
    if (kind == "lshape") {
        auto c = LatticeDomain::cuboid(h, N);
        std::vector<Point> pts;
        Point corner;
        corner.fill(1);
        for (const auto& p : c.points())
            if (p != corner) pts.push_back(p);
        return LatticeDomain(h, std::move(pts));
    }
    throw std::invalid_argument("unknown domain kind: " + kind);
}

}  // namespace octolattice
