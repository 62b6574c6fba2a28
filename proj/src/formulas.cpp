#include "octolattice/formulas.hpp"

#include <cmath>

#include "octolattice/operators.hpp"

namespace octolattice {

namespace {

constexpr int kSym = kNumGen * kNumGen * 8;
inline int sym_index(int w, int jp, int k) { return (w * kNumGen + jp) * 8 + k; }

struct Symbols {
    std::vector<SplitElement> left, right;
    std::vector<char> assoc;  // anti-associative (index(w), index(jp), k)
    Symbols() : left(kSym), right(kSym), assoc(kSym, 0) {
        for (int w = 0; w < kNumGen; ++w)
            for (int jp = 0; jp < kNumGen; ++jp)
                for (int k = 0; k < 8; ++k) {
                    SplitElement ek = gen(Polarity::Plus, k) + gen(Polarity::Minus, k);
                    SplitElement a = SplitElement::word(1 + w), b = SplitElement::word(1 + jp);
                    int i = sym_index(w, jp, k);
                    left[i] = mul(mul(a, b), ek);
                    right[i] = mul(a, mul(b, ek));
                    assoc[i] = is_antiassociative_triple(gen_index(w), gen_index(jp), k) ? 1 : 0;
                }
    }
};

const Symbols& symbols() {
    static const Symbols s;
    return s;
}

using Sums = std::vector<double>;  // kSym scalar bilinear sums

template <class Pred>
SplitElement contract(const Sums& S, const std::vector<SplitElement>& T, Pred keep, double scale) {
    SplitVec acc{};
    for (int i = 0; i < kSym; ++i) {
        if (S[i] == 0 || !keep(i)) continue;
        T[i].add_to(acc, S[i]);
    }
    for (auto& v : acc) v *= scale;
    return SplitElement::from_dense(acc);
}

struct RawSums {
    Sums vol_left = Sums(kSym, 0.0);   // (d g) f, left-bracketed
    Sums vol_right = Sums(kSym, 0.0);  // g (d f), right-bracketed
    Sums bnd_left = Sums(kSym, 0.0);
    Sums bnd_right = Sums(kSym, 0.0);
};

void add_outer(Sums& S, const Weight& g, int jp, const Octonion& f, double s = 1.0) {
    for (int w = 0; w < kNumGen; ++w) {
        const double a = s * g[w];
        if (a == 0) continue;
        double* row = &S[sym_index(w, jp, 0)];
        for (int k = 0; k < 8; ++k) row[k] += a * f.c[k];
    }
}

RawSums accumulate(const Region& region, const WeightFn& g, const OctField& f) {
    RawSums R;
    const double inv = 1.0 / f.h;
    for (const auto& r : region.volume) {
        const Octonion fr = f.at(r);
        const Weight gr = g(r);
        for (int j = 0; j < kDim; ++j) {
            const Point up = shifted(r, j, 1), dn = shifted(r, j, -1);
            const Weight gu = g(up), gd = g(dn);
            Weight dm, dp;  // d^{-j} g, d^{+j} g
            for (int w = 0; w < kNumGen; ++w) {
                dm[w] = (gr[w] - gd[w]) * inv;
                dp[w] = (gu[w] - gr[w]) * inv;
            }
            add_outer(R.vol_left, dm, 2 * j, fr);
            add_outer(R.vol_left, dp, 2 * j + 1, fr);
            const Octonion fu = f.at(up), fd = f.at(dn);
            add_outer(R.vol_right, gr, 2 * j, (fu - fr) * inv);
            add_outer(R.vol_right, gr, 2 * j + 1, (fr - fd) * inv);
        }
    }
    for (int j = 0; j < kDim; ++j) {
        for (const auto& r : region.sub[j][0]) {
            const Point up = shifted(r, j, 1);
            add_outer(R.bnd_left, g(r), 2 * j, f.at(up));
            add_outer(R.bnd_left, g(up), 2 * j + 1, f.at(r));
        }
        for (const auto& r : region.sub[j][1]) {
            const Point dn = shifted(r, j, -1);
            add_outer(R.bnd_right, g(dn), 2 * j, f.at(r));
            add_outer(R.bnd_right, g(r), 2 * j + 1, f.at(dn));
        }
    }
    return R;
}

TermGroups groups_from(const RawSums& R, double h) {
    const auto& sym = symbols();
    auto all = [](int) { return true; };
    auto aa = [&](int i) { return sym.assoc[i] != 0; };
    const double h8 = std::pow(h, 8), h7 = std::pow(h, 7);
    TermGroups t;
    t.volume = contract(R.vol_right, sym.right, all, h8);
    t.lhs = contract(R.vol_left, sym.left, all, h8) + t.volume;
    t.assoc_volume = contract(R.vol_right, sym.right, aa, 2 * h8);
    t.boundary_left = contract(R.bnd_left, sym.right, all, -h7);
    t.boundary_right = contract(R.bnd_right, sym.right, all, h7);
    t.assoc_left = contract(R.bnd_left, sym.right, aa, 2 * h7);
    t.assoc_right = contract(R.bnd_right, sym.right, aa, -2 * h7);
    return t;
}

std::vector<Point> filter(const std::vector<Point>& pts, const std::function<bool(const Point&)>& keep) {
    std::vector<Point> out;
    for (const auto& p : pts)
        if (keep(p)) out.push_back(p);
    return out;
}

FormulaReport make_report(const std::string& formula, const std::string& domain, const TermGroups& t,
                          const SplitElement& rhs, double tol) {
    FormulaReport r;
    r.formula = formula;
    r.domain = domain;
    r.residual = (t.lhs - rhs).max_abs();
    r.tolerance = tol;
    r.pass = r.residual <= tol;
    r.groups = t.norms();
    return r;
}

}  // namespace

const SplitElement& left_symbol(int w, int jp, int k) { return symbols().left.at(sym_index(w, jp, k)); }
const SplitElement& right_symbol(int w, int jp, int k) { return symbols().right.at(sym_index(w, jp, k)); }

WeightFn octonion_weight(const OctField& g) {
    return [&g](const Point& p) {
        Weight w{};
        auto it = g.values.find(p);
        if (it == g.values.end()) return w;
        for (int i = 0; i < 8; ++i) w[2 * i] = w[2 * i + 1] = it->second.c[i];
        return w;
    };
}

WeightFn kernel_weight(const KernelTable& table, Variant v, const Point& m) {
    return [&table, v, m](const Point& p) { return table.weights(v, p - m); };
}

SplitElement TermGroups::rhs() const {
    return assoc_volume + boundary_left + boundary_right + assoc_left + assoc_right;
}

std::map<std::string, double> TermGroups::norms() const {
    return {{"lhs", lhs.max_abs()},
            {"volume", volume.max_abs()},
            {"associator-volume", assoc_volume.max_abs()},
            {"boundary-left", boundary_left.max_abs()},
            {"boundary-right", boundary_right.max_abs()},
            {"associator-boundary-left", assoc_left.max_abs()},
            {"associator-boundary-right", assoc_right.max_abs()}};
}

TermGroups stokes_terms(const Region& region, const WeightFn& g, const OctField& f) {
    return groups_from(accumulate(region, g, f), f.h);
}

Region region_whole(const OctField& f) {
    Region r;
    r.name = "whole";
    r.volume = support_star(f);
    return r;
}

Region region_half(const OctField& f, bool upper) {
    Region r;
    r.name = upper ? "upper-half" : "lower-half";
    auto star = support_star(f);
    r.volume = filter(star, [&](const Point& p) { return upper ? p[7] >= 1 : p[7] <= -1; });
    r.sub[7][upper ? 0 : 1] = filter(star, [](const Point& p) { return p[7] == 0; });
    return r;
}

Region region_bounded(const LatticeDomain& domain, const BoundaryLayers& layers) {
    Region r;
    r.name = "bounded-interior";
    r.volume = domain.points();
    r.sub = layers.star_sub;
    return r;
}

Region region_exterior(const LatticeDomain& domain, const BoundaryLayers& layers, const OctField& f) {
    Region r;
    r.name = "bounded-exterior";
    r.volume = filter(support_star(f), [&](const Point& p) { return in_exterior(domain, layers, p); });
    for (int j = 0; j < kDim; ++j) {
        auto [l, rt] = exterior_sublayers(layers, domain, j);
        r.sub[j][0] = std::move(l);
        r.sub[j][1] = std::move(rt);
    }
    return r;
}

Region region_exterior_swapped(const LatticeDomain& domain, const BoundaryLayers& layers, const OctField& f) {
    Region r;
    r.name = "bounded-exterior-swapped";
    r.volume = filter(support_star(f), [&](const Point& p) { return in_exterior(domain, layers, p); });
    for (int j = 0; j < kDim; ++j) {
        r.sub[j][0] = layers.star_sub[j][1];
        r.sub[j][1] = layers.star_sub[j][0];
    }
    return r;
}

Region region_cuboid(const Point& N) {
    Region r;
    r.name = "cuboid";
    Box inner;
    for (int j = 0; j < kDim; ++j) {
        if (N[j] < 2) throw std::invalid_argument("malformed cuboid: N_i must be >= 2");
        inner.lo[j] = 1;
        inner.hi[j] = N[j] - 1;
    }
    inner.for_each([&](const Point& p) { r.volume.push_back(p); });
    for (int j = 0; j < kDim; ++j) {
        Box face = inner;
        face.lo[j] = face.hi[j] = 0;
        face.for_each([&](const Point& p) { r.sub[j][0].push_back(p); });
        face.lo[j] = face.hi[j] = N[j];
        face.for_each([&](const Point& p) { r.sub[j][1].push_back(p); });
    }
    return r;
}

FormulaReport stokes_whole(const OctField& f, const OctField& g, double tol) {
    auto t = stokes_terms(region_whole(f), octonion_weight(g), f);
    return make_report("stokes-whole", "whole lattice", t, t.rhs(), tol);
}

FormulaReport stokes_half(const OctField& f, const OctField& g, bool upper, double tol) {
    auto t = stokes_terms(region_half(f, upper), octonion_weight(g), f);
    return make_report(upper ? "stokes-upper-half" : "stokes-lower-half", upper ? "m7 >= 1" : "m7 <= -1", t,
                       t.rhs(), tol);
}

FormulaReport stokes_half_literal(const OctField& f, const OctField& g, bool upper, double tol) {
    auto R = accumulate(region_half(f, upper), octonion_weight(g), f);
    auto t = groups_from(R, f.h);
    const auto& sym = symbols();
    auto printed = [](int i) {
        int w = i / (kNumGen * 8), jp = (i / 8) % kNumGen, k = i % 8;
        int idx = gen_index(w);
        return gen_index(jp) == 7 && idx >= 1 && idx <= 6 && k >= 1 && k <= 6 && k != idx;
    };
    SplitElement bnd = contract(upper ? R.bnd_left : R.bnd_right, sym.right, printed, 2 * std::pow(f.h, 7));
    auto rep = make_report(upper ? "stokes-upper-half-printed" : "stokes-lower-half-printed",
                           upper ? "m7 >= 1" : "m7 <= -1", t, t.assoc_volume + bnd, tol);
    rep.groups["printed-boundary"] = bnd.max_abs();
    return rep;
}

FormulaReport stokes_cuboid(const OctField& f, const OctField& g, const Point& N, double tol) {
    auto t = stokes_terms(region_cuboid(N), octonion_weight(g), f);
    std::string dom = "cuboid N=";
    for (int j = 0; j < kDim; ++j) dom += (j ? "," : "") + std::to_string(N[j]);
    auto rep = make_report("stokes-cuboid", dom, t, t.rhs(), tol);
    // same mask through the generic classifier
    auto domain = LatticeDomain::cuboid(f.h, N);
    auto layers = classify(domain);
    auto b = stokes_terms(region_bounded(domain, layers), octonion_weight(g), f);
    double diff = 0;
    for (auto [x, y] : {std::pair{&t.lhs, &b.lhs}, {&t.volume, &b.volume}, {&t.assoc_volume, &b.assoc_volume},
                        {&t.boundary_left, &b.boundary_left}, {&t.boundary_right, &b.boundary_right},
                        {&t.assoc_left, &b.assoc_left}, {&t.assoc_right, &b.assoc_right}})
        diff = std::max(diff, (*x - *y).max_abs());
    rep.extra["bounded-group-difference"] = diff;
    return rep;
}

FormulaReport stokes_bounded(const OctField& f, const OctField& g, const LatticeDomain& domain, bool exterior,
                             double tol) {
    auto layers = classify(domain);
    Region region = exterior ? region_exterior(domain, layers, f) : region_bounded(domain, layers);
    auto t = stokes_terms(region, octonion_weight(g), f);
    return make_report(exterior ? "stokes-exterior" : "stokes-interior",
                       "mask of " + std::to_string(domain.size()) + " points", t, t.rhs(), tol);
}

FormulaReport stokes_exterior_swapped(const OctField& f, const OctField& g, const LatticeDomain& domain,
                                      double tol) {
    auto layers = classify(domain);
    auto t = stokes_terms(region_exterior_swapped(domain, layers, f), octonion_weight(g), f);
    return make_report("stokes-exterior-swapped-layers", "mask of " + std::to_string(domain.size()) + " points",
                       t, t.rhs(), tol);
}

namespace {

struct SettingRegion {
    Region region;
    std::function<bool(const Point&)> inside;
};

SettingRegion setting_region(Setting s, const OctField& f, const LatticeDomain* domain,
                             const BoundaryLayers* layers) {
    switch (s) {
        case Setting::UpperHalf: return {region_half(f, true), [](const Point& p) { return p[7] >= 1; }};
        case Setting::LowerHalf: return {region_half(f, false), [](const Point& p) { return p[7] <= -1; }};
        case Setting::Interior:
            if (!domain || !layers) throw std::invalid_argument("interior setting needs a domain");
            return {region_bounded(*domain, *layers), [domain](const Point& p) { return domain->contains(p); }};
        case Setting::Exterior:
            if (!domain || !layers) throw std::invalid_argument("exterior setting needs a domain");
            return {region_exterior(*domain, *layers, f),
                    [domain, layers](const Point& p) { return in_exterior(*domain, *layers, p); }};
    }
    throw std::logic_error("unknown setting");
}

Representation represent(const KernelTable& E, const OctField& f, const Point& m, Setting s,
                         const LatticeDomain* domain, const BoundaryLayers* layers, bool with_volume) {
    auto sr = setting_region(s, f, domain, layers);
    Representation rep;
    rep.groups = stokes_terms(sr.region, kernel_weight(E, Variant::MP, m), f);
    rep.value = rep.groups.rhs();
    if (with_volume) rep.value -= rep.groups.volume;
    if (!with_volume) {
        for (const auto& r : sr.region.volume) rep.monogenicity = std::max(rep.monogenicity, dirac_pm_at(f, r).max_abs());
        rep.precondition_ok = rep.monogenicity <= 1e-10;
    }
    rep.chi = sr.inside(m) ? 1.0 : 0.0;
    rep.target = embed_octonion(f.at(m)) * rep.chi;
    Octonion total;
    for (const auto& r : sr.region.volume) total += f.at(r);
    rep.corrected = rep.target - embed_octonion(total) * std::pow(static_cast<double>(E.T()), -kDim);
    return rep;
}

}  // namespace

Representation borel_pompeiu(const KernelTable& E, const OctField& f, const Point& m, Setting s,
                             const LatticeDomain* domain, const BoundaryLayers* layers) {
    return represent(E, f, m, s, domain, layers, true);
}

Representation cauchy_formula(const KernelTable& E, const OctField& f, const Point& m, Setting s,
                              const LatticeDomain* domain, const BoundaryLayers* layers) {
    return represent(E, f, m, s, domain, layers, false);
}

SplitField cauchy_transform(const KernelTable& E, const OctField& f, bool interior, const LatticeDomain& domain,
                            const BoundaryLayers& layers, const std::vector<Point>& points) {
    Region region = interior ? region_bounded(domain, layers) : region_exterior(domain, layers, f);
    SplitField out(f.h);
    for (const auto& m : points) out.set(m, stokes_terms(region, kernel_weight(E, Variant::MP, m), f).rhs());
    return out;
}

TransformDerivative cauchy_transform_derivative(const KernelTable& E, const OctField& f, bool interior,
                                                const LatticeDomain& domain, const BoundaryLayers& layers,
                                                const Point& m) {
    Region region = interior ? region_bounded(domain, layers) : region_exterior(domain, layers, f);
    TransformDerivative out;

    // BP part on the stencil of m, truncated to degree <= 1
    SplitField bp(f.h);
    std::vector<Point> stencil{m};
    for (int j = 0; j < kDim; ++j)
        for (int s : {-1, 1}) stencil.push_back(shifted(m, j, s));
    for (const auto& p : stencil) {
        auto t = stokes_terms(region, kernel_weight(E, Variant::MP, p), f);
        SplitElement v = t.rhs() - t.volume;
        SplitVec d = v.dense();
        for (int w = kPairBase; w < kSplitDim; ++w) {
            out.dropped_bp = std::max(out.dropped_bp, std::abs(d[w]));
            d[w] = 0;
        }
        bp.set(p, SplitElement::from_dense(d));
    }
    SplitVec acc = dirac_pm_at(bp, m).dense();

    // kernel-first part: h^8 sum_r [-(D-+ E)(r - m)]_scalar (D+- f)(r)
    const double h8 = std::pow(f.h, 8);
    SplitVec dsum{};
    for (const auto& r : region.volume) {
        SplitElement df = dirac_pm_at(f, r);
        df.add_to(dsum);
        const Point n = r - m;
        SplitField e(f.h);
        e.set(n, E.fundamental(Variant::MP, n));
        for (int j = 0; j < kDim; ++j)
            for (int s : {-1, 1}) e.set(shifted(n, j, s), E.fundamental(Variant::MP, shifted(n, j, s)));
        SplitElement de = dirac_mp_at(e, n);
        double c = 0;
        for (const auto& t : de.terms()) {
            if (t.word == 0) c = t.coeff;
            else out.dropped_kernel = std::max(out.dropped_kernel, std::abs(t.coeff));
        }
        df.add_to(acc, -c * h8);
    }
    out.value = SplitElement::from_dense(acc);
    double smax = 0;
    for (double v : dsum) smax = std::max(smax, std::abs(v));
    out.defect_bound = std::pow(static_cast<double>(E.T()), -kDim) * smax * h8;
    return out;
}

}  // namespace octolattice
