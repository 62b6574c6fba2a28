#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "octolattice/field.hpp"
#include "octolattice/green.hpp"
#include "octolattice/lattice.hpp"

namespace octolattice {

// Coefficients of a split-valued weight on the 16 generator words (index gen_id).
using Weight = std::array<double, kNumGen>;
using WeightFn = std::function<Weight(const Point&)>;

// Octonion g -> sum_i g_i (e_i^+ + e_i^-).
WeightFn octonion_weight(const OctField& g);
// m -> E(r - m) for the given table and variant.
WeightFn kernel_weight(const KernelTable& table, Variant v, const Point& m);

// Volume points and per-axis sub-layers; left[j] points p have p + e_j in the volume set,
// right[j] points have p - e_j in it.
struct Region {
    std::string name;
    std::vector<Point> volume;
    std::array<std::array<std::vector<Point>, 2>, kDim> sub;
};

Region region_whole(const OctField& f);
Region region_half(const OctField& f, bool upper);
Region region_bounded(const LatticeDomain& domain, const BoundaryLayers& layers);
Region region_exterior(const LatticeDomain& domain, const BoundaryLayers& layers, const OctField& f);
// Index convention {0..N_i}: volume [1, N_i-1]^8, faces m_j = 0 (left) and m_j = N_j (right)
// with the other indices in [1, N_i - 1].
Region region_cuboid(const Point& N);
// Exterior with the sub-layers of Omega in swapped roles.
Region region_exterior_swapped(const LatticeDomain& domain, const BoundaryLayers& layers, const OctField& f);

struct TermGroups {
    SplitElement lhs;             // h^8 sum_X [(g D-+) f + g (D+- f)]
    SplitElement volume;          // h^8 sum_X g (D+- f)
    SplitElement assoc_volume;    // 2 h^8 sum_X sum_{anti-assoc} g_i e_i (e_j d f_k e_k)
    SplitElement boundary_left;   // -h^7 sum_j sum_{left_j} [g(r)(e_j^+ f(r+e_j)) + g(r+e_j)(e_j^- f(r))]
    SplitElement boundary_right;  // +h^7 sum_j sum_{right_j} [g(r-e_j)(e_j^+ f(r)) + g(r)(e_j^- f(r-e_j))]
    SplitElement assoc_left;      // +2 x (left sum restricted to anti-associative index triples)
    SplitElement assoc_right;     // -2 x (right sum restricted likewise)

    SplitElement rhs() const;
    std::map<std::string, double> norms() const;
};

TermGroups stokes_terms(const Region& region, const WeightFn& g, const OctField& f);

struct FormulaReport {
    std::string formula;
    std::string domain;
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
    std::map<std::string, double> groups;
    std::map<std::string, double> extra;
};

FormulaReport stokes_whole(const OctField& f, const OctField& g, double tol = 1e-10);
FormulaReport stokes_half(const OctField& f, const OctField& g, bool upper, double tol = 1e-10);
// Printed half-space form: boundary sum over i in {1..6}, k in 1..6, k != i, coefficient +2.
FormulaReport stokes_half_literal(const OctField& f, const OctField& g, bool upper, double tol = 1e-10);
FormulaReport stokes_cuboid(const OctField& f, const OctField& g, const Point& N, double tol = 1e-10);
FormulaReport stokes_bounded(const OctField& f, const OctField& g, const LatticeDomain& domain, bool exterior,
                             double tol = 1e-10);
FormulaReport stokes_exterior_swapped(const OctField& f, const OctField& g, const LatticeDomain& domain,
                                      double tol = 1e-10);

enum class Setting { Interior, Exterior, UpperHalf, LowerHalf };

struct Representation {
    SplitElement value;      // evaluated formula
    SplitElement target;     // chi(m) f(m)
    SplitElement corrected;  // chi(m) f(m) - T^-8 sum_X f: what the torus kernel reproduces exactly
    TermGroups groups;
    double chi = 0;
    // Cauchy only: max |D+- f| over the volume points, checked against the monogenicity
    // precondition (violations are reported here, never thrown).
    double monogenicity = 0;
    bool precondition_ok = true;
    double error() const { return (value - target).max_abs(); }
};

// Borel-Pompeiu: value = -L + R + 2AV + 2AL - 2AR - V with g = E^{-+}(. - m).
// Equals chi_X(m) f(m) up to the torus defect T^-8 sum_X f.
Representation borel_pompeiu(const KernelTable& E, const OctField& f, const Point& m, Setting s,
                             const LatticeDomain* domain = nullptr, const BoundaryLayers* layers = nullptr);
// Same with the volume term dropped.
Representation cauchy_formula(const KernelTable& E, const OctField& f, const Point& m, Setting s,
                              const LatticeDomain* domain = nullptr, const BoundaryLayers* layers = nullptr);
// Interior (+) / exterior (-) Cauchy transform at the listed points.  f must cover
// Omega u gamma* (interior) or the exterior collar (exterior); the volume associator term
// differentiates f inside the volume set.
SplitField cauchy_transform(const KernelTable& E, const OctField& f, bool interior, const LatticeDomain& domain,
                            const BoundaryLayers& layers, const std::vector<Point>& points);

// D+- C[f](m) for m away from gamma+ (interior) or gamma- (exterior).  The transform splits
// as C = BP + V; the first part is a degree-1 field (higher-degree remainder is measured)
// and D+- is applied to it directly, the second carries the whole kernel and is
// differentiated kernel-first: D_m E(r - m) = -(D-+ E)(r - m).
struct TransformDerivative {
    SplitElement value;
    double dropped_bp = 0;      // discarded degree >= 2 part of BP near m
    double dropped_kernel = 0;  // discarded non-scalar part of D-+ E
    double defect_bound = 0;    // T^-8 * |sum_X D+- f|
};
TransformDerivative cauchy_transform_derivative(const KernelTable& E, const OctField& f, bool interior,
                                                const LatticeDomain& domain, const BoundaryLayers& layers,
                                                const Point& m);

// Tensors used by the evaluator, exposed for tests:
//   left  (e_w e_jp)(e_k^+ + e_k^-),  right  e_w (e_jp (e_k^+ + e_k^-)).
const SplitElement& left_symbol(int w, int jp, int k);
const SplitElement& right_symbol(int w, int jp, int k);

}  // namespace octolattice
