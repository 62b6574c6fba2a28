#pragma once

#include <vector>

#include "octolattice/field.hpp"

namespace octolattice {

// Single-point stencils.
template <class V>
V fwd_diff_at(const Field<V>& f, const Point& p, int j) {
    V v = f.at(shifted(p, j, 1));
    v -= f.at(p);
    return v * (1.0 / f.h);
}
template <class V>
V bwd_diff_at(const Field<V>& f, const Point& p, int j) {
    V v = f.at(p);
    v -= f.at(shifted(p, j, -1));
    return v * (1.0 / f.h);
}

template <class V>
Field<V> fwd_diff(const Field<V>& f, int j) {
    Field<V> out(f.h);
    for (const auto& p : f.support()) {
        for (const Point& q : {p, shifted(p, j, -1)}) {
            if (out.values.count(q)) continue;
            out.set(q, fwd_diff_at(f, q, j));
        }
    }
    return out;
}

template <class V>
Field<V> bwd_diff(const Field<V>& f, int j) {
    Field<V> out(f.h);
    for (const auto& p : f.support()) {
        for (const Point& q : {p, shifted(p, j, 1)}) {
            if (out.values.count(q)) continue;
            out.set(q, bwd_diff_at(f, q, j));
        }
    }
    return out;
}

// Component-wise sum_j h^-2 (f(m+e_j) - 2 f(m) + f(m-e_j)).
template <class V>
V star_laplacian_at(const Field<V>& f, const Point& p) {
    V acc{};
    V c = f.at(p);
    for (int j = 0; j < kDim; ++j) {
        acc += f.at(shifted(p, j, 1));
        acc += f.at(shifted(p, j, -1));
        acc -= 2.0 * c;
    }
    return acc * (1.0 / (f.h * f.h));
}

template <class V>
Field<V> star_laplacian(const Field<V>& f) {
    Field<V> out(f.h);
    for (const auto& p : support_star(f)) out.set(p, star_laplacian_at(f, p));
    return out;
}

SplitField embed(const OctField& f);

// Left actions: D+- = sum_j e_j^+ d^{+j} + e_j^- d^{-j};  D-+ swaps the differences.
SplitElement dirac_pm_at(const OctField& f, const Point& p);
SplitElement dirac_mp_at(const OctField& f, const Point& p);
SplitElement dirac_pm_at(const SplitField& f, const Point& p);
SplitElement dirac_mp_at(const SplitField& f, const Point& p);

SplitField dirac_pm(const OctField& f);
SplitField dirac_mp(const OctField& f);
SplitField dirac_pm(const SplitField& f);
SplitField dirac_mp(const SplitField& f);

// Right action g D-+ = sum_j (d^{-j} g) e_j^+ + (d^{+j} g) e_j^-.
SplitElement dirac_right_mp_at(const OctField& g, const Point& p);
SplitField dirac_right_mp(const OctField& g);

// Max canonical norm of D+- f over the points of `closure` whose 16 neighbours are in it.
double monogenicity_residual(const OctField& f, const LatticeDomain& closure);

// Points of `closure` whose full stencil lies in `closure`.
std::vector<Point> stencil_interior(const LatticeDomain& closure);

// Orthonormal basis (Euclidean on the stacked components) of the kernel of f -> D+- f on
// the stencil interior; f lives on `closure`.  Dense SVD; throws beyond 4096 unknowns.
std::vector<OctField> monogenic_basis(const LatticeDomain& closure, double rank_tol = 1e-9);

// Orthogonal projection of f0 (restricted to `closure`) onto the same kernel, computed with
// sparse least squares.  `residual` receives the monogenicity residual of the result.
OctField project_monogenic(const OctField& f0, const LatticeDomain& closure, double* residual = nullptr);

// f(m) = sum_{j,k} c[j][k] (m_j h) e_k + c0; monogenic iff c is symmetric and traceless.
OctField linear_field(const std::array<std::array<double, 8>, 8>& c, const Octonion& c0,
                      const std::vector<Point>& points, double h);

}  // namespace octolattice
