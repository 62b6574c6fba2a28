#include "octolattice/operators.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace octolattice {

SplitField embed(const OctField& f) {
    SplitField out(f.h);
    for (const auto& kv : f.values) out.set(kv.first, embed_octonion(kv.second));
    return out;
}

namespace {

void add_gen_times(SplitVec& acc, int g, const Octonion& v) {
    for (int k = 0; k < 8; ++k) {
        if (v.c[k] == 0) continue;
        accumulate_product(acc, 1 + g, 1 + gen_id(Polarity::Plus, k), v.c[k]);
        accumulate_product(acc, 1 + g, 1 + gen_id(Polarity::Minus, k), v.c[k]);
    }
}

void add_times_gen(SplitVec& acc, const Octonion& v, int g) {
    for (int k = 0; k < 8; ++k) {
        if (v.c[k] == 0) continue;
        accumulate_product(acc, 1 + gen_id(Polarity::Plus, k), 1 + g, v.c[k]);
        accumulate_product(acc, 1 + gen_id(Polarity::Minus, k), 1 + g, v.c[k]);
    }
}

// plus_fwd: e_j^+ pairs with the forward difference (D+-) or the backward one (D-+).
template <class V>
SplitElement dirac_at(const Field<V>& f, const Point& p, bool plus_fwd) {
    SplitVec acc{};
    for (int j = 0; j < kDim; ++j) {
        V fw = fwd_diff_at(f, p, j);
        V bw = bwd_diff_at(f, p, j);
        add_gen_times(acc, gen_id(Polarity::Plus, j), plus_fwd ? fw : bw);
        add_gen_times(acc, gen_id(Polarity::Minus, j), plus_fwd ? bw : fw);
    }
    return SplitElement::from_dense(acc);
}

template <class V>
SplitField dirac(const Field<V>& f, bool plus_fwd) {
    SplitField out(f.h);
    for (const auto& p : support_star(f)) out.set(p, dirac_at(f, p, plus_fwd));
    return out;
}

}  // namespace

SplitElement dirac_pm_at(const OctField& f, const Point& p) { return dirac_at(f, p, true); }
SplitElement dirac_mp_at(const OctField& f, const Point& p) { return dirac_at(f, p, false); }
namespace {

// Each one-sided difference is merged from the sorted term lists, then hit by its generator.
using Terms = std::vector<SplitElement::Term>;

const Terms kNoTerms;

void merge_diff(const Terms& a, const Terms& b, Terms& out) {
    out.clear();
    size_t i = 0, k = 0;
    while (i < a.size() || k < b.size()) {
        if (k == b.size() || (i < a.size() && a[i].word < b[k].word)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[k].word < a[i].word) {
            out.push_back({b[k].word, -b[k].coeff});
            ++k;
        } else {
            out.push_back({a[i].word, a[i].coeff - b[k].coeff});
            ++i;
            ++k;
        }
    }
}

SplitElement dirac_split_at(const SplitField& f, const Point& p, bool plus_fwd) {
    SplitVec acc{};
    const double inv = 1.0 / f.h;
    const int gp = plus_fwd ? 0 : 1;  // polarity paired with the forward difference
    const int gm = 1 - gp;
    auto terms_at = [&](const Point& q) -> const Terms& {
        auto it = f.values.find(q);
        return it == f.values.end() ? kNoTerms : it->second.terms();
    };
    thread_local Terms diff;
    auto apply = [&](int g) {
        for (const auto& t : diff) {
            auto row = gen_times_word(g, t.word);
            const double c = inv * t.coeff;
            for (auto* r = row.begin; r != row.end; ++r) acc[r->word] += c * r->coeff;
        }
    };
    const Terms& centre = terms_at(p);
    for (int j = 0; j < kDim; ++j) {
        merge_diff(terms_at(shifted(p, j, 1)), centre, diff);
        apply(2 * j + gp);
        merge_diff(centre, terms_at(shifted(p, j, -1)), diff);
        apply(2 * j + gm);
    }
    return SplitElement::from_dense(acc);
}

}  // namespace

SplitElement dirac_pm_at(const SplitField& f, const Point& p) { return dirac_split_at(f, p, true); }
SplitElement dirac_mp_at(const SplitField& f, const Point& p) { return dirac_split_at(f, p, false); }

SplitField dirac_pm(const OctField& f) { return dirac(f, true); }
SplitField dirac_mp(const OctField& f) { return dirac(f, false); }
SplitField dirac_pm(const SplitField& f) {
    SplitField out(f.h);
    for (const auto& p : support_star(f)) out.set(p, dirac_split_at(f, p, true));
    return out;
}
SplitField dirac_mp(const SplitField& f) {
    SplitField out(f.h);
    for (const auto& p : support_star(f)) out.set(p, dirac_split_at(f, p, false));
    return out;
}

SplitElement dirac_right_mp_at(const OctField& g, const Point& p) {
    SplitVec acc{};
    for (int j = 0; j < kDim; ++j) {
        add_times_gen(acc, bwd_diff_at(g, p, j), gen_id(Polarity::Plus, j));
        add_times_gen(acc, fwd_diff_at(g, p, j), gen_id(Polarity::Minus, j));
    }
    return SplitElement::from_dense(acc);
}

SplitField dirac_right_mp(const OctField& g) {
    SplitField out(g.h);
    for (const auto& p : support_star(g)) out.set(p, dirac_right_mp_at(g, p));
    return out;
}

std::vector<Point> stencil_interior(const LatticeDomain& closure) {
    std::vector<Point> out;
    for (const auto& p : closure.points()) {
        bool ok = true;
        for (int j = 0; j < kDim && ok; ++j)
            ok = closure.contains(shifted(p, j, 1)) && closure.contains(shifted(p, j, -1));
        if (ok) out.push_back(p);
    }
    return out;
}

double monogenicity_residual(const OctField& f, const LatticeDomain& closure) {
    double r = 0;
    for (const auto& p : stencil_interior(closure)) r = std::max(r, dirac_pm_at(f, p).max_abs());
    return r;
}

namespace {

// D+- restricted to degree <= 2 words is all that a degree-1 input can produce.
constexpr int kRowWords = kTripleBase;

using Triplet = Eigen::Triplet<double>;

// Rows: (interior point, word); columns: (closure point, component).
std::vector<Triplet> assemble(const LatticeDomain& closure, const std::vector<Point>& interior) {
    std::unordered_map<Point, int, PointHash> row_of;
    for (size_t i = 0; i < interior.size(); ++i) row_of[interior[i]] = static_cast<int>(i);
    std::vector<Triplet> trips;
    const auto& pts = closure.points();
    for (size_t c = 0; c < pts.size(); ++c) {
        const Point& q = pts[c];
        std::vector<Point> near{q};
        for (int j = 0; j < kDim; ++j)
            for (int s : {-1, 1}) near.push_back(shifted(q, j, s));
        for (int k = 0; k < 8; ++k) {
            OctField unitf(closure.h());
            unitf.set(q, Octonion::basis(k));
            for (const auto& p : near) {
                auto it = row_of.find(p);
                if (it == row_of.end()) continue;
                SplitElement d = dirac_pm_at(unitf, p);
                for (const auto& t : d.terms())
                    trips.emplace_back(it->second * kRowWords + t.word, static_cast<int>(c) * 8 + k, t.coeff);
            }
        }
    }
    return trips;
}

}  // namespace

std::vector<OctField> monogenic_basis(const LatticeDomain& closure, double rank_tol) {
    auto interior = stencil_interior(closure);
    const int cols = static_cast<int>(closure.size()) * 8;
    if (cols > 4096) throw std::length_error("monogenic_basis: too many unknowns for dense SVD");
    const int rows = std::max<int>(1, static_cast<int>(interior.size()) * kRowWords);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    for (const auto& t : assemble(closure, interior)) A(t.row(), t.col()) += t.value();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rank_tol * std::max(1.0, smax)) ++rank;
    const Eigen::MatrixXd& V = svd.matrixV();
    std::vector<OctField> out;
    for (int c = rank; c < cols; ++c) {
        OctField f(closure.h());
        for (size_t i = 0; i < closure.size(); ++i) {
            Octonion v;
            for (int k = 0; k < 8; ++k) v.c[k] = V(static_cast<int>(i) * 8 + k, c);
            f.set(closure.points()[i], v);
        }
        out.push_back(std::move(f));
    }
    return out;
}

OctField project_monogenic(const OctField& f0, const LatticeDomain& closure, double* residual) {
    auto interior = stencil_interior(closure);
    const int cols = static_cast<int>(closure.size()) * 8;
    const int rows = static_cast<int>(interior.size()) * kRowWords;
    Eigen::SparseMatrix<double> At(cols, rows);
    {
        auto trips = assemble(closure, interior);
        for (auto& t : trips) t = Triplet(t.col(), t.row(), t.value());
        At.setFromTriplets(trips.begin(), trips.end());
    }
    Eigen::VectorXd x(cols);
    for (size_t i = 0; i < closure.size(); ++i) {
        Octonion v = f0.at(closure.points()[i]);
        for (int k = 0; k < 8; ++k) x(static_cast<int>(i) * 8 + k) = v.c[k];
    }
    // x <- x - A^T y with y = argmin |A^T y - x|; a few refinement sweeps absorb the
    // iterative tolerance.
    Eigen::LeastSquaresConjugateGradient<Eigen::SparseMatrix<double>> lscg;
    lscg.setTolerance(1e-14);
    lscg.setMaxIterations(20000);
    lscg.compute(At);
    Eigen::SparseMatrix<double> A = At.transpose();
    for (int sweep = 0; sweep < 6; ++sweep) {
        Eigen::VectorXd y = lscg.solve(x);
        x -= At * y;
        if ((A * x).cwiseAbs().maxCoeff() <= 1e-13) break;
    }
    OctField f(closure.h());
    for (size_t i = 0; i < closure.size(); ++i) {
        Octonion v;
        for (int k = 0; k < 8; ++k) v.c[k] = x(static_cast<int>(i) * 8 + k);
        f.set(closure.points()[i], v);
    }
    if (residual) *residual = monogenicity_residual(f, closure);
    return f;
}

OctField linear_field(const std::array<std::array<double, 8>, 8>& c, const Octonion& c0,
                      const std::vector<Point>& points, double h) {
    OctField f(h);
    for (const auto& p : points) {
        Octonion v = c0;
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) v.c[k] += c[j][k] * p[j] * h;
        f.set(p, v);
    }
    return f;
}

void write_field(const OctField& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    out << "h=" << f.h << "\n";
    for (const auto& p : f.support()) {
        for (int j = 0; j < kDim; ++j) out << p[j] << " ";
        Octonion v = f.at(p);
        for (int k = 0; k < 8; ++k) out << v.c[k] << (k < 7 ? " " : "\n");
    }
}

OctField read_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field file " + path);
    OctField f;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("h=", 0) == 0) {
            f.h = std::stod(line.substr(2));
            continue;
        }
        std::istringstream ls(line);
        Point p{};
        Octonion v;
        for (int j = 0; j < kDim; ++j)
            if (!(ls >> p[j])) throw std::runtime_error("malformed field line: " + line);
        for (int k = 0; k < 8; ++k)
            if (!(ls >> v.c[k])) throw std::runtime_error("malformed field line: " + line);
        f.set(p, v);
    }
    return f;
}

}  // namespace octolattice
