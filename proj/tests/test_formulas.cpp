#include <gtest/gtest.h>

#include "octolattice/formulas.hpp"
#include "octolattice/harness.hpp"
#include "octolattice/operators.hpp"

using namespace octolattice;

namespace {

const KernelTable& table8() {
    static KernelTable t = KernelTable::compute(8, 1.0);
    return t;
}

std::vector<Point> closure_of(const LatticeDomain& dom, const BoundaryLayers& L) {
    std::vector<Point> pts = dom.points();
    pts.insert(pts.end(), L.gamma_star.begin(), L.gamma_star.end());
    return pts;
}

}  // namespace

TEST(Formulas, SymbolsDifferOnlyOnAntiassociativeTriples) {
    for (int w = 0; w < kNumGen; ++w)
        for (int jp = 0; jp < kNumGen; ++jp)
            for (int k = 0; k < 8; ++k) {
                const int i = gen_index(w), j = gen_index(jp);
                auto d = left_symbol(w, jp, k) - right_symbol(w, jp, k);
                if (is_antiassociative_triple(i, j, k))
                    EXPECT_TRUE(equals(left_symbol(w, jp, k), -1.0 * right_symbol(w, jp, k), 0));
                else
                    EXPECT_EQ(d.max_abs(), 0.0) << w << " " << jp << " " << k;
            }
}

TEST(Formulas, StokesWhole) {
    Box b = Box::cube(0, 1);
    auto rep = stokes_whole(random_field(1, b), random_field(2, b));
    EXPECT_TRUE(rep.pass);
    EXPECT_LT(rep.residual, 1e-10);
    EXPECT_GT(rep.groups.at("associator-volume"), 0.0);
}

TEST(Formulas, StokesHalfSpaces) {
    Box b = Box::cube(0, 1);
    b.lo[7] = -1;
    for (bool up : {true, false}) {
        auto rep = stokes_half(random_field(3, b), random_field(4, b), up);
        EXPECT_TRUE(rep.pass) << up;
        EXPECT_LT(rep.residual, 1e-10);
    }
}

TEST(Formulas, HalfSpaceAwayFromBoundaryIsWhole) {
    Box b = Box::cube(0, 1);
    b.lo[7] = 3;
    b.hi[7] = 4;
    OctField f = random_field(5, b), g = random_field(6, b);
    auto a = stokes_terms(region_half(f, true), octonion_weight(g), f);
    auto w = stokes_terms(region_whole(f), octonion_weight(g), f);
    EXPECT_EQ((a.lhs - w.lhs).max_abs(), 0.0);
    EXPECT_EQ((a.rhs() - w.rhs()).max_abs(), 0.0);
}

TEST(Formulas, StokesCuboidMatchesBoundedEvaluator) {
    Point N;
    N.fill(3);
    Box b = Box::cube(0, 3);
    auto rep = stokes_cuboid(random_field(7, b), random_field(8, b), N);
    EXPECT_TRUE(rep.pass);
    EXPECT_LE(rep.extra.at("bounded-group-difference"), 1e-12);
}

TEST(Formulas, StokesBoundedLShape) {
    auto dom = parse_domain("lshape:3");
    auto L = classify(dom);
    auto pts = closure_of(dom, L);
    auto rep = stokes_bounded(random_field(9, pts), random_field(10, pts), dom, false);
    EXPECT_TRUE(rep.pass);
    EXPECT_LT(rep.residual, 1e-10);
}

TEST(Formulas, BorelPompeiuReproducesTorusTarget) {
    auto dom = parse_domain("cuboid:3");
    auto L = classify(dom);
    OctField f = random_field(11, closure_of(dom, L));
    Point in{}, out{};
    in.fill(1);
    out.fill(7);
    for (const Point& m : {in, out}) {
        auto bp = borel_pompeiu(table8(), f, m, Setting::Interior, &dom, &L);
        EXPECT_LT((bp.value - bp.corrected).max_abs(), 1e-12);
        EXPECT_EQ(bp.chi, dom.contains(m) ? 1.0 : 0.0);
        auto c = cauchy_formula(table8(), f, m, Setting::Interior, &dom, &L);
        EXPECT_EQ((bp.value - (c.value - c.groups.volume)).max_abs(), 0.0);
        EXPECT_FALSE(c.precondition_ok);
    }
}

TEST(Formulas, CauchyOfConstant) {
    auto dom = parse_domain("cuboid:3");
    auto L = classify(dom);
    std::array<std::array<double, 8>, 8> zero{};
    Octonion c0 = Octonion::basis(0, 1.5) + Octonion::basis(6, -0.5);
    OctField f = linear_field(zero, c0, closure_of(dom, L), 1.0);
    Point m{};
    m.fill(2);
    auto c = cauchy_formula(table8(), f, m, Setting::Interior, &dom, &L);
    EXPECT_TRUE(c.precondition_ok);
    EXPECT_LT((c.value - c.corrected).max_abs(), 1e-12);
    EXPECT_LT(c.error(), 1e-4);
}
