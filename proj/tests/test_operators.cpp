#include <gtest/gtest.h>

#include <filesystem>

#include "octolattice/harness.hpp"
#include "octolattice/operators.hpp"

using namespace octolattice;

namespace {

double factorization_residual(const OctField& f, bool pm) {
    SplitField lap = embed(star_laplacian(f));
    SplitField d2 = pm ? dirac_pm(dirac_pm(f)) : dirac_mp(dirac_mp(f));
    double r = 0;
    for (const auto& p : d2.support()) r = std::max(r, (d2.at(p) + lap.at(p)).max_abs());
    for (const auto& p : lap.support()) r = std::max(r, (d2.at(p) + lap.at(p)).max_abs());
    return r;
}

}  // namespace

TEST(Operators, Differences) {
    OctField f(0.5);
    Point p{};
    f.set(p, Octonion::basis(3, 2.0));
    EXPECT_EQ(fwd_diff_at(f, shifted(p, 4, -1), 4).c[3], 4.0);
    EXPECT_EQ(bwd_diff_at(f, p, 4).c[3], 4.0);
    EXPECT_EQ(star_laplacian_at(f, p).c[3], -128.0);
    EXPECT_EQ(star_laplacian_at(f, shifted(p, 0, 1)).c[3], 8.0);
}

TEST(Operators, Factorization) {
    for (double h : {1.0, 0.5}) {
        OctField f = random_field(11, Box::cube(0, 1), 1.0, h);
        EXPECT_LT(factorization_residual(f, true), 1e-12 / (h * h));
        EXPECT_LT(factorization_residual(f, false), 1e-12 / (h * h));
    }
}

TEST(Operators, SplitInputAgreesWithOctonionInput) {
    OctField f = random_field(12, Box::cube(0, 1));
    SplitField e = embed(f);
    Point p{};
    p[3] = 1;
    EXPECT_LT((dirac_pm_at(f, p) - dirac_pm_at(e, p)).max_abs(), 1e-15);
    EXPECT_LT((dirac_mp_at(f, p) - dirac_mp_at(e, p)).max_abs(), 1e-15);
}

TEST(Operators, DiracOfConstantVanishes) {
    std::vector<Point> pts;
    Box::cube(0, 2).for_each([&](const Point& p) { pts.push_back(p); });
    std::array<std::array<double, 8>, 8> c{};
    OctField f = linear_field(c, Octonion::basis(5, 3.0), pts, 1.0);
    LatticeDomain cl(1.0, pts);
    EXPECT_EQ(monogenicity_residual(f, cl), 0.0);
}

TEST(Operators, LinearFields) {
    std::vector<Point> pts;
    Box::cube(0, 2).for_each([&](const Point& p) { pts.push_back(p); });
    LatticeDomain cl(1.0, pts);
    std::array<std::array<double, 8>, 8> sym{};
    sym[1][2] = sym[2][1] = 1.0;
    sym[0][0] = 1.0;
    sym[3][3] = -1.0;
    EXPECT_LT(monogenicity_residual(linear_field(sym, {}, pts, 1.0), cl), 1e-14);
    std::array<std::array<double, 8>, 8> skew{};
    skew[1][2] = 1.0;
    EXPECT_GT(monogenicity_residual(linear_field(skew, {}, pts, 1.0), cl), 0.1);
}

TEST(Operators, RightAction) {
    OctField g = random_field(13, Box::cube(0, 1));
    Point p{};
    SplitElement expect;
    for (int j = 0; j < kDim; ++j) {
        expect += embed_octonion(bwd_diff_at(g, p, j)) * gen(Polarity::Plus, j);
        expect += embed_octonion(fwd_diff_at(g, p, j)) * gen(Polarity::Minus, j);
    }
    EXPECT_LT((dirac_right_mp_at(g, p) - expect).max_abs(), 1e-15);
}

TEST(Operators, FieldFileRoundTrip) {
    OctField f = random_field(14, Box::cube(0, 1), 1.0, 0.25);
    auto path = (std::filesystem::temp_directory_path() / "octolattice_field_test.txt").string();
    write_field(f, path);
    OctField g = read_field(path);
    EXPECT_EQ(g.h, 0.25);
    EXPECT_EQ(g.support(), f.support());
    for (const auto& p : f.support()) EXPECT_EQ(g.at(p), f.at(p));
    std::filesystem::remove(path);
}
