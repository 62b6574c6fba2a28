#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "octolattice/hardy.hpp"
#include "octolattice/harness.hpp"

using namespace octolattice;

namespace {

double involution_defect(int axis, HardySide side, const std::array<double, 8>& xi, double h, bool literal) {
    HardyOptions opt;
    opt.literal_radical = literal;
    auto M = hardy_kernel(axis, side, xi, h, opt);
    auto S = M * M;
    S -= car::Cplx(Complex(1));
    return S.max_abs();
}

}  // namespace

TEST(Car, Relations) {
    using car::Real;
    for (int j = 0; j < 8; ++j) {
        Real p = Real::generator(j, false), m = Real::generator(j, true);
        Real u = p + m, v = p - m;
        EXPECT_EQ((u * u).coeff(0), -1.0);
        EXPECT_EQ((u * u).max_abs(), 1.0);
        EXPECT_EQ((v * v).coeff(0), 1.0);
        EXPECT_EQ((p * p).max_abs(), 0.0);
        Real anti = p * m + m * p;
        EXPECT_EQ(anti.coeff(0), -1.0);
        for (int k = j + 1; k < 8; ++k) {
            Real q = Real::generator(k, true);
            EXPECT_EQ((p * q + q * p).max_abs(), 0.0);
        }
    }
}

TEST(Car, ProductIsAssociative) {
    using car::Real;
    Real a = Real::generator(0, false) + Real::generator(3, true) * 2.0;
    Real b = Real::generator(3, false) - Real::generator(5, false);
    Real c = Real::generator(0, true) + Real::generator(5, true);
    EXPECT_LT(((a * b) * c - a * (b * c)).max_abs(), 1e-15);
}

TEST(Hardy, Symbols) {
    const double xi = 0.3, h = 0.5;
    Complex f = symbol_fwd(xi, h), b = symbol_bwd(xi, h);
    EXPECT_NEAR(f.real(), -0.022457844128, 1e-12);
    EXPECT_NEAR(f.imag(), -0.298876264947, 1e-12);
    EXPECT_NEAR(std::abs(f), std::abs(b), 1e-15);
    // product of the two is the 1-D Laplacian symbol -(4/h^2) sin^2(xi h / 2)
    Complex lap = f * b;
    EXPECT_NEAR(lap.real(), -4 / (h * h) * std::pow(std::sin(xi * h / 2), 2), 1e-14);
    EXPECT_NEAR(lap.imag(), 0.0, 1e-14);
}

TEST(Hardy, KernelInvolution) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-std::numbers::pi, std::numbers::pi);
    double corrected = 0, literal = 0;
    for (int n = 0; n < 40; ++n) {
        std::array<double, 8> xi;
        for (auto& x : xi) x = U(rng);
        for (int i = 0; i < kDim; ++i) {
            corrected = std::max(corrected, involution_defect(i, HardySide::Plus, xi, 1.0, false));
            corrected = std::max(corrected, involution_defect(i, HardySide::Minus, xi, 1.0, false));
            literal = std::max(literal, involution_defect(i, HardySide::Minus, xi, 1.0, true));
        }
    }
    EXPECT_LT(corrected, 1e-8);
    EXPECT_GT(literal, 1e-2);
}

TEST(Hardy, LayerSymbolsRejectZeroFrequency) {
    Freq7 xi{};
    EXPECT_THROW(layer_symbols(xi, 1.0), std::domain_error);
    xi[0] = 0.7;
    auto L = layer_symbols(xi, 1.0);
    EXPECT_GT(L.dbar, 0.0);
}

TEST(Hardy, FaceProjection) {
    Box face = Box::cube(0, 3);
    face.lo[5] = face.hi[5] = 2;
    OctField f = random_field(21, face);
    Octonion mean;
    for (const auto& [p, v] : f.values) mean += v;
    mean *= 1.0 / double(f.size());
    for (auto& [p, v] : f.values) v -= mean;
    auto data = embed_data(f);
    for (HardySide side : {HardySide::Plus, HardySide::Minus}) {
        auto H1 = apply_face(5, side, data, 1.0, {});
        auto H2 = apply_face(5, side, H1, 1.0, {});
        EXPECT_LT(max_abs(combine(H2, 1, data, -1)), 1e-9);
        auto P = combine(data, 0.5, H1, 0.5);
        auto PP = combine(P, 0.5, apply_face(5, side, P, 1.0, {}), 0.5);
        EXPECT_LT(max_abs(combine(PP, 1, P, -1)), 1e-9);
    }
}

TEST(Hardy, OctonionPartRoundTrip) {
    OctField f = random_field(22, Box::cube(0, 1), 1.0, 0.5);
    double residue = -1;
    OctField g = octonion_part(embed_data(f), 0.5, &residue);
    EXPECT_EQ(residue, 0.0);
    for (const auto& p : f.support()) EXPECT_EQ(g.at(p), f.at(p));
}

TEST(Hardy, MembershipOfZero) {
    Point N;
    N.fill(3);
    auto dom = LatticeDomain::cuboid(1.0, N);
    auto L = classify(dom);
    auto m = hardy_membership(CarData{}, HardySide::Minus, dom, L, 1e-12);
    EXPECT_TRUE(m.member);
    EXPECT_EQ(m.residual, 0.0);
}
