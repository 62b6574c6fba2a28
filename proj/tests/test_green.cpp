#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "octolattice/green.hpp"

using namespace octolattice;

namespace {

const KernelTable& table8() {
    static KernelTable t = KernelTable::compute(8, 1.0);
    return t;
}

Point at(int a, int b = 0) {
    Point m{};
    m[0] = a;
    m[1] = b;
    return m;
}

double neg_laplacian(const KernelTable& E, const Point& m) {
    double s = 16 * E.G(m);
    for (int j = 0; j < kDim; ++j) s -= E.G(shifted(m, j, 1)) + E.G(shifted(m, j, -1));
    return s / (E.h() * E.h());
}

}  // namespace

TEST(Green, TorusValues) {
    const auto& E = table8();
    EXPECT_NEAR(E.G(at(0)), 0.0674153523, 1e-10);
    EXPECT_NEAR(E.G(at(1)), 0.0049153560, 1e-10);
    EXPECT_NEAR(E.G(at(2)), 0.0004007653, 1e-10);
    EXPECT_NEAR(E.G(at(1, 1)), 0.0007735456, 1e-10);
}

TEST(Green, BesselValues) {
    EXPECT_NEAR(green_bessel(at(0)), 0.0674154383, 1e-10);
    EXPECT_NEAR(green_bessel(at(1)), 0.0049154383, 1e-10);
    EXPECT_NEAR(green_bessel(at(2)), 0.0004007662, 1e-10);
    // -Lap G = delta at the origin, and all 16 neighbours agree by symmetry
    EXPECT_NEAR(green_bessel(at(0)) - green_bessel(at(1)), 1.0 / 16, 1e-11);
}

TEST(Green, TorusDelta) {
    const auto& E = table8();
    const double defect = std::pow(8.0, -8);
    EXPECT_NEAR(neg_laplacian(E, at(0)), 1 - defect, 1e-12);
    EXPECT_NEAR(neg_laplacian(E, at(1)), -defect, 1e-12);
    EXPECT_NEAR(neg_laplacian(E, at(3, 2)), -defect, 1e-12);
    EXPECT_EQ(E.defect(), defect);
}

TEST(Green, Symmetry) {
    const auto& E = table8();
    Point m{1, 2, 0, 3, 1, 0, 2, 1};
    Point r = m;
    std::reverse(r.begin(), r.end());
    EXPECT_EQ(E.G(m), E.G(-m));
    EXPECT_EQ(E.G(m), E.G(r));
    EXPECT_EQ(E.G(shifted(m, 2, 8)), E.G(m));
}

TEST(Green, Weights) {
    const auto& E = table8();
    auto pm = E.weights(Variant::PM, at(0));
    auto mp = E.weights(Variant::MP, at(0));
    const double d = (1 - std::pow(8.0, -8)) / 16;
    EXPECT_NEAR(pm[gen_id(Polarity::Plus, 0)], -d, 1e-15);
    EXPECT_NEAR(pm[gen_id(Polarity::Minus, 0)], d, 1e-15);
    EXPECT_EQ(mp[gen_id(Polarity::Plus, 3)], pm[gen_id(Polarity::Minus, 3)]);
    auto w = E.weights(Variant::PM, at(1, 2));
    EXPECT_EQ(E.K(2, Polarity::Plus, at(1, 2)), w[gen_id(Polarity::Plus, 2)]);
    EXPECT_EQ(E.K(1, Polarity::Minus, at(1, 2)), w[gen_id(Polarity::Minus, 1)]);
}

TEST(Green, Scaling) {
    const auto& E1 = table8();
    for (double h : {0.5, 0.25}) {
        auto Eh = KernelTable::compute(8, h);
        for (const Point& m : {at(0), at(1), at(2, 1)}) {
            EXPECT_NEAR(Eh.G(m), std::pow(h, -6) * E1.G(m), 1e-12 * std::pow(h, -6));
            auto a = Eh.weights(Variant::MP, m), b = E1.weights(Variant::MP, m);
            for (int g = 0; g < kNumGen; ++g) EXPECT_NEAR(a[g], std::pow(h, -7) * b[g], 1e-10 * std::pow(h, -7));
        }
    }
}

TEST(Green, FileRoundTrip) {
    auto E = KernelTable::compute(4, 0.5);
    auto path = (std::filesystem::temp_directory_path() / "octolattice_green_test.octk").string();
    E.save(path);
    EXPECT_EQ(std::filesystem::file_size(path), 20u + 8u * 65536u);
    auto back = KernelTable::load(path);
    EXPECT_EQ(back.T(), 4);
    EXPECT_EQ(back.h(), 0.5);
    EXPECT_EQ(back.reduced(), E.reduced());
    {
        std::fstream io(path, std::ios::in | std::ios::out | std::ios::binary);
        io.write("XXXX", 4);
    }
    EXPECT_THROW(KernelTable::load(path), std::runtime_error);
    std::filesystem::remove(path);
}

TEST(Green, RejectsBadSizes) {
    EXPECT_THROW(KernelTable::compute(7, 1.0), std::invalid_argument);
    EXPECT_THROW(KernelTable::compute(2, 1.0), std::invalid_argument);
    EXPECT_THROW(KernelTable::compute(8, 0.0), std::invalid_argument);
}
