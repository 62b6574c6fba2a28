#include <gtest/gtest.h>

#include <filesystem>

#include "octolattice/lattice.hpp"

using namespace octolattice;

TEST(Lattice, BoxIndexing) {
    Box b = Box::cube(-1, 1);
    EXPECT_EQ(b.size(), 6561u);
    for (size_t i : {size_t(0), size_t(1), size_t(3280), size_t(6560)}) EXPECT_EQ(b.index(b.point(i)), i);
    Point last = b.point(1);
    EXPECT_EQ(last[7], 0);
    EXPECT_EQ(last[0], -1);
    EXPECT_EQ(b.dilated(1).size(), 390625u);
}

TEST(Lattice, CuboidLayerCounts) {
    auto dom = parse_domain("cuboid:3");
    auto L = classify(dom);
    EXPECT_EQ(dom.size(), 256u);
    EXPECT_EQ(L.gamma_plus.size(), 256u);
    EXPECT_EQ(L.gamma_star.size(), 2048u);
    EXPECT_EQ(L.gamma_minus.size(), 9216u);
    for (int j = 0; j < kDim; ++j) {
        auto [l, r] = face_sublayers(L, dom, j);
        EXPECT_EQ(l.size(), 128u);
        EXPECT_EQ(r.size(), 128u);
    }
}

TEST(Lattice, LShapeCounts) {
    auto dom = parse_domain("lshape:3");
    auto L = classify(dom);
    EXPECT_EQ(dom.size(), 255u);
    EXPECT_EQ(L.gamma_plus.size(), 255u);
    EXPECT_EQ(L.gamma_star.size(), 2041u);
    EXPECT_EQ(L.gamma_minus.size(), 9188u);
}

TEST(Lattice, LayersAreDisjoint) {
    auto dom = parse_domain("lshape:4");
    auto L = classify(dom);
    PointSet minus(L.gamma_minus.begin(), L.gamma_minus.end());
    for (const auto& p : L.gamma_star) {
        EXPECT_FALSE(dom.contains(p));
        EXPECT_FALSE(minus.count(p));
    }
    for (const auto& p : L.gamma_plus) EXPECT_TRUE(dom.contains(p));
    EXPECT_FALSE(in_exterior(dom, L, L.gamma_star.front()));
    EXPECT_TRUE(in_exterior(dom, L, L.gamma_minus.front()));
}

TEST(Lattice, Characteristic) {
    auto dom = parse_domain("cuboid:3");
    auto L = classify(dom);
    auto chi = characteristic(dom);
    auto chx = characteristic_exterior(dom, L);
    Point in{}, star{}, far{};
    in.fill(1);
    star.fill(1);
    star[2] = 0;
    far.fill(9);
    EXPECT_EQ(chi(in), 1.0);
    EXPECT_EQ(chi(star), 0.0);
    EXPECT_EQ(chx(in), 0.0);
    EXPECT_EQ(chx(far), 1.0);
}

TEST(Lattice, FileRoundTrip) {
    auto dom = parse_domain("lshape:3", 0.5);
    auto path = (std::filesystem::temp_directory_path() / "octolattice_mask_test.txt").string();
    dom.write(path);
    auto back = parse_domain("file:" + path, 0.5);
    EXPECT_EQ(back.points(), dom.points());
    EXPECT_EQ(back.h(), 0.5);
    std::filesystem::remove(path);
}

TEST(Lattice, ParseErrors) {
    EXPECT_ANY_THROW(parse_domain("sphere:3"));
    EXPECT_ANY_THROW(parse_domain("file:/nonexistent/mask.txt"));
    EXPECT_ANY_THROW(parse_domain("cuboid:1,2"));
}
