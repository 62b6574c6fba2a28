#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "octolattice/harness.hpp"
#include "octolattice/octonion.hpp"

using namespace octolattice;

TEST(Octonion, TableMatchesDoubling) {
    const auto& t = cayley_table();
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            Octonion d = doubling_product(Octonion::basis(i), Octonion::basis(j));
            Octonion e = Octonion::basis(t[i][j].k, t[i][j].sign);
            EXPECT_EQ(d, e) << i << " " << j;
        }
}

TEST(Octonion, GoldenFile) {
    std::ifstream in(std::string(OCTOLATTICE_DATA_DIR) + "/cayley_golden.txt");
    ASSERT_TRUE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), cayley_golden_text());
}

TEST(Octonion, Units) {
    const auto& t = cayley_table();
    for (int i = 1; i < 8; ++i) {
        EXPECT_EQ(t[i][i].k, 0);
        EXPECT_EQ(t[i][i].sign, -1);
        EXPECT_EQ(t[0][i].k, i);
        EXPECT_EQ(t[i][0].sign, 1);
        for (int j = 1; j < 8; ++j)
            if (j != i) {
                EXPECT_EQ(t[i][j].k, t[j][i].k);
                EXPECT_EQ(t[i][j].sign, -t[j][i].sign);
            }
    }
}

TEST(Octonion, FanoSetsCoverEachPairOnce) {
    std::set<std::pair<int, int>> seen;
    for (const auto& s : fano_index_sets())
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) EXPECT_TRUE(seen.insert({s[a], s[b]}).second);
    EXPECT_EQ(seen.size(), 21u);
}

TEST(Octonion, AntiassociativeMatchesAssociator) {
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) {
                auto a = associator(Octonion::basis(i), Octonion::basis(j), Octonion::basis(k));
                EXPECT_EQ(a.max_abs() != 0, is_antiassociative_triple(i, j, k)) << i << j << k;
                if (a.max_abs() != 0) {
                    auto l = oct_mul(oct_mul(Octonion::basis(i), Octonion::basis(j)), Octonion::basis(k));
                    auto r = oct_mul(Octonion::basis(i), oct_mul(Octonion::basis(j), Octonion::basis(k)));
                    EXPECT_EQ(l, -r);
                }
            }
}

TEST(Octonion, AlternativeAndNormed) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1, 1);
    auto rnd = [&] {
        Octonion o;
        for (auto& x : o.c) x = U(rng);
        return o;
    };
    for (int n = 0; n < 100; ++n) {
        Octonion a = rnd(), b = rnd();
        EXPECT_LT(associator(a, a, b).max_abs(), 1e-14);
        EXPECT_LT(associator(a, b, b).max_abs(), 1e-14);
        EXPECT_NEAR((a * b).norm(), a.norm() * b.norm(), 1e-14);
    }
}
