#include <gtest/gtest.h>

#include "octolattice/split.hpp"

using namespace octolattice;

namespace {

std::string reduce(const std::string& text) { return canonical_form(*parse_expression(text)).to_string(); }

}  // namespace

TEST(Split, Dimensions) {
    EXPECT_EQ(kSplitDim, 697);
    int counts[4] = {};
    for (int w = 0; w < kSplitDim; ++w) ++counts[word_info(w).degree];
    EXPECT_EQ(counts[0], 1);
    EXPECT_EQ(counts[1], 16);
    EXPECT_EQ(counts[2], 120);
    EXPECT_EQ(counts[3], 560);
}

TEST(Split, ReduceExamples) {
    EXPECT_EQ(reduce("(e1+ * e2-) * e3+"), "-e1+(e2-e3+)");
    EXPECT_EQ(reduce("e1+ * (e2- * e3+)"), "e1+(e2-e3+)");
    EXPECT_EQ(reduce("e1+ * e1-"), "e1+e1-");
    EXPECT_EQ(reduce("e1- * e1+"), "-1 - e1+e1-");
    EXPECT_EQ(reduce("e1+ * e1+"), "0");
    EXPECT_EQ(reduce("e1 * e2"), "e1+e2+ + e1+e2- + e1-e2+ + e1-e2-");
}

TEST(Split, Anticommutation) {
    for (int x = 0; x < kNumGen; ++x)
        for (int y = 0; y < kNumGen; ++y) {
            auto gx = SplitElement::word(1 + x), gy = SplitElement::word(1 + y);
            auto s = gx * gy + gy * gx;
            EXPECT_TRUE(equals(s, SplitElement::scalar(-gen_delta(x, y)), 0)) << x << " " << y;
        }
}

TEST(Split, EmbeddedUnitsSquareToMinusOne) {
    for (int k = 1; k < 8; ++k) {
        auto e = embed_octonion(Octonion::basis(k));
        EXPECT_TRUE(equals(e * e, SplitElement::scalar(-1), 0)) << k;
    }
}

TEST(Split, RebracketingSign) {
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) {
                if (i == j || j == k || i == k) continue;
                auto a = SplitElement::word(1 + gen_id(Polarity::Plus, i));
                auto b = SplitElement::word(1 + gen_id(Polarity::Minus, j));
                auto c = SplitElement::word(1 + gen_id(Polarity::Plus, k));
                auto l = (a * b) * c, r = a * (b * c);
                EXPECT_TRUE(equals(l, rebracket_sign(i, j, k) * r, 0));
            }
}

TEST(Split, Confluence) {
    for (int x = 0; x < kNumGen; ++x)
        for (int y = 0; y < kNumGen; ++y)
            for (int z = 0; z < kNumGen; ++z)
                EXPECT_TRUE(equals(reduce_rebracket_first(x, y, z), reduce_contract_first(x, y, z), 0));
}

TEST(Split, DegreeOverflow) {
    EXPECT_THROW(reduce("e1+ * e2+ * e3+ * e4+"), DegreeOverflow);
    EXPECT_THROW(parse_expression("e9+"), std::invalid_argument);
    EXPECT_THROW(parse_expression("(e1+"), std::invalid_argument);
}

TEST(Split, DenseRoundTrip) {
    auto e = canonical_form(*parse_expression("2 e3- + (e1+ * e5-) - 0.5"));
    EXPECT_TRUE(equals(SplitElement::from_dense(e.dense()), e, 0));
    EXPECT_EQ(e.coeff(0), -0.5);
    EXPECT_EQ(e.degree(), 2);
}
