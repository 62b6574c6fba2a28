#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "octolattice/octonion.hpp"

namespace octolattice {

enum class Polarity : int { Plus = 0, Minus = 1 };

// Generator e_j^{+-} encoded as 2*j + (minus ? 1 : 0); this is also the canonical order
// (index ascending, + before -).
constexpr int gen_id(Polarity p, int j) { return 2 * j + static_cast<int>(p); }
constexpr int gen_index(int g) { return g >> 1; }
constexpr bool gen_minus(int g) { return (g & 1) != 0; }
// e_x e_y + e_y e_x = -delta(x, y)
constexpr int gen_delta(int x, int y) { return (x ^ y) == 1 ? 1 : 0; }

// Canonical words: 0 = scalar, 1..16 generators, then sorted pairs x<y (meaning x y),
// then strictly sorted triples x<y<z (meaning x (y z)).
constexpr int kNumGen = 16;
constexpr int kNumPairs = 120;
constexpr int kNumTriples = 560;
constexpr int kSplitDim = 1 + kNumGen + kNumPairs + kNumTriples;  // 697
constexpr int kPairBase = 1 + kNumGen;
constexpr int kTripleBase = kPairBase + kNumPairs;

struct WordInfo {
    int degree = 0;
    std::array<int, 3> g{};  // generators, left to right
};

const WordInfo& word_info(int w);
int pair_word(int x, int y);            // x < y
int triple_word(int x, int y, int z);   // x < y < z
std::string word_to_string(int w);

class DegreeOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using SplitVec = std::array<double, kSplitDim>;

class SplitElement {
public:
    struct Term {
        uint16_t word;
        double coeff;
    };

    SplitElement() = default;
    static SplitElement scalar(double s);
    static SplitElement word(int w, double c = 1.0);
    static SplitElement from_dense(const SplitVec& v);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    double coeff(int w) const;
    int degree() const;
    SplitVec dense() const;
    void add_to(SplitVec& acc, double s = 1.0) const;

    SplitElement& operator+=(const SplitElement& o);
    SplitElement& operator-=(const SplitElement& o);
    SplitElement& operator*=(double s);
    friend SplitElement operator+(SplitElement a, const SplitElement& b) { return a += b; }
    friend SplitElement operator-(SplitElement a, const SplitElement& b) { return a -= b; }
    friend SplitElement operator*(SplitElement a, double s) { return a *= s; }
    friend SplitElement operator*(double s, SplitElement a) { return a *= s; }
    friend SplitElement operator-(SplitElement a) { return a *= -1.0; }

    double max_abs() const;
    std::string to_string() const;

private:
    std::vector<Term> terms_;  // sorted by word, no zeros
};

SplitElement gen(Polarity p, int j);
SplitElement embed_octonion(const Octonion& a);

// Bilinear product; each word pair is bracketed as (x-word)(y-word) and reduced.
// Throws DegreeOverflow if any word pair exceeds degree 3.
SplitElement mul(const SplitElement& x, const SplitElement& y);
inline SplitElement operator*(const SplitElement& x, const SplitElement& y) { return mul(x, y); }

// Sparse product table for canonical words a, b (degree sum <= 3).
const std::vector<SplitElement::Term>& word_product(int a, int b);

// acc += s * (word a)(word b)
void accumulate_product(SplitVec& acc, int a, int b, double s);

// Left multiplication by a generator, flattened: terms of g * (word w) for words of degree <= 2.
struct GenProductRow {
    const SplitElement::Term* begin;
    const SplitElement::Term* end;
};
GenProductRow gen_times_word(int g, int w);

int rebracket_sign(const IndexTriple& t);

// Unreduced bracketed expression (degree <= 3 after expansion), used by the parser
// and by the relation suite.
struct Expr {
    enum Kind { Scalar, Gen, Sum, Prod } kind = Scalar;
    double value = 0;  // Scalar
    int g = 0;         // Gen
    std::vector<std::shared_ptr<Expr>> args;  // Sum (n-ary), Prod (2)

    static std::shared_ptr<Expr> num(double v);
    static std::shared_ptr<Expr> generator(int g);
    static std::shared_ptr<Expr> sum(std::vector<std::shared_ptr<Expr>> a);
    static std::shared_ptr<Expr> prod(std::shared_ptr<Expr> a, std::shared_ptr<Expr> b);
};
using ExprPtr = std::shared_ptr<Expr>;

// Expands sums, re-associates left-bracketed triples with rebracket_sign, contracts and
// orders generators; the result is the canonical form.
SplitElement canonical_form(const Expr& e);
inline SplitElement canonical_form(const SplitElement& x) { return x; }

// Alternative strategy used by the confluence scan: contract the inner pair of (x y) z
// first, then re-associate what is left.
SplitElement reduce_contract_first(int x, int y, int z);
SplitElement reduce_rebracket_first(int x, int y, int z);

bool equals(const SplitElement& x, const SplitElement& y, double tol);

// Parses e.g. "(e1+ * e2-) * e3+ - 2 e5".  Plain "e5" means e5+ + e5-.
ExprPtr parse_expression(const std::string& text);

}  // namespace octolattice
