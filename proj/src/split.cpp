#include "octolattice/split.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace octolattice {

namespace {

struct WordTables {
    std::array<WordInfo, kSplitDim> info{};
    std::array<std::array<int, kNumGen>, kNumGen> pair{};
    std::vector<int> triple;  // 16^3

    WordTables() : triple(kNumGen * kNumGen * kNumGen, -1) {
        info[0].degree = 0;
        for (int g = 0; g < kNumGen; ++g) info[1 + g] = {1, {g, 0, 0}};
        int w = kPairBase;
        for (auto& row : pair) row.fill(-1);
        for (int x = 0; x < kNumGen; ++x)
            for (int y = x + 1; y < kNumGen; ++y) {
                pair[x][y] = w;
                info[w++] = {2, {x, y, 0}};
            }
        for (int x = 0; x < kNumGen; ++x)
            for (int y = x + 1; y < kNumGen; ++y)
                for (int z = y + 1; z < kNumGen; ++z) {
                    triple[(x * kNumGen + y) * kNumGen + z] = w;
                    info[w++] = {3, {x, y, z}};
                }
    }
};

const WordTables& tables() {
    static const WordTables t;
    return t;
}

// Rewriting engine on a dense accumulator.
struct Engine {
    SplitVec& acc;

    void add_gen(int x, double c) { acc[1 + x] += c; }

    // x y
    void pair(int x, int y, double c) {
        if (x == y) return;
        if (x < y) {
            acc[pair_word(x, y)] += c;
        } else {
            acc[pair_word(y, x)] -= c;
            if (gen_delta(x, y)) acc[0] -= c;
        }
    }

    // x (y z) with y < z
    void x_sorted_pair(int x, int y, int z, double c) {
        if (x < y) {
            acc[triple_word(x, y, z)] += c;
        } else if (x == y) {
            return;  // x (x z) = 0
        } else {
            // x (y z) = -y (x z) - delta(x, y) z
            right3(y, x, z, -c);
            if (gen_delta(x, y)) add_gen(z, -c);
        }
    }

    // x (y z)
    void right3(int x, int y, int z, double c) {
        if (y == z) return;
        if (y < z) {
            x_sorted_pair(x, y, z, c);
        } else {
            // y z = -z y - delta(y, z)
            x_sorted_pair(x, z, y, -c);
            if (gen_delta(y, z)) add_gen(x, -c);
        }
    }

    // (x y) z
    void left3(int x, int y, int z, double c) {
        int s = rebracket_sign(gen_index(x), gen_index(y), gen_index(z));
        right3(x, y, z, s * c);
    }
};

struct ProductTables {
    std::vector<std::vector<SplitElement::Term>> gg, gp, pg;
    ProductTables() : gg(kNumGen * kNumGen), gp(kNumGen * kNumPairs), pg(kNumPairs * kNumGen) {
        SplitVec acc;
        auto flush = [&](std::vector<SplitElement::Term>& out) {
            for (int w = 0; w < kSplitDim; ++w)
                if (acc[w] != 0) out.push_back({static_cast<uint16_t>(w), acc[w]});
        };
        for (int x = 0; x < kNumGen; ++x)
            for (int y = 0; y < kNumGen; ++y) {
                acc.fill(0);
                Engine{acc}.pair(x, y, 1.0);
                flush(gg[x * kNumGen + y]);
            }
        for (int x = 0; x < kNumGen; ++x)
            for (int p = 0; p < kNumPairs; ++p) {
                const auto& wi = word_info(kPairBase + p);
                acc.fill(0);
                Engine{acc}.right3(x, wi.g[0], wi.g[1], 1.0);
                flush(gp[x * kNumPairs + p]);
                acc.fill(0);
                Engine{acc}.left3(wi.g[0], wi.g[1], x, 1.0);
                flush(pg[p * kNumGen + x]);
            }
    }
};

const ProductTables& products() {
    static const ProductTables t;
    return t;
}

const std::vector<SplitElement::Term> kEmpty;

}  // namespace

const WordInfo& word_info(int w) { return tables().info.at(w); }

int pair_word(int x, int y) { return tables().pair[x][y]; }

int triple_word(int x, int y, int z) { return tables().triple[(x * kNumGen + y) * kNumGen + z]; }

static std::string gen_name(int g) {
    return "e" + std::to_string(gen_index(g)) + (gen_minus(g) ? "-" : "+");
}

std::string word_to_string(int w) {
    const auto& wi = word_info(w);
    switch (wi.degree) {
        case 0: return "1";
        case 1: return gen_name(wi.g[0]);
        case 2: return gen_name(wi.g[0]) + gen_name(wi.g[1]);
        default: return gen_name(wi.g[0]) + "(" + gen_name(wi.g[1]) + gen_name(wi.g[2]) + ")";
    }
}

int rebracket_sign(const IndexTriple& t) { return rebracket_sign(t.i, t.j, t.k); }

SplitElement SplitElement::scalar(double s) { return word(0, s); }

SplitElement SplitElement::word(int w, double c) {
    SplitElement e;
    if (c != 0) e.terms_.push_back({static_cast<uint16_t>(w), c});
    return e;
}

SplitElement SplitElement::from_dense(const SplitVec& v) {
    SplitElement e;
    for (int w = 0; w < kSplitDim; ++w)
        if (v[w] != 0) e.terms_.push_back({static_cast<uint16_t>(w), v[w]});
    return e;
}

double SplitElement::coeff(int w) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                               [](const Term& t, int v) { return t.word < v; });
    return (it != terms_.end() && it->word == w) ? it->coeff : 0.0;
}

int SplitElement::degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, word_info(t.word).degree);
    return d;
}

SplitVec SplitElement::dense() const {
    SplitVec v{};
    add_to(v);
    return v;
}

void SplitElement::add_to(SplitVec& acc, double s) const {
    for (const auto& t : terms_) acc[t.word] += s * t.coeff;
}

SplitElement& SplitElement::operator+=(const SplitElement& o) {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].word < o.terms_[j].word)) {
            out.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].word < terms_[i].word) {
            out.push_back(o.terms_[j++]);
        } else {
            double c = terms_[i].coeff + o.terms_[j].coeff;
            if (c != 0) out.push_back({terms_[i].word, c});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

SplitElement& SplitElement::operator-=(const SplitElement& o) { return *this += -1.0 * o; }

SplitElement& SplitElement::operator*=(double s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= s;
    return *this;
}

double SplitElement::max_abs() const {
    double m = 0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
}

std::string SplitElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& t : terms_) {
        double c = t.coeff;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        double a = std::abs(c);
        if (t.word == 0) {
            os << a;
        } else {
            if (a != 1) os << a << " ";
            os << word_to_string(t.word);
        }
    }
    return os.str();
}

SplitElement gen(Polarity p, int j) {
    if (j < 0 || j > 7) throw std::out_of_range("generator index out of range");
    return SplitElement::word(1 + gen_id(p, j));
}

SplitElement embed_octonion(const Octonion& a) {
    SplitVec v{};
    for (int j = 0; j < 8; ++j) {
        v[1 + gen_id(Polarity::Plus, j)] = a.c[j];
        v[1 + gen_id(Polarity::Minus, j)] = a.c[j];
    }
    return SplitElement::from_dense(v);
}

const std::vector<SplitElement::Term>& word_product(int a, int b) {
    const auto& wa = word_info(a);
    const auto& wb = word_info(b);
    if (wa.degree + wb.degree > 3)
        throw DegreeOverflow("product degree exceeds 3: " + word_to_string(a) + " * " + word_to_string(b));
    const auto& p = products();
    if (wa.degree == 1 && wb.degree == 1) return p.gg[wa.g[0] * kNumGen + wb.g[0]];
    if (wa.degree == 1 && wb.degree == 2) return p.gp[wa.g[0] * kNumPairs + (b - kPairBase)];
    if (wa.degree == 2 && wb.degree == 1) return p.pg[(a - kPairBase) * kNumGen + wb.g[0]];
    return kEmpty;  // scalar factors are handled by callers
}

void accumulate_product(SplitVec& acc, int a, int b, double s) {
    if (s == 0) return;
    if (a == 0) {
        acc[b] += s;
        return;
    }
    if (b == 0) {
        acc[a] += s;
        return;
    }
    for (const auto& t : word_product(a, b)) acc[t.word] += s * t.coeff;
}

namespace {

struct GenTable {
    std::vector<SplitElement::Term> terms;
    std::vector<uint32_t> offset;  // (g * kTripleBase + w) -> start, size kNumGen*kTripleBase+1
    GenTable() {
        offset.reserve(kNumGen * kTripleBase + 1);
        for (int g = 0; g < kNumGen; ++g)
            for (int w = 0; w < kTripleBase; ++w) {
                offset.push_back(static_cast<uint32_t>(terms.size()));
                if (w == 0) {
                    terms.push_back({static_cast<uint16_t>(1 + g), 1.0});
                } else {
                    const auto& row = word_product(1 + g, w);
                    terms.insert(terms.end(), row.begin(), row.end());
                }
            }
        offset.push_back(static_cast<uint32_t>(terms.size()));
    }
};

}  // namespace

GenProductRow gen_times_word(int g, int w) {
    static const GenTable t;
    if (w >= kTripleBase) throw DegreeOverflow("generator times degree-3 word");
    size_t i = static_cast<size_t>(g) * kTripleBase + w;
    return {t.terms.data() + t.offset[i], t.terms.data() + t.offset[i + 1]};
}

SplitElement mul(const SplitElement& x, const SplitElement& y) {
    SplitVec acc{};
    for (const auto& a : x.terms())
        for (const auto& b : y.terms()) accumulate_product(acc, a.word, b.word, a.coeff * b.coeff);
    return SplitElement::from_dense(acc);
}

bool equals(const SplitElement& x, const SplitElement& y, double tol) {
    return (x - y).max_abs() <= tol;
}

// ---- expressions ----

ExprPtr Expr::num(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Scalar;
    e->value = v;
    return e;
}
ExprPtr Expr::generator(int g) {
    auto e = std::make_shared<Expr>();
    e->kind = Gen;
    e->g = g;
    return e;
}
ExprPtr Expr::sum(std::vector<ExprPtr> a) {
    auto e = std::make_shared<Expr>();
    e->kind = Sum;
    e->args = std::move(a);
    return e;
}
ExprPtr Expr::prod(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Prod;
    e->args = {std::move(a), std::move(b)};
    return e;
}

SplitElement canonical_form(const Expr& e) {
    switch (e.kind) {
        case Expr::Scalar: return SplitElement::scalar(e.value);
        case Expr::Gen: return SplitElement::word(1 + e.g);
        case Expr::Sum: {
            SplitElement s;
            for (const auto& a : e.args) s += canonical_form(*a);
            return s;
        }
        case Expr::Prod: return mul(canonical_form(*e.args[0]), canonical_form(*e.args[1]));
    }
    return {};
}

SplitElement reduce_rebracket_first(int x, int y, int z) {
    SplitVec acc{};
    Engine{acc}.left3(x, y, z, 1.0);
    return SplitElement::from_dense(acc);
}

SplitElement reduce_contract_first(int x, int y, int z) {
    SplitVec inner{};
    Engine{inner}.pair(x, y, 1.0);
    SplitVec acc{};
    Engine eng{acc};
    for (int w = 0; w < kSplitDim; ++w) {
        if (inner[w] == 0) continue;
        const auto& wi = word_info(w);
        if (wi.degree == 0) eng.add_gen(z, inner[w]);
        else eng.left3(wi.g[0], wi.g[1], z, inner[w]);
    }
    return SplitElement::from_dense(acc);
}

// ---- parser ----

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        skip();
        return pos < s.size() && s[pos] == c;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse error at " + std::to_string(pos) + ": " + what);
    }

    ExprPtr expr() {
        std::vector<ExprPtr> terms;
        double sign = 1;
        if (peek('-')) {
            ++pos;
            sign = -1;
        } else if (peek('+')) {
            ++pos;
        }
        terms.push_back(signed_term(sign));
        while (true) {
            if (peek('+')) {
                ++pos;
                terms.push_back(signed_term(1));
            } else if (peek('-')) {
                ++pos;
                terms.push_back(signed_term(-1));
            } else {
                break;
            }
        }
        return terms.size() == 1 ? terms[0] : Expr::sum(terms);
    }

    ExprPtr signed_term(double sign) {
        auto t = term();
        return sign < 0 ? Expr::prod(Expr::num(-1), t) : t;
    }

    // products are left-associative; juxtaposition also multiplies
    ExprPtr term() {
        auto a = factor();
        while (true) {
            skip();
            if (pos >= s.size()) break;
            char c = s[pos];
            if (c == '*') {
                ++pos;
                a = Expr::prod(a, factor());
            } else if (c == '(' || c == 'e' || std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                a = Expr::prod(a, factor());
            } else {
                break;
            }
        }
        return a;
    }

    ExprPtr factor() {
        skip();
        if (pos >= s.size()) fail("unexpected end");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            auto e = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos;
            return e;
        }
        if (c == 'e') {
            ++pos;
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected index");
            int j = s[pos++] - '0';
            if (j > 7) fail("index out of range");
            // a trailing sign is a polarity unless an operand follows it directly ("e1+e2")
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                char nx = pos + 1 < s.size() ? s[pos + 1] : ' ';
                if (nx == ' ' || nx == ')' || nx == '*') {
                    Polarity p = s[pos] == '+' ? Polarity::Plus : Polarity::Minus;
                    ++pos;
                    return Expr::generator(gen_id(p, j));
                }
            }
            return Expr::sum({Expr::generator(gen_id(Polarity::Plus, j)),
                              Expr::generator(gen_id(Polarity::Minus, j))});
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            double v = std::stod(s.substr(pos), &used);
            pos += used;
            return Expr::num(v);
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

}  // namespace

ExprPtr parse_expression(const std::string& text) {
    Parser p{text};
    auto e = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

}  // namespace octolattice
