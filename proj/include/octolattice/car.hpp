#pragma once

// Associative algebra generated by the 16 split generators e_j^{+-} with
//   e_a e_b + e_b e_a = -delta(a, b) for opposite polarities of one axis, 0 otherwise.
// Internally the orthogonal basis u_j = e_j^+ + e_j^-, v_j = e_j^+ - e_j^- is used
// (u_j^2 = -1, v_j^2 = +1, all distinct pairs anticommuting), so monomials are
// bitmasks (bit 2j = u_j, bit 2j+1 = v_j) and products are sign computations.
// embed(e_k) = u_k, so octonion data sits on the single-bit masks 1 << 2k.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace octolattice::car {

using Mono = std::uint32_t;
using Complex = std::complex<double>;

inline int product_sign(Mono a, Mono b) {
    int swaps = 0;
    for (Mono x = a >> 1; x; x >>= 1) swaps += std::popcount(x & b);
    swaps += std::popcount(a & b & 0x5555u);  // u_j^2 = -1
    return (swaps & 1) ? -1 : 1;
}

template <class S>
class Element {
public:
    using Term = std::pair<Mono, S>;

    Element() = default;
    explicit Element(S scalar) {
        if (scalar != S{}) terms_.push_back({0, scalar});
    }
    static Element mono(Mono m, S c = S{1}) {
        Element e;
        e.terms_.push_back({m, c});
        return e;
    }
    // e_j^{+} (minus = false) or e_j^{-}
    static Element generator(int j, bool minus) {
        Element e;
        e.terms_.push_back({Mono{1} << (2 * j), S{0.5}});
        e.terms_.push_back({Mono{1} << (2 * j + 1), minus ? S{-0.5} : S{0.5}});
        return e;
    }

    const std::vector<Term>& terms() const { return terms_; }

    S coeff(Mono m) const {
        for (const auto& t : terms_)
            if (t.first == m) return t.second;
        return S{};
    }

    Element& operator+=(const Element& o) {
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
                out.push_back(terms_[i++]);
            } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
                out.push_back(o.terms_[j++]);
            } else {
                S c = terms_[i].second + o.terms_[j].second;
                if (c != S{}) out.push_back({terms_[i].first, c});
                ++i;
                ++j;
            }
        }
        terms_ = std::move(out);
        return *this;
    }
    Element& operator-=(const Element& o) { return *this += o * S{-1}; }
    Element& operator*=(S s) {
        for (auto& t : terms_) t.second *= s;
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, S s) { return a *= s; }

    friend Element operator*(const Element& a, const Element& b) {
        std::vector<Term> raw;
        raw.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_)
                raw.push_back({x.first ^ y.first, S(product_sign(x.first, y.first)) * x.second * y.second});
        return Element::from_unsorted(std::move(raw));
    }

    double max_abs() const {
        double m = 0;
        for (const auto& t : terms_) m = std::max(m, std::abs(t.second));
        return m;
    }

    static Element from_unsorted(std::vector<Term> raw) {
        std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        Element e;
        for (const auto& t : raw) {
            if (!e.terms_.empty() && e.terms_.back().first == t.first) e.terms_.back().second += t.second;
            else e.terms_.push_back(t);
        }
        std::erase_if(e.terms_, [](const Term& t) { return t.second == S{}; });
        return e;
    }

private:
    std::vector<Term> terms_;  // sorted by monomial
};

using Real = Element<double>;
using Cplx = Element<Complex>;

}  // namespace octolattice::car
