#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace octolattice {

// Signed basis product e_i e_j = sign * e_k.
struct BasisProduct {
    int sign = 0;
    int k = 0;
};

using CayleyTable = std::array<std::array<BasisProduct, 8>, 8>;

// Generated once from the generating relations; throws std::logic_error if the
// relations are inconsistent or do not determine every cell.
const CayleyTable& cayley_table();

struct Octonion {
    std::array<double, 8> c{};

    static Octonion basis(int i, double s = 1.0) {
        Octonion o;
        o.c[i] = s;
        return o;
    }

    double& operator[](int i) { return c[i]; }
    double operator[](int i) const { return c[i]; }

    Octonion& operator+=(const Octonion& o) {
        for (int i = 0; i < 8; ++i) c[i] += o.c[i];
        return *this;
    }
    Octonion& operator-=(const Octonion& o) {
        for (int i = 0; i < 8; ++i) c[i] -= o.c[i];
        return *this;
    }
    Octonion& operator*=(double s) {
        for (auto& x : c) x *= s;
        return *this;
    }
    friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
    friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
    friend Octonion operator*(Octonion a, double s) { return a *= s; }
    friend Octonion operator*(double s, Octonion a) { return a *= s; }
    friend Octonion operator-(Octonion a) { return a *= -1.0; }
    friend bool operator==(const Octonion& a, const Octonion& b) { return a.c == b.c; }

    double norm() const {
        double s = 0;
        for (double x : c) s += x * x;
        return std::sqrt(s);
    }
    double max_abs() const {
        double m = 0;
        for (double x : c) m = std::max(m, std::abs(x));
        return m;
    }
};

Octonion oct_mul(const Octonion& a, const Octonion& b);
inline Octonion operator*(const Octonion& a, const Octonion& b) { return oct_mul(a, b); }

// (ab)c - a(bc)
Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c);

struct IndexTriple {
    int i = 0, j = 0, k = 0;
};

// I_1..I_7, each sorted ascending.
const std::array<std::array<int, 3>, 7>& fano_index_sets();

bool is_antiassociative_triple(const IndexTriple& t);
inline bool is_antiassociative_triple(int i, int j, int k) {
    return is_antiassociative_triple(IndexTriple{i, j, k});
}

// -1 on anti-associative triples, +1 otherwise.
inline int rebracket_sign(int i, int j, int k) {
    return is_antiassociative_triple(i, j, k) ? -1 : 1;
}

// 64 lines "i j sign k".
std::string cayley_golden_text();

}  // namespace octolattice
