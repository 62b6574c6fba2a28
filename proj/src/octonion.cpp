#include "octolattice/octonion.hpp"

#include <sstream>
#include <stdexcept>

namespace octolattice {

namespace {

struct Partial {
    std::array<std::array<BasisProduct, 8>, 8> t{};  // sign 0 = unknown
    bool changed = false;

    bool known(int i, int j) const { return t[i][j].sign != 0; }

    void set(int i, int j, int sign, int k) {
        auto& cell = t[i][j];
        if (cell.sign == 0) {
            cell = {sign, k};
            changed = true;
        } else if (cell.sign != sign || cell.k != k) {
            throw std::logic_error("octonion relations are inconsistent at e" + std::to_string(i) +
                                   " e" + std::to_string(j));
        }
        auto& sym = t[j][i];
        int ssign = (i == j || i == 0 || j == 0) ? sign : -sign;
        if (sym.sign == 0) {
            sym = {ssign, k};
            changed = true;
        } else if (sym.sign != ssign || sym.k != k) {
            throw std::logic_error("octonion relations are inconsistent (anticommutation)");
        }
    }
};

// sigma for (e_i e_j) e_k = sigma e_i (e_j e_k); needs e_i e_j known.
int sigma_from(const Partial& p, int i, int j, int k) {
    if (i == 0 || j == 0 || k == 0 || i == j || j == k || i == k) return 1;
    return p.t[i][j].k == k ? 1 : -1;
}

CayleyTable build() {
    Partial p;
    for (int i = 0; i < 8; ++i) {
        p.set(0, i, 1, i);
        if (i > 0) p.set(i, i, -1, 0);
    }
    p.set(1, 2, 1, 4);
    p.set(1, 3, 1, 5);
    p.set(2, 3, 1, 6);
    p.set(4, 3, 1, 7);

    // (e_i e_j) e_k = sigma e_i (e_j e_k): with e_i e_j = s e_p and e_j e_k = u e_q,
    // s (e_p e_k) = sigma u (e_i e_q).
    do {
        p.changed = false;
        for (int i = 1; i < 8; ++i)
            for (int j = 1; j < 8; ++j)
                for (int k = 1; k < 8; ++k) {
                    if (!p.known(i, j) || !p.known(j, k)) continue;
                    int s = p.t[i][j].sign, pp = p.t[i][j].k;
                    int u = p.t[j][k].sign, q = p.t[j][k].k;
                    int sg = sigma_from(p, i, j, k);
                    if (p.known(pp, k) && !p.known(i, q)) {
                        auto l = p.t[pp][k];
                        p.set(i, q, s * l.sign * sg * u, l.k);
                    } else if (!p.known(pp, k) && p.known(i, q)) {
                        auto r = p.t[i][q];
                        p.set(pp, k, sg * u * r.sign * s, r.k);
                    }
                }
    } while (p.changed);

    CayleyTable out{};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            if (!p.known(i, j)) throw std::logic_error("octonion relations leave a cell undetermined");
            out[i][j] = p.t[i][j];
        }
    // full consistency sweep
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) {
                auto ij = out[i][j];
                auto lhs = out[ij.k][k];
                auto jk = out[j][k];
                auto rhs = out[i][jk.k];
                int sg = sigma_from(p, i, j, k);
                if (ij.sign * lhs.sign != sg * jk.sign * rhs.sign || lhs.k != rhs.k)
                    throw std::logic_error("octonion relations fail the bracketing rule");
            }
    return out;
}

}  // namespace

const CayleyTable& cayley_table() {
    static const CayleyTable table = build();
    return table;
}

Octonion oct_mul(const Octonion& a, const Octonion& b) {
    const auto& t = cayley_table();
    Octonion r;
    for (int i = 0; i < 8; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < 8; ++j) {
            if (b.c[j] == 0) continue;
            r.c[t[i][j].k] += t[i][j].sign * a.c[i] * b.c[j];
        }
    }
    return r;
}

Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c) {
    return oct_mul(oct_mul(a, b), c) - oct_mul(a, oct_mul(b, c));
}

const std::array<std::array<int, 3>, 7>& fano_index_sets() {
    static const std::array<std::array<int, 3>, 7> sets = {{
        {1, 2, 4}, {1, 3, 5}, {1, 6, 7}, {2, 3, 6}, {2, 5, 7}, {3, 4, 7}, {4, 5, 6},
    }};
    return sets;
}

bool is_antiassociative_triple(const IndexTriple& t) {
    if (t.i < 0 || t.i > 7 || t.j < 0 || t.j > 7 || t.k < 0 || t.k > 7) return false;
    if (t.i == 0 || t.j == 0 || t.k == 0) return false;
    if (t.i == t.j || t.j == t.k || t.i == t.k) return false;
    return cayley_table()[t.i][t.j].k != t.k;
}

std::string cayley_golden_text() {
    const auto& t = cayley_table();
    std::ostringstream os;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            os << i << ' ' << j << ' ' << (t[i][j].sign > 0 ? "+1" : "-1") << ' ' << t[i][j].k << '\n';
    return os.str();
}

}  // namespace octolattice
