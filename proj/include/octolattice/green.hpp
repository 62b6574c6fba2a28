#pragma once

#include <array>
#include <string>
#include <vector>

#include "octolattice/lattice.hpp"
#include "octolattice/split.hpp"

namespace octolattice {

enum class Variant { PM, MP };  // E^{+-}, E^{-+}

// Scalar lattice Green's function on the T^8 torus of spacing h:
//   G(m) = (Th)^-8 sum_{k != 0} prod_j cos(2 pi k_j m_j / T) / d^2(k),
//   d^2(k) = (4/h^2) sum_j sin^2(pi k_j / T),
// so that -Lap_h G = delta_h - (Th)^-8.  G is even in every coordinate and only the
// reduced grid [0, T/2]^8 is kept.
class KernelTable {
public:
    static KernelTable compute(int T, double h);
    // Looks in $OCTOLATTICE_CACHE (if set) before computing, and stores new tables there.
    static KernelTable cached(int T, double h);

    int T() const { return T_; }
    double h() const { return h_; }
    int reduced_extent() const { return n_; }

    double G(const Point& m) const;
    // K_j^{+-}(m) = d^{+-j} G(m)
    double K(int j, Polarity p, const Point& m) const;

    // Coefficients of E(m) on the 16 generators, indexed by gen_id:
    //   PM: e_j^+ <- d^{+j}G, e_j^- <- d^{-j}G;  MP: e_j^+ <- d^{-j}G, e_j^- <- d^{+j}G.
    std::array<double, kNumGen> weights(Variant v, const Point& m) const;
    SplitElement fundamental(Variant v, const Point& m) const;

    // Mean-mode defect of the torus delta, (Th)^-8.
    double defect() const;

    void save(const std::string& path) const;
    static KernelTable load(const std::string& path);

    const std::vector<double>& reduced() const { return g_; }

private:
    int T_ = 0;
    double h_ = 1.0;
    int n_ = 0;
    std::vector<double> g_;

    size_t reduced_index(const Point& m) const;
};

// Infinite-lattice Green's function at h = 1,
//   G_1(m) = int_0^inf prod_j e^{-2t} I_{m_j}(2t) dt,
// by adaptive quadrature.  Throws std::runtime_error if the quadrature does not converge.
double green_bessel(const Point& m, double epsrel = 1e-11);

}  // namespace octolattice
