#pragma once

#include <array>
#include <complex>
#include <map>
#include <unordered_map>
#include <vector>

#include "octolattice/car.hpp"
#include "octolattice/field.hpp"
#include "octolattice/green.hpp"
#include "octolattice/lattice.hpp"

namespace octolattice {

using Complex = std::complex<double>;
using Freq7 = std::array<double, 7>;

// Difference symbols for the convention F f(xi) = h^7 sum_m f(mh) e^{i <mh, xi>}:
//   d^{+j} -> (e^{-i xi h} - 1)/h,  d^{-j} -> (1 - e^{i xi h})/h.
Complex symbol_fwd(double xi, double h);
Complex symbol_bwd(double xi, double h);

// Symbols of E^{-+} on the layers m_7 = -1, 0, 1, as coefficient vectors on the
// 16 generators (gen_id order).  xi are the frequencies of axes 0..6.
struct LayerSymbol {
    Freq7 xi{};
    double h = 1.0;
    double dbar = 0.0;
    std::array<std::array<Complex, kNumGen>, 3> layer{};  // index m_7 + 1
};
LayerSymbol layer_symbols(const Freq7& xi, double h);

// Torus counterpart: 7-D transform of each m_7 layer of the computed E^{-+} at the grid
// frequencies 2 pi k / (T h).  Returns max |closed form - torus| over all k != 0 together
// with the largest symbol magnitude.
struct LayerCheck {
    double max_abs_diff = 0.0;
    double max_symbol = 0.0;
    int frequencies = 0;
};
LayerCheck layer_symbol_crosscheck(const KernelTable& E);

enum class HardySide { Plus, Minus };

struct HardyOptions {
    bool literal_radical = false;  // keep the printed sqrt(4 - h^2 d^2) in H_i^-
};

// Multiplier of H_i^{+-} at in-face frequency xi (8 entries, xi[axis] ignored).
car::Cplx hardy_kernel(int axis, HardySide side, const std::array<double, 8>& xi, double h,
                       const HardyOptions& opt = {});

// Boundary data valued in the associative generator algebra.
using CarData = std::unordered_map<Point, car::Real, PointHash>;
CarData embed_data(const OctField& f);
// Octonion part (coefficients of u_k); `residue` receives the largest dropped coefficient.
OctField octonion_part(const CarData& d, double h, double* residue = nullptr);
double max_abs(const CarData& d);
CarData combine(const CarData& a, double sa, const CarData& b, double sb);

struct HardyStats {
    int faces = 0;
    double mean_mode = 0.0;     // largest zero-frequency coefficient dropped
    int multi_face_points = 0;  // points receiving contributions from more than one face
};

// H on a single face: all points share coordinate `axis`; the window is the bounding box
// of the points (periodic), transformed with 7-D FFTs.
CarData apply_face(int axis, HardySide side, const CarData& data, double h, const HardyOptions& opt,
                   HardyStats* stats = nullptr);

// Per-face application over gamma^+ (Plus) or gamma^- (Minus) of a domain.  A layer point
// lies on face (i, s) when p + s e_i is in gamma^*; each face plane is transformed
// independently and the results are summed.
CarData apply_hardy(HardySide side, const CarData& data, const LatticeDomain& domain,
                    const BoundaryLayers& layers, const HardyOptions& opt = {}, HardyStats* stats = nullptr);

CarData plemelj(HardySide side, const CarData& data, const LatticeDomain& domain, const BoundaryLayers& layers,
                const HardyOptions& opt = {}, HardyStats* stats = nullptr);

struct Membership {
    bool member = false;
    double residual = 0.0;
};
Membership hardy_membership(const CarData& data, HardySide side, const LatticeDomain& domain,
                            const BoundaryLayers& layers, double tol, const HardyOptions& opt = {});

}  // namespace octolattice
