#include "octolattice/hardy.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace octolattice {

namespace {

using car::Mono;

struct FftBuffer {
    fftw_complex* p = nullptr;
    explicit FftBuffer(size_t n) : p(fftw_alloc_complex(n)) {
        if (!p) throw std::bad_alloc();
    }
    ~FftBuffer() { fftw_free(p); }
    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;
    Complex* data() { return reinterpret_cast<Complex*>(p); }
};

class Plan {
public:
    Plan(const std::vector<int>& dims, int sign) {
        size_t n = 1;
        for (int d : dims) n *= static_cast<size_t>(d);
        FftBuffer tmp(n);
        plan_ = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), tmp.p, tmp.p, sign, FFTW_ESTIMATE);
        if (!plan_) throw std::runtime_error("fftw plan failed");
    }
    ~Plan() { fftw_destroy_plan(plan_); }
    void run(FftBuffer& b) const { fftw_execute_dft(plan_, b.p, b.p); }

private:
    fftw_plan plan_;
};

// grid frequency of index k on an n-periodic axis, folded into (-pi/h, pi/h]
double grid_freq(int k, int n, double h) {
    if (2 * k > n) k -= n;
    return 2.0 * std::numbers::pi * k / (n * h);
}

double dbar_of(const std::array<double, 8>& xi, int skip, double h) {
    double s = 0;
    for (int j = 0; j < kDim; ++j) {
        if (j == skip) continue;
        double v = std::sin(xi[j] * h / 2);
        s += v * v;
    }
    return std::sqrt(4.0 / (h * h) * s);
}

// coefficients of e_i^+ and e_i^- in the H_i multiplier
std::pair<Complex, Complex> radial_factors(HardySide side, double hd, const HardyOptions& opt) {
    const double s = std::sqrt(4 + hd * hd);
    const Complex a = (hd - s) / 2, b = 2 / (hd - s);
    if (side == HardySide::Plus) return {a, b};
    Complex lit = (hd - (opt.literal_radical ? std::sqrt(Complex(4 - hd * hd)) : Complex(s))) / 2.0;
    return {b, lit};
}

}  // namespace

Complex symbol_fwd(double xi, double h) { return (std::exp(Complex(0, -xi * h)) - 1.0) / h; }
Complex symbol_bwd(double xi, double h) { return (1.0 - std::exp(Complex(0, xi * h))) / h; }

LayerSymbol layer_symbols(const Freq7& xi, double h) {
    LayerSymbol ls;
    ls.xi = xi;
    ls.h = h;
    double s2 = 0;
    for (double x : xi) s2 += std::pow(std::sin(x * h / 2), 2);
    ls.dbar = std::sqrt(4.0 / (h * h) * s2);
    if (ls.dbar == 0) throw std::domain_error("layer symbols are singular at zero frequency");
    const double d = ls.dbar, hd = h * d, s = std::sqrt(4 + hd * hd);
    std::array<Complex, kNumGen> xt{};  // xi~_- / d
    for (int j = 0; j < 7; ++j) {
        xt[gen_id(Polarity::Plus, j)] = symbol_bwd(xi[j], h) / d;
        xt[gen_id(Polarity::Minus, j)] = symbol_fwd(xi[j], h) / d;
    }
    const int p7 = gen_id(Polarity::Plus, 7), m7 = gen_id(Polarity::Minus, 7);
    const double side = (2 + hd * hd) / (2 * s) - hd / 2;
    const double near = hd / (2 * s) - 0.5;
    const double far = -(3 * hd + hd * hd * hd) / (2 * s) + (hd * hd + 1) / 2;
    auto& lo = ls.layer[0];
    auto& mid = ls.layer[1];
    auto& up = ls.layer[2];
    for (int g = 0; g < kNumGen; ++g) {
        mid[g] = xt[g] / s;
        up[g] = lo[g] = xt[g] * side;
    }
    mid[p7] = 0.5 - hd / (2 * s);
    mid[m7] = -mid[p7];
    up[p7] = near;
    up[m7] = -far;
    lo[m7] = -near;
    lo[p7] = far;
    return ls;
}

LayerCheck layer_symbol_crosscheck(const KernelTable& E) {
    const int T = E.T();
    const double h = E.h();
    std::vector<int> dims(7, T);
    size_t n = 1;
    for (int i = 0; i < 7; ++i) n *= T;
    Plan plan(dims, FFTW_BACKWARD);
    // Transform G on the layers m_7 = 0, 1, 2 (G is even in m_7); the generator
    // coefficients of E^{-+} are differences of G, which act as exact multipliers on the torus.
    std::vector<std::unique_ptr<FftBuffer>> Gh;
    const double h7 = std::pow(h, 7);
    for (int layer = 0; layer <= 2; ++layer) {
        auto b = std::make_unique<FftBuffer>(n);
        Complex* d = b->data();
        for (size_t idx = 0; idx < n; ++idx) {
            Point m{};
            size_t r = idx;
            for (int j = 6; j >= 0; --j) {
                m[j] = static_cast<int>(r % T);
                r /= T;
            }
            m[7] = layer;
            d[idx] = E.G(m) * h7;
        }
        plan.run(*b);
        Gh.push_back(std::move(b));
    }
    auto G = [&](int layer, size_t idx) { return Gh[std::abs(layer)]->data()[idx]; };

    std::vector<double> xi_of(T), sin2(T);
    std::vector<Complex> fwd(T), bwd(T);
    for (int k = 0; k < T; ++k) {
        xi_of[k] = grid_freq(k, T, h);
        sin2[k] = std::pow(std::sin(xi_of[k] * h / 2), 2);
        fwd[k] = symbol_fwd(xi_of[k], h);
        bwd[k] = symbol_bwd(xi_of[k], h);
    }
    LayerCheck out;
    out.frequencies = static_cast<int>(n - 1);
    std::array<int, 7> k{};
    for (size_t idx = 1; idx < n; ++idx) {
        size_t r = idx;
        for (int j = 6; j >= 0; --j) {
            k[j] = static_cast<int>(r % T);
            r /= T;
        }
        Freq7 xi;
        for (int j = 0; j < 7; ++j) xi[j] = xi_of[k[j]];
        const LayerSymbol ls = layer_symbols(xi, h);
        for (int layer = -1; layer <= 1; ++layer) {
            const Complex g0 = G(layer, idx);
            for (int j = 0; j < 7; ++j) {
                const Complex tp = bwd[k[j]] * g0, tm = fwd[k[j]] * g0;
                const Complex cp = ls.layer[layer + 1][gen_id(Polarity::Plus, j)];
                const Complex cm = ls.layer[layer + 1][gen_id(Polarity::Minus, j)];
                out.max_abs_diff = std::max({out.max_abs_diff, std::abs(cp - tp), std::abs(cm - tm)});
                out.max_symbol = std::max({out.max_symbol, std::abs(cp), std::abs(cm)});
            }
            const Complex tp = (g0 - G(layer - 1, idx)) / h, tm = (G(layer + 1, idx) - g0) / h;
            const Complex cp = ls.layer[layer + 1][gen_id(Polarity::Plus, 7)];
            const Complex cm = ls.layer[layer + 1][gen_id(Polarity::Minus, 7)];
            out.max_abs_diff = std::max({out.max_abs_diff, std::abs(cp - tp), std::abs(cm - tm)});
            out.max_symbol = std::max({out.max_symbol, std::abs(cp), std::abs(cm)});
        }
    }
    return out;
}

car::Cplx hardy_kernel(int axis, HardySide side, const std::array<double, 8>& xi, double h,
                       const HardyOptions& opt) {
    const double d = dbar_of(xi, axis, h);
    if (d == 0) throw std::domain_error("hardy kernel is singular at zero frequency");
    car::Cplx a;
    for (int j = 0; j < kDim; ++j) {
        if (j == axis) continue;
        a += car::Cplx::generator(j, false) * (symbol_bwd(xi[j], h) / d);
        a += car::Cplx::generator(j, true) * (symbol_fwd(xi[j], h) / d);
    }
    auto [cp, cm] = radial_factors(side, h * d, opt);
    car::Cplx b = car::Cplx::generator(axis, false) * cp + car::Cplx::generator(axis, true) * cm;
    return a * b;
}

CarData embed_data(const OctField& f) {
    CarData d;
    for (const auto& [p, v] : f.values) {
        car::Real e;
        for (int k = 0; k < 8; ++k)
            if (v.c[k] != 0) e += car::Real::mono(Mono{1} << (2 * k), v.c[k]);
        d.emplace(p, std::move(e));
    }
    return d;
}

OctField octonion_part(const CarData& d, double h, double* residue) {
    OctField f(h);
    double res = 0;
    for (const auto& [p, e] : d) {
        Octonion v;
        for (const auto& [m, c] : e.terms()) {
            if (std::popcount(m) == 1 && (std::countr_zero(m) % 2 == 0)) v.c[std::countr_zero(m) / 2] = c;
            else res = std::max(res, std::abs(c));
        }
        f.set(p, v);
    }
    if (residue) *residue = res;
    return f;
}

double max_abs(const CarData& d) {
    double m = 0;
    for (const auto& [p, e] : d) m = std::max(m, e.max_abs());
    return m;
}

CarData combine(const CarData& a, double sa, const CarData& b, double sb) {
    CarData out;
    for (const auto& [p, e] : a) out[p] += e * sa;
    for (const auto& [p, e] : b) out[p] += e * sb;
    return out;
}

CarData apply_face(int axis, HardySide side, const CarData& data, double h, const HardyOptions& opt,
                   HardyStats* stats) {
    CarData out;
    if (data.empty()) return out;
    std::vector<Point> pts;
    for (const auto& kv : data) pts.push_back(kv.first);
    Box box = Box::around(pts);
    if (box.lo[axis] != box.hi[axis]) throw std::invalid_argument("face data is not contained in one plane");

    std::vector<int> dims, axes;
    for (int j = 0; j < kDim; ++j)
        if (j != axis) {
            axes.push_back(j);
            dims.push_back(box.hi[j] - box.lo[j] + 1);
        }
    size_t n = 1;
    for (int v : dims) n *= static_cast<size_t>(v);
    auto flat = [&](const Point& p) {
        size_t idx = 0;
        for (int q = 0; q < 7; ++q) idx = idx * dims[q] + (p[axes[q]] - box.lo[axes[q]]);
        return idx;
    };

    // input monomials
    std::vector<Mono> in_monos;
    for (const auto& [p, e] : data)
        for (const auto& t : e.terms()) in_monos.push_back(t.first);
    std::sort(in_monos.begin(), in_monos.end());
    in_monos.erase(std::unique(in_monos.begin(), in_monos.end()), in_monos.end());
    if (in_monos.empty()) return out;

    // kernel monomials: (u_j | v_j) x (u_i | v_i), j != axis
    struct KMono { Mono m; int sign; int j; bool vj; bool vi; };
    std::vector<KMono> kmon;
    for (int j = 0; j < kDim; ++j) {
        if (j == axis) continue;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Mono mj = Mono{1} << (2 * j + a), mi = Mono{1} << (2 * axis + b);
                kmon.push_back({mj | mi, car::product_sign(mj, mi), j, a == 1, b == 1});
            }
    }

    // kernel coefficients per frequency; the literal convolution sum_r H(r - m) f(r)
    // multiplies the transform by the symbol at -xi
    Plan fwd(dims, FFTW_BACKWARD), inv(dims, FFTW_FORWARD);
    std::vector<std::vector<Complex>> K(kmon.size(), std::vector<Complex>(n));
    for (size_t idx = 1; idx < n; ++idx) {
        std::array<double, 8> xi{};
        size_t r = idx;
        for (int q = 6; q >= 0; --q) {
            xi[axes[q]] = -grid_freq(static_cast<int>(r % dims[q]), dims[q], h);
            r /= dims[q];
        }
        const double d = dbar_of(xi, axis, h);
        auto [cp, cm] = radial_factors(side, h * d, opt);
        const Complex bu = (cp + cm) / 2.0, bv = (cp - cm) / 2.0;
        for (size_t a = 0; a < kmon.size(); ++a) {
            const int j = kmon[a].j;
            const Complex x = symbol_bwd(xi[j], h) / d, y = symbol_fwd(xi[j], h) / d;
            const Complex cj = kmon[a].vj ? (x - y) / 2.0 : (x + y) / 2.0;
            K[a][idx] = double(kmon[a].sign) * cj * (kmon[a].vi ? bv : bu);
        }
    }

    // transform inputs
    std::vector<std::unique_ptr<FftBuffer>> F;
    double mean = 0;
    for (size_t b = 0; b < in_monos.size(); ++b) {
        F.push_back(std::make_unique<FftBuffer>(n));
        std::fill(F.back()->data(), F.back()->data() + n, Complex{});
    }
    for (const auto& [p, e] : data) {
        const size_t idx = flat(p);
        for (const auto& [m, c] : e.terms()) {
            auto b = std::lower_bound(in_monos.begin(), in_monos.end(), m) - in_monos.begin();
            F[b]->data()[idx] = c;
        }
    }
    for (auto& b : F) {
        fwd.run(*b);
        mean = std::max(mean, std::abs(b->data()[0]) / static_cast<double>(n));
    }
    if (stats) {
        stats->faces += 1;
        stats->mean_mode = std::max(stats->mean_mode, mean);
    }

    // product plan grouped by output monomial
    std::map<Mono, std::vector<std::tuple<int, int, int>>> plan;
    for (size_t a = 0; a < kmon.size(); ++a)
        for (size_t b = 0; b < in_monos.size(); ++b)
            plan[kmon[a].m ^ in_monos[b]].emplace_back(static_cast<int>(a), static_cast<int>(b),
                                                       car::product_sign(kmon[a].m, in_monos[b]));

    std::vector<std::vector<car::Real::Term>> raw(pts.size());
    FftBuffer acc(n);
    for (const auto& [mono, entries] : plan) {
        Complex* o = acc.data();
        std::fill(o, o + n, Complex{});
        for (auto [a, b, s] : entries) {
            const Complex* k = K[a].data();
            const Complex* f = F[b]->data();
            for (size_t idx = 1; idx < n; ++idx) o[idx] += double(s) * k[idx] * f[idx];
        }
        inv.run(acc);
        for (size_t q = 0; q < pts.size(); ++q) {
            double v = o[flat(pts[q])].real() / static_cast<double>(n);
            if (v != 0) raw[q].push_back({mono, v});
        }
    }
    for (size_t q = 0; q < pts.size(); ++q) out[pts[q]] = car::Real::from_unsorted(std::move(raw[q]));
    return out;
}

CarData apply_hardy(HardySide side, const CarData& data, const LatticeDomain& domain,
                    const BoundaryLayers& layers, const HardyOptions& opt, HardyStats* stats) {
    const auto& layer = side == HardySide::Plus ? layers.gamma_plus : layers.gamma_minus;
    PointSet on_layer(layer.begin(), layer.end());
    for (const auto& [p, e] : data)
        if (e.max_abs() != 0 && !on_layer.count(p))
            throw std::invalid_argument("data point " + to_string(p) + " is not on the boundary layer");

    // face key: (axis, direction, plane coordinate)
    std::map<std::tuple<int, int, int>, CarData> faces;
    std::unordered_map<Point, int, PointHash> face_count;
    for (const auto& p : layer) {
        for (int i = 0; i < kDim; ++i)
            for (int s : {-1, 1}) {
                if (!layers.in_star(shifted(p, i, s))) continue;
                auto it = data.find(p);
                faces[{i, s, p[i]}][p] = it == data.end() ? car::Real{} : it->second;
                ++face_count[p];
            }
    }
    HardyStats local;
    CarData out;
    for (const auto& [key, fd] : faces) {
        CarData r = apply_face(std::get<0>(key), side, fd, domain.h(), opt, &local);
        for (auto& [p, e] : r) out[p] += e;
    }
    for (const auto& [p, c] : face_count)
        if (c > 1) ++local.multi_face_points;
    if (stats) *stats = local;
    return out;
}

CarData plemelj(HardySide side, const CarData& data, const LatticeDomain& domain, const BoundaryLayers& layers,
                const HardyOptions& opt, HardyStats* stats) {
    return combine(data, 0.5, apply_hardy(side, data, domain, layers, opt, stats), 0.5);
}

Membership hardy_membership(const CarData& data, HardySide side, const LatticeDomain& domain,
                            const BoundaryLayers& layers, double tol, const HardyOptions& opt) {
    Membership m;
    m.residual = max_abs(combine(data, 1.0, apply_hardy(side, data, domain, layers, opt), -1.0));
    m.member = m.residual <= tol;
    return m;
}

}  // namespace octolattice
