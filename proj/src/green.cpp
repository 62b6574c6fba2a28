#include "octolattice/green.hpp"

#include <fftw3.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace octolattice {

namespace {

constexpr char kMagic[4] = {'O', 'C', 'T', 'K'};
constexpr uint32_t kVersion = 1;

int fold(int x, int T) {
    int r = x % T;
    if (r < 0) r += T;
    return std::min(r, T - r);
}

size_t ipow(size_t b, int e) {
    size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

KernelTable KernelTable::compute(int T, double h) {
    if (T < 4 || T % 2 != 0) throw std::invalid_argument("torus size must be even and >= 4");
    if (!(h > 0)) throw std::invalid_argument("spacing must be positive");
    KernelTable t;
    t.T_ = T;
    t.h_ = h;
    t.n_ = T / 2 + 1;
    const size_t total = ipow(t.n_, kDim);
    double* buf = fftw_alloc_real(total);
    if (!buf) throw std::bad_alloc();

    std::vector<double> s2(t.n_);
    for (int k = 0; k < t.n_; ++k) {
        double s = std::sin(M_PI * k / T);
        s2[k] = s * s;
    }
    const double scale = 4.0 / (h * h);
    std::array<int, kDim> idx{};
    for (size_t i = 0; i < total; ++i) {
        double d2 = 0;
        for (int j = 0; j < kDim; ++j) d2 += s2[idx[j]];
        buf[i] = i == 0 ? 0.0 : 1.0 / (scale * d2);
        for (int j = kDim - 1; j >= 0; --j) {
            if (++idx[j] < t.n_) break;
            idx[j] = 0;
        }
    }
    // REDFT00 on n = T/2 + 1 points is the DFT of the even extension of period T.
    std::array<int, kDim> dims;
    dims.fill(t.n_);
    std::array<fftw_r2r_kind, kDim> kinds;
    kinds.fill(FFTW_REDFT00);
    fftw_plan plan = fftw_plan_r2r(kDim, dims.data(), buf, buf, kinds.data(), FFTW_ESTIMATE);
    if (!plan) {
        fftw_free(buf);
        throw std::runtime_error("fftw plan failed");
    }
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    const double norm = std::pow(T * h, -kDim);
    t.g_.assign(buf, buf + total);
    fftw_free(buf);
    for (auto& v : t.g_) v *= norm;
    return t;
}

KernelTable KernelTable::cached(int T, double h) {
    const char* dir = std::getenv("OCTOLATTICE_CACHE");
    if (!dir || !*dir) return compute(T, h);
    std::ostringstream name;
    name.precision(17);
    name << "green_T" << T << "_h" << h << ".octk";
    std::filesystem::path p = std::filesystem::path(dir) / name.str();
    if (std::filesystem::exists(p)) {
        auto t = load(p.string());
        if (t.T() == T && t.h() == h) return t;
    }
    auto t = compute(T, h);
    std::filesystem::create_directories(dir);
    t.save(p.string());
    return t;
}

size_t KernelTable::reduced_index(const Point& m) const {
    size_t idx = 0;
    for (int j = 0; j < kDim; ++j) idx = idx * n_ + fold(m[j], T_);
    return idx;
}

double KernelTable::G(const Point& m) const { return g_[reduced_index(m)]; }

double KernelTable::K(int j, Polarity p, const Point& m) const {
    if (p == Polarity::Plus) return (G(shifted(m, j, 1)) - G(m)) / h_;
    return (G(m) - G(shifted(m, j, -1))) / h_;
}

std::array<double, kNumGen> KernelTable::weights(Variant v, const Point& m) const {
    std::array<double, kNumGen> w{};
    const double g0 = G(m);
    for (int j = 0; j < kDim; ++j) {
        double fw = (G(shifted(m, j, 1)) - g0) / h_;
        double bw = (g0 - G(shifted(m, j, -1))) / h_;
        w[gen_id(Polarity::Plus, j)] = v == Variant::PM ? fw : bw;
        w[gen_id(Polarity::Minus, j)] = v == Variant::PM ? bw : fw;
    }
    return w;
}

SplitElement KernelTable::fundamental(Variant v, const Point& m) const {
    auto w = weights(v, m);
    SplitVec d{};
    for (int g = 0; g < kNumGen; ++g) d[1 + g] = w[g];
    return SplitElement::from_dense(d);
}

double KernelTable::defect() const { return std::pow(T_ * h_, -kDim); }

void KernelTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    static_assert(sizeof(double) == 8);
    auto put = [&](const void* p, size_t n) { out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); };
    // the format is little-endian; this build targets little-endian hosts only
    static_assert(std::endian::native == std::endian::little);
    put(kMagic, 4);
    put(&kVersion, 4);
    put(&h_, 8);
    uint32_t T = static_cast<uint32_t>(T_);
    put(&T, 4);
    const size_t total = ipow(T_, kDim);
    std::vector<double> row(T_);
    Point m{};
    for (size_t i = 0; i < total; i += T_) {
        // m holds axes 0..6; axis 7 runs along the row
        for (int k = 0; k < T_; ++k) {
            m[7] = k;
            row[k] = G(m);
        }
        put(row.data(), row.size() * 8);
        for (int j = 6; j >= 0; --j) {
            if (++m[j] < T_) break;
            m[j] = 0;
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

KernelTable KernelTable::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    auto get = [&](void* p, size_t n) {
        in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (static_cast<size_t>(in.gcount()) != n) throw std::runtime_error("truncated kernel file " + path);
    };
    char magic[4];
    get(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("bad magic in " + path);
    uint32_t version = 0;
    get(&version, 4);
    if (version != kVersion) throw std::runtime_error("unsupported kernel file version " + std::to_string(version));
    KernelTable t;
    get(&t.h_, 8);
    uint32_t T = 0;
    get(&T, 4);
    if (T < 4 || T % 2 != 0 || T > 64 || !(t.h_ > 0)) throw std::runtime_error("bad kernel header in " + path);
    t.T_ = static_cast<int>(T);
    t.n_ = t.T_ / 2 + 1;
    t.g_.assign(ipow(t.n_, kDim), 0.0);
    std::vector<bool> seen(t.g_.size(), false);
    const size_t total = ipow(T, kDim);
    std::vector<double> row(T);
    Point m{};
    for (size_t i = 0; i < total; i += T) {
        get(row.data(), row.size() * 8);
        for (int k = 0; k < t.T_; ++k) {
            m[7] = k;
            size_t r = t.reduced_index(m);
            if (!seen[r]) {
                t.g_[r] = row[k];
                seen[r] = true;
            } else if (std::memcmp(&t.g_[r], &row[k], 8) != 0) {
                throw std::runtime_error("kernel file is not even in every coordinate: " + path);
            }
        }
        for (int j = 6; j >= 0; --j) {
            if (++m[j] < t.T_) break;
            m[j] = 0;
        }
    }
    return t;
}

namespace {

struct BesselParams {
    std::array<int, kDim> m;
};

double bessel_integrand(double t, void* p) {
    const auto* bp = static_cast<const BesselParams*>(p);
    double v = 1.0;
    for (int j = 0; j < kDim; ++j) v *= gsl_sf_bessel_In_scaled(bp->m[j], 2.0 * t);
    return v;
}

}  // namespace

double green_bessel(const Point& m, double epsrel) {
    BesselParams params;
    for (int j = 0; j < kDim; ++j) params.m[j] = std::abs(m[j]);
    gsl_function fn{&bessel_integrand, &params};
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    double result = 0, abserr = 0;
    int status = gsl_integration_qagiu(&fn, 0.0, 0.0, epsrel, 2000, ws, &result, &abserr);
    gsl_set_error_handler(old);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS)
        throw std::runtime_error(std::string("Bessel quadrature failed: ") + gsl_strerror(status));
    return result;
}

}  // namespace octolattice
