#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wam/common.hpp"

namespace wam {

// Uniform centered grid: per axis, N points at spacing h = extent/N covering
// [-extent/2, extent/2). The dual grid has spacing 1/extent and the same
// layout, so a transformed field lives on Grid{dim, points/extent, points}.
struct Grid {
    int dim = 1;
    double extent = 64.0;
    int points = 1024;

    void validate() const {
        if (dim < 1 || dim > 3) throw std::invalid_argument("grid: dim must be 1..3");
        if (!(extent > 0.0)) throw std::invalid_argument("grid: extent must be positive");
        if (points < 2 || (points & (points - 1)) != 0)
            throw std::invalid_argument("grid: points must be a power of two >= 2");
    }

    double step() const { return extent / points; }
    double coord(int i) const { return (i - points / 2) * step(); }
    double freq(int k) const { return (k - points / 2) / extent; }

    std::size_t total() const {
        std::size_t n = 1;
        for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points);
        return n;
    }

    Grid dual() const { return Grid{dim, points / extent, points}; }

    void unravel(std::size_t idx, int* out) const {
        for (int a = dim - 1; a >= 0; --a) {
            out[a] = static_cast<int>(idx % points);
            idx /= points;
        }
    }

    std::size_t ravel(const int* ix) const {
        std::size_t idx = 0;
        for (int a = 0; a < dim; ++a) idx = idx * points + static_cast<std::size_t>(ix[a]);
        return idx;
    }

    bool operator==(const Grid& o) const {
        return dim == o.dim && extent == o.extent && points == o.points;
    }
};

struct SampledField {
    Grid grid;
    std::vector<cplx> values;
};

inline SampledField make_field(const Grid& g) {
    g.validate();
    return SampledField{g, std::vector<cplx>(g.total())};
}

// fn receives the coordinates of each grid point.
inline SampledField sample_function(const Grid& g,
                                    const std::function<cplx(const std::array<double, 3>&)>& fn) {
    SampledField f = make_field(g);
    int ix[3] = {0, 0, 0};
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
        g.unravel(idx, ix);
        for (int a = 0; a < g.dim; ++a) x[a] = g.coord(ix[a]);
        f.values[idx] = fn(x);
    }
    return f;
}

inline double field_max_abs(const SampledField& f) {
    double m = 0.0;
    for (const cplx& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

// Binary field format (little-endian):
//   int64 dim, int64 points[dim], float64 extent[dim],
//   then re,im float64 pairs in row-major order.
inline void write_field(const std::string& path, const SampledField& f) {
    f.grid.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_field: cannot open " + path);
    auto put_i64 = [&](std::int64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    auto put_f64 = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    put_i64(f.grid.dim);
    for (int a = 0; a < f.grid.dim; ++a) put_i64(f.grid.points);
    for (int a = 0; a < f.grid.dim; ++a) put_f64(f.grid.extent);
    for (const cplx& v : f.values) {
        put_f64(v.real());
        put_f64(v.imag());
    }
    if (!out) throw std::runtime_error("write_field: write failed for " + path);
}

inline SampledField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_field: cannot open " + path);
    auto get_i64 = [&]() {
        std::int64_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    auto get_f64 = [&]() {
        double v = 0.0;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    std::int64_t dim = get_i64();
    if (!in || dim < 1 || dim > 3) throw std::runtime_error("read_field: bad header");
    std::vector<std::int64_t> ns(static_cast<std::size_t>(dim));
    for (auto& n : ns) n = get_i64();
    std::vector<double> ls(static_cast<std::size_t>(dim));
    for (auto& l : ls) l = get_f64();
    for (std::size_t a = 1; a < ns.size(); ++a)
        if (ns[a] != ns[0] || ls[a] != ls[0])
            throw std::runtime_error("read_field: anisotropic grids unsupported");
    Grid g{static_cast<int>(dim), ls[0], static_cast<int>(ns[0])};
    g.validate();
    SampledField f = make_field(g);
    for (cplx& v : f.values) {
        double re = get_f64();
        double im = get_f64();
        v = cplx(re, im);
    }
    if (!in) throw std::runtime_error("read_field: truncated file " + path);
    return f;
}

} // namespace wam
