#include "fpme/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>

#include "fpme/errors.hpp"

namespace fpme {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dim_, int n_, double L_) : dim(dim_), n(n_), L(L_) {
    if (dim < 1 || dim > 2) throw GridMismatch("grid dim must be 1 or 2");
    if (!power_of_two(n) || n < 16) throw GridMismatch("grid n must be a power of two >= 16");
    if (!(L > 0.0)) throw GridMismatch("grid half-width L must be positive");
}

std::size_t Grid::size() const {
    std::size_t s = 1;
    for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
    return s;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= dx();
    return v;
}

double mass(const Field& u) {
    double s = 0.0;
    for (double x : u.v) s += x;
    return s * u.grid.cell_volume();
}

double sup_norm(const Field& u) {
    double m = 0.0;
    for (double x : u.v) m = std::max(m, std::abs(x));
    return m;
}

double min_value(const Field& u) {
    double m = u.v.empty() ? 0.0 : u.v[0];
    for (double x : u.v) m = std::min(m, x);
    return m;
}

double l1_norm(const Field& u) {
    double s = 0.0;
    for (double x : u.v) s += std::abs(x);
    return s * u.grid.cell_volume();
}

double l1_distance(const Field& a, const Field& b) {
    if (a.grid != b.grid) throw GridMismatch("l1_distance: fields on different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) s += std::abs(a.v[i] - b.v[i]);
    return s * a.grid.cell_volume();
}

double sup_distance(const Field& a, const Field& b) {
    if (a.grid != b.grid) throw GridMismatch("sup_distance: fields on different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) s = std::max(s, std::abs(a.v[i] - b.v[i]));
    return s;
}

double mass_outside(const Field& u, double radius) {
    const Grid& g = u.grid;
    double s = 0.0;
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i)
            if (std::abs(g.coord(i)) > radius) s += u.at(i);
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                if (std::hypot(g.coord(i), g.coord(j)) > radius) s += u.at(i, j);
    }
    return s * g.cell_volume();
}

double support_radius(const Field& u, double threshold) {
    const Grid& g = u.grid;
    double r = 0.0;
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i)
            if (std::abs(u.at(i)) > threshold) r = std::max(r, std::abs(g.coord(i)));
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                if (std::abs(u.at(i, j)) > threshold)
                    r = std::max(r, std::hypot(g.coord(i), g.coord(j)));
    }
    return r;
}

void write_field(const Field& u, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("write_field: cannot open " + path);
    const std::int64_t dim = u.grid.dim, n = u.grid.n;
    out.write(reinterpret_cast<const char*>(&dim), 8);
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(&u.grid.L), 8);
    out.write(reinterpret_cast<const char*>(&u.time), 8);
    out.write(reinterpret_cast<const char*>(u.v.data()),
              static_cast<std::streamsize>(u.v.size() * 8));
    if (!out) throw Error("write_field: short write to " + path);
}

Field read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("read_field: cannot open " + path);
    std::int64_t dim = 0, n = 0;
    double L = 0.0, time = 0.0;
    in.read(reinterpret_cast<char*>(&dim), 8);
    in.read(reinterpret_cast<char*>(&n), 8);
    in.read(reinterpret_cast<char*>(&L), 8);
    in.read(reinterpret_cast<char*>(&time), 8);
    Field u(Grid(static_cast<int>(dim), static_cast<int>(n), L), time);
    in.read(reinterpret_cast<char*>(u.v.data()), static_cast<std::streamsize>(u.v.size() * 8));
    if (!in) throw Error("read_field: truncated file " + path);
    return u;
}

void write_field_csv(const Field& u, std::ostream& out) {
    if (u.grid.dim != 1) throw GridMismatch("write_field_csv: 1-D fields only");
    char buf[64];
    out << "x,u\n";
    for (int i = 0; i < u.grid.n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", u.grid.coord(i), u.at(i));
        out << buf;
    }
}

}  // namespace fpme
