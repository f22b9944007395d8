#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fpme {

// Uniform periodic tensor grid on the box [-L, L)^dim.
struct Grid {
    int dim = 1;
    int n = 0;       // points per axis, power of two, >= 16
    double L = 0.0;  // half-width

    Grid() = default;
    Grid(int dim_, int n_, double L_);

    double dx() const { return 2.0 * L / n; }
    double coord(int i) const { return -L + i * dx(); }
    std::size_t size() const;
    double cell_volume() const;

    bool operator==(const Grid& o) const { return dim == o.dim && n == o.n && L == o.L; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

// Real samples of u on a grid, row-major for dim = 2, plus the current time.
struct Field {
    Grid grid;
    std::vector<double> v;
    double time = 0.0;

    Field() = default;
    explicit Field(const Grid& g, double t = 0.0) : grid(g), v(g.size(), 0.0), time(t) {}

    double& at(int i) { return v[i]; }
    double at(int i) const { return v[i]; }
    double& at(int i, int j) { return v[static_cast<std::size_t>(i) * grid.n + j]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(i) * grid.n + j]; }
};

double mass(const Field& u);           // cell_volume * sum of samples
double sup_norm(const Field& u);       // max |u|
double min_value(const Field& u);
double l1_norm(const Field& u);
double l1_distance(const Field& a, const Field& b);
double sup_distance(const Field& a, const Field& b);

// Mass carried by cells with |x| > radius (box-adequacy monitor input).
double mass_outside(const Field& u, double radius);

// Largest |x| over cells where |u| exceeds threshold (0 when none do).
double support_radius(const Field& u, double threshold);

// Flat binary layout: dim, n (int64 LE), L, time (f64 LE), then row-major
// f64 samples. CSV emission is 1-D only: columns x,u.
void write_field(const Field& u, const std::string& path);
Field read_field(const std::string& path);
void write_field_csv(const Field& u, std::ostream& out);

}  // namespace fpme
