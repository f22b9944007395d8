#include "fpme/fraclap.hpp"

#include <cmath>
#include <functional>

#include "fpme/errors.hpp"

namespace fpme {

namespace {

// Signed frequency index for position i on an axis of n points.
inline int signed_k(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace

SpectralOperator::SpectralOperator(const Grid& g, double s) : grid_(g), s_(s) {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("SpectralOperator: s must be in (0, 1]");
    const int n = g.n;
    const double base = M_PI / g.L;
    const int kcut = n / 3;  // 2/3-rule
    mult_.resize(spectrum_size(g));
    inv_mult_.resize(mult_.size());
    mask_.resize(mult_.size());
    max_mult_ = 0.0;
    if (g.dim == 1) {
        for (int k = 0; k <= n / 2; ++k) {
            const double xi2 = base * base * k * k;
            mult_[k] = k == 0 ? 0.0 : std::pow(xi2, s);
            inv_mult_[k] = k == 0 ? 0.0 : 1.0 / mult_[k];
            mask_[k] = k <= kcut ? 1.0 : 0.0;
            max_mult_ = std::max(max_mult_, mult_[k]);
        }
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            const int ki = signed_k(i, n);
            for (int j = 0; j <= n / 2; ++j, ++idx) {
                const double xi2 = base * base * (static_cast<double>(ki) * ki +
                                                  static_cast<double>(j) * j);
                mult_[idx] = xi2 == 0.0 ? 0.0 : std::pow(xi2, s);
                inv_mult_[idx] = xi2 == 0.0 ? 0.0 : 1.0 / mult_[idx];
                mask_[idx] = (std::abs(ki) <= kcut && j <= kcut) ? 1.0 : 0.0;
                max_mult_ = std::max(max_mult_, mult_[idx]);
            }
        }
    }
}

void SpectralOperator::apply_into(const Field& u, Field& out, SpectralScratch& ws,
                                  bool dealias) const {
    if (u.grid != grid_) throw GridMismatch("apply_fraclap: field not on operator grid");
    ws.ensure(grid_);
    out.grid = grid_;
    out.time = u.time;
    out.v.resize(grid_.size());
    const Fft& fft = Fft::plan(grid_);
    fft.forward(u.v.data(), ws.spec_a.data());
    const std::size_t ns = spectrum_size(grid_);
    if (dealias) {
        for (std::size_t k = 0; k < ns; ++k) ws.spec_a[k] *= mult_[k] * mask_[k];
    } else {
        for (std::size_t k = 0; k < ns; ++k) ws.spec_a[k] *= mult_[k];
    }
    fft.backward_destroys(ws.spec_a.data(), out.v.data());
}

void SpectralOperator::inverse_into(const Field& u, Field& out, SpectralScratch& ws) const {
    if (u.grid != grid_) throw GridMismatch("apply_inverse: field not on operator grid");
    ws.ensure(grid_);
    out.grid = grid_;
    out.time = u.time;
    out.v.resize(grid_.size());
    const Fft& fft = Fft::plan(grid_);
    fft.forward(u.v.data(), ws.spec_a.data());
    const std::size_t ns = spectrum_size(grid_);
    for (std::size_t k = 0; k < ns; ++k) ws.spec_a[k] *= inv_mult_[k];
    fft.backward_destroys(ws.spec_a.data(), out.v.data());
}

Field apply_fraclap(const SpectralOperator& op, const Field& u) {
    SpectralScratch ws;
    Field out;
    op.apply_into(u, out, ws);
    return out;
}

Field apply_inverse(const SpectralOperator& op, const Field& u) {
    SpectralScratch ws;
    Field out;
    op.inverse_into(u, out, ws);
    return out;
}

namespace {

// Evaluate the trigonometric interpolant of one line of n samples at the
// points scale*x_j. `spec` holds the unnormalized half-complex DFT. Points
// that land outside the box evaluate to zero: the field is a box truncation
// of a decaying function, not a genuine periodic signal.
void eval_scaled_line(const std::complex<double>* spec, int n, double L, double scale,
                      double* out) {
    const double dx = 2.0 * L / n;
    const int nh = n / 2;
    for (int j = 0; j < n; ++j) {
        if (std::abs(scale * (-L + j * dx)) > L) {
            out[j] = 0.0;
            continue;
        }
        const double y = scale * (-L + j * dx) + L;  // shifted coordinate in [0, 2L)
        const double phi = M_PI * y / L;
        const std::complex<double> step = std::polar(1.0, phi);
        std::complex<double> rot = step;
        double acc = spec[0].real();
        for (int k = 1; k < nh; ++k) {
            if (k % 128 == 0) rot = std::polar(1.0, phi * k);  // refresh drift
            acc += 2.0 * (spec[k] * rot).real();
            rot *= step;
        }
        // Nyquist mode kept as its cosine part.
        acc += spec[nh].real() * std::cos(phi * nh);
        out[j] = acc / n;
    }
}

}  // namespace

Field resample_scaled(const Field& u, double scale) {
    const Grid& g = u.grid;
    Field out(g, u.time);
    const Fft& fft1 = Fft::plan(Grid(1, g.n, g.L));
    if (g.dim == 1) {
        std::vector<std::complex<double>> spec(g.n / 2 + 1);
        fft1.forward(u.v.data(), spec.data());
        eval_scaled_line(spec.data(), g.n, g.L, scale, out.v.data());
        return out;
    }
    // Separable passes: rows (contiguous), then columns.
    const int n = g.n;
    std::vector<std::complex<double>> spec(n / 2 + 1);
    std::vector<double> line(n), res(n);
    Field mid(g, u.time);
    for (int i = 0; i < n; ++i) {
        fft1.forward(&u.v[static_cast<std::size_t>(i) * n], spec.data());
        eval_scaled_line(spec.data(), n, g.L, scale, &mid.v[static_cast<std::size_t>(i) * n]);
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) line[i] = mid.at(i, j);
        fft1.forward(line.data(), spec.data());
        eval_scaled_line(spec.data(), n, g.L, scale, res.data());
        for (int i = 0; i < n; ++i) out.at(i, j) = res[i];
    }
    return out;
}

Field spectral_derivative(const Field& u, int axis) {
    const Grid& g = u.grid;
    Field out(g, u.time);
    SpectralScratch ws;
    ws.ensure(g);
    const Fft& fft = Fft::plan(g);
    fft.forward(u.v.data(), ws.spec_a.data());
    const double base = M_PI / g.L;
    const int n = g.n;
    if (g.dim == 1) {
        for (int k = 0; k <= n / 2; ++k) {
            const double xi = k == n / 2 ? 0.0 : base * k;  // drop Nyquist for odd operator
            ws.spec_a[k] *= std::complex<double>(0.0, xi);
        }
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            const int ki = signed_k(i, n);
            for (int j = 0; j <= n / 2; ++j, ++idx) {
                int kk = axis == 0 ? ki : j;
                if (std::abs(kk) == n / 2) kk = 0;
                ws.spec_a[idx] *= std::complex<double>(0.0, base * kk);
            }
        }
    }
    fft.backward_destroys(ws.spec_a.data(), out.v.data());
    return out;
}

Field field_from_radial_symbol(const Grid& g, const std::function<double(double)>& symbol) {
    Field out(g, 0.0);
    SpectralScratch ws;
    ws.ensure(g);
    const double base = M_PI / g.L;
    const int n = g.n;
    if (g.dim == 1) {
        for (int k = 0; k <= n / 2; ++k) {
            const double phase = (k % 2 == 0) ? 1.0 : -1.0;
            ws.spec_a[k] = symbol(base * k) * phase;
        }
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            const int ki = signed_k(i, n);
            for (int j = 0; j <= n / 2; ++j, ++idx) {
                const double xi = base * std::hypot(static_cast<double>(ki), static_cast<double>(j));
                const double phase = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                ws.spec_a[idx] = symbol(xi) * phase;
            }
        }
    }
    Fft::plan(g).backward_destroys(ws.spec_a.data(), out.v.data());
    const double scale = std::pow(1.0 / g.dx(), g.dim);
    for (double& x : out.v) x *= scale;
    return out;
}

}  // namespace fpme
