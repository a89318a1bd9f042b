#include "cclab/spectral/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cclab::spectral {

Fft::Fft(int n) : n_(n) {
    if (n < 1 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of two");
    rev_.resize(static_cast<size_t>(n));
    int logn = 0;
    while ((1 << logn) < n) ++logn;
    for (int i = 0; i < n; ++i) {
        int r = 0;
        for (int b = 0; b < logn; ++b)
            if (i & (1 << b)) r |= 1 << (logn - 1 - b);
        rev_[static_cast<size_t>(i)] = r;
    }
    roots_.resize(static_cast<size_t>(n / 2 > 0 ? n / 2 : 1));
    for (int j = 0; j < n / 2; ++j) {
        double ang = -2.0 * std::numbers::pi * j / n;
        roots_[static_cast<size_t>(j)] = {std::cos(ang), std::sin(ang)};
    }
}

void Fft::run(cplx* a, bool inv) const {
    for (int i = 0; i < n_; ++i) {
        int r = rev_[static_cast<size_t>(i)];
        if (i < r) std::swap(a[i], a[r]);
    }
    for (int len = 2; len <= n_; len <<= 1) {
        int step = n_ / len;
        for (int i = 0; i < n_; i += len) {
            for (int j = 0; j < len / 2; ++j) {
                cplx w = roots_[static_cast<size_t>(j * step)];
                if (inv) w = std::conj(w);
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

void Fft::forward(cplx* a) const { run(a, false); }

void Fft::inverse(cplx* a) const {
    run(a, true);
    double s = 1.0 / n_;
    for (int i = 0; i < n_; ++i) a[i] *= s;
}

namespace ref {

std::vector<cplx> naive_dft(const std::vector<cplx>& a, bool inverse) {
    size_t n = a.size();
    std::vector<cplx> out(n);
    double sgn = inverse ? 1.0 : -1.0;
    for (size_t k = 0; k < n; ++k) {
        cplx s = 0;
        for (size_t j = 0; j < n; ++j) {
            double ang = sgn * 2.0 * std::numbers::pi * static_cast<double>(k * j % n) /
                         static_cast<double>(n);
            s += a[j] * cplx{std::cos(ang), std::sin(ang)};
        }
        out[k] = inverse ? s / static_cast<double>(n) : s;
    }
    return out;
}

}  // namespace ref

}  // namespace cclab::spectral
