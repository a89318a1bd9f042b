#pragma once

#include <complex>
#include <vector>

namespace cclab::spectral {

using cplx = std::complex<double>;

/// Iterative radix-2 transform for one power-of-two size. Forward is
/// unnormalized, inverse carries the 1/n factor.
class Fft {
  public:
    explicit Fft(int n);

    int size() const { return n_; }
    void forward(cplx* a) const;
    void inverse(cplx* a) const;

  private:
    void run(cplx* a, bool inv) const;

    int n_;
    std::vector<int> rev_;
    std::vector<cplx> roots_;      // e^{-2 pi i j / n}, j < n/2
};

namespace ref {
// O(n^2) discrete Fourier transform, the serial oracle for the fast path.
std::vector<cplx> naive_dft(const std::vector<cplx>& a, bool inverse);
}  // namespace ref

}  // namespace cclab::spectral
