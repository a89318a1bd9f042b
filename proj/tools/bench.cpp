// Timing comparison of the OpenMP kernels against the serial reference
// implementations used as test oracles.
#include <chrono>
#include <iostream>

#include "cclab/spectral/quadrature.hpp"

using namespace cclab;
using namespace cclab::spectral;
using clock_type = std::chrono::high_resolution_clock;

static double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 256;
    std::cout << "grid " << n << "x" << n << "\n";

    BumpSpec bs;
    bs.dim = 2;
    bs.seed = 42;
    GridField f = sample_field(*random_bump_scalar(bs), n, "f");

    auto t0 = clock_type::now();
    GridField spec_fast = fft_forward(f);
    double t_fast = ms_since(t0);

    t0 = clock_type::now();
    GridField spec_ref = ref::fft_forward(f);
    double t_ref = ms_since(t0);

    double diff = 0, scale = 0;
    for (size_t i = 0; i < spec_fast.a.size(); ++i) {
        diff = std::max(diff, std::abs(spec_fast.a[i] - spec_ref.a[i]));
        scale = std::max(scale, std::abs(spec_ref.a[i]));
    }
    std::cout << "fft_forward      " << t_fast << " ms   (naive reference " << t_ref
              << " ms, agreement " << diff / scale << ")\n";

    t0 = clock_type::now();
    double i_fast = integral_abs(f);
    double t_int = ms_since(t0);
    t0 = clock_type::now();
    double i_ref = ref::integral_abs(f);
    double t_int_ref = ms_since(t0);
    std::cout << "integral_abs     " << t_int << " ms   (serial reference " << t_int_ref
              << " ms, agreement " << std::abs(i_fast - i_ref) / i_ref << ")\n";

    t0 = clock_type::now();
    GridField d = spectral_derivative(f, MultiIndex{1, 1});
    double t_d = ms_since(t0);
    std::cout << "mixed derivative " << t_d << " ms  (|d| = " << l2_norm(d) << ")\n";

    OperatorSpec jac = parse_operator(
        "operator \"j\" { dims 2; functions u: R^2;"
        " expr = dx(u[1])*dy(u[2]) - dy(u[1])*dx(u[2]); }");
    FieldMap fields = sample_spec_fields(jac, n, 42);
    t0 = clock_type::now();
    QuadratureResult q = quadrature_integral(jac, fields, n);
    double t_q = ms_since(t0);
    std::cout << "quadrature       " << t_q << " ms  (rel " << q.rel() << ")\n";
    return 0;
}
