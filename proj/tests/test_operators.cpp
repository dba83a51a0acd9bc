#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "stokes/operators.hpp"
#include "stokes/profile.hpp"

using namespace stokes;

namespace {
constexpr double kPi = std::numbers::pi;

GridFn sample(int n, auto&& fn) {
    GridFn s(n);
    for (int j = 0; j < n; ++j) s[j] = fn(InterfaceProfile::grid_point(j, n));
    return s;
}

Eigen::VectorXd to_vec(const GridFn& g) {
    return Eigen::Map<const Eigen::VectorXd>(g.data(), g.size());
}
}  // namespace

TEST_CASE("Hilbert transform on basis modes") {
    const int n = 128;
    auto ones = sample(n, [](double) { return 1.0; });
    auto h1 = hilbert(ones);
    for (double v : h1) CHECK(std::abs(v) < 1e-14);
    for (int k : {1, 5}) {
        auto hc = hilbert(sample(n, [&](double xi) { return std::cos(k * xi); }));
        for (int j = 0; j < n; ++j)
            CHECK(hc[j] == doctest::Approx(std::sin(k * InterfaceProfile::grid_point(j, n)))
                               .epsilon(1e-13));
    }
    auto hs = hilbert(sample(n, [](double xi) { return std::sin(3 * xi); }));
    for (int j = 0; j < n; ++j)
        CHECK(hs[j] == doctest::Approx(-std::cos(3 * InterfaceProfile::grid_point(j, n)))
                           .epsilon(1e-13));
    // matrix agrees with the transform
    Eigen::MatrixXd H = hilbert_matrix(n);
    auto phi = sample(n, [](double xi) { return std::exp(std::sin(xi)); });
    Eigen::VectorXd mv = H * to_vec(phi);
    auto hv = hilbert(phi);
    for (int j = 0; j < n; ++j) CHECK(mv(j) == doctest::Approx(hv[j]).epsilon(1e-12));
    CHECK((H * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("flat-interface operator with trivial indices is the Hilbert transform") {
    const int n = 128;
    OperatorSpec spec;
    spec.grid_size = n;
    Eigen::MatrixXd B = assemble_B(spec);
    auto c1 = sample(n, [](double xi) { return std::cos(xi); });
    Eigen::VectorXd got = B * to_vec(c1);
    for (int j = 0; j < n; ++j)
        CHECK(got(j) == doctest::Approx(std::sin(InterfaceProfile::grid_point(j, n)))
                            .epsilon(1e-10));
    CHECK((B - hilbert_matrix(n)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("vanishing numerator slots give the zero matrix") {
    const int n = 32;
    OperatorSpec spec;
    spec.grid_size = n;
    spec.q = 1;
    spec.c = {GridFn(n, 0.0)};
    CHECK(assemble_B(spec).cwiseAbs().maxCoeff() == 0.0);

    // C with one zero difference-quotient slot
    CHECK(assemble_C({}, {GridFn(n, 0.0)}, n).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spec validation") {
    OperatorSpec spec;
    spec.grid_size = 32;
    spec.p = 2;  // p > n+q+1 = 1
    CHECK_THROWS(assemble_B(spec));
    spec.p = 0;
    spec.a = {GridFn(32, 0.0)};  // m = 0 but one a slot
    CHECK_THROWS(assemble_B(spec));
    spec.m = 1;
    spec.a = {GridFn(16, 0.0)};  // wrong grid
    CHECK_THROWS(assemble_B(spec));
}

TEST_CASE("bounded-kernel operator against adaptive quadrature") {
    // indices (n=2, m=1, p=2, q=0): the kernel is ~ t near s = 0, so plain
    // quadrature of the explicit integrand is a valid reference
    const int n = 256;
    auto slot = sample(n, [](double xi) { return 0.5 * std::cos(xi); });
    OperatorSpec spec;
    spec.grid_size = n;
    spec.n = 2;
    spec.m = 1;
    spec.p = 2;
    spec.b = {slot, slot};
    spec.a = {slot};
    Eigen::MatrixXd B = assemble_B(spec);
    Eigen::VectorXd got = B * Eigen::VectorXd::Ones(n);

    auto fslot = [](double xi) { return 0.5 * std::cos(xi); };
    for (int j = 0; j < n; j += 32) {
        const double xi = InterfaceProfile::grid_point(j, n);
        auto integrand = [&](double s) {
            const double t = std::tan(0.5 * s);
            const double d = fslot(xi) - fslot(xi - s);
            const double r = std::tanh(0.5 * d) / t;
            return r * r / (1.0 + r * r) * t;
        };
        const double want =
            (oracles::adaptive_simpson(integrand, -kPi, -1e-12) +
             oracles::adaptive_simpson(integrand, 1e-12, kPi)) / (2 * kPi);
        CHECK(got(j) == doctest::Approx(want).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("singular operator with p = 0 against principal-value quadrature") {
    const int n = 256;
    auto slot = sample(n, [](double xi) { return 0.3 * std::sin(xi); });
    OperatorSpec spec;
    spec.grid_size = n;
    spec.n = 1;
    spec.m = 1;
    spec.b = {slot};
    spec.a = {slot};
    auto phi = sample(n, [](double xi) { return std::cos(2 * xi); });
    Eigen::VectorXd got = assemble_B(spec) * to_vec(phi);

    auto fslot = [](double xi) { return 0.3 * std::sin(xi); };
    auto fphi = [](double xi) { return std::cos(2 * xi); };
    for (int j = 0; j < n; j += 32) {
        const double xi = InterfaceProfile::grid_point(j, n);
        auto integrand = [&](double s) {
            const double t = std::tan(0.5 * s);
            const double r = std::tanh(0.5 * (fslot(xi) - fslot(xi - s))) / t;
            return r / (1.0 + r * r) * fphi(xi - s) / t;
        };
        const double want = oracles::pv_integral(integrand) / (2 * kPi);
        CHECK(got(j) == doctest::Approx(want).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("difference-quotient operator against principal-value quadrature") {
    const int n = 256;
    auto b = sample(n, [](double xi) { return 0.3 * std::sin(xi) + 0.1 * std::cos(2 * xi); });
    auto phi = sample(n, [](double xi) { return std::cos(xi); });
    Eigen::VectorXd got = assemble_C({}, {b}, n) * to_vec(phi);

    auto fb = [](double xi) { return 0.3 * std::sin(xi) + 0.1 * std::cos(2 * xi); };
    for (int j = 0; j < n; j += 32) {
        const double xi = InterfaceProfile::grid_point(j, n);
        auto integrand = [&](double s) {
            return (fb(xi) - fb(xi - s)) / s * std::cos(xi - s) / s;
        };
        const double want = oracles::pv_integral(integrand) / kPi;
        CHECK(got(j) == doctest::Approx(want).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("denominator slots with zero argument change nothing") {
    const int n = 64;
    auto b = sample(n, [](double xi) { return 0.2 * std::cos(xi); });
    Eigen::MatrixXd c0 = assemble_C({}, {b}, n);
    Eigen::MatrixXd c3 = assemble_C({GridFn(n, 0.0), GridFn(n, 0.0), GridFn(n, 0.0)}, {b}, n);
    CHECK((c0 - c3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("adjoint sign pattern") {
    const int n = 256;
    auto slot = sample(n, [](double xi) { return 0.3 * std::cos(xi); });
    auto beta = sample(n, [](double xi) { return std::sin(xi) + 0.5 * std::cos(3 * xi); });
    auto gamma = sample(n, [](double xi) { return std::cos(2 * xi) - 0.2 * std::sin(4 * xi); });

    for (int p : {0, 1, 2}) {
        OperatorSpec spec;
        spec.grid_size = n;
        spec.n = 1;
        spec.m = 1;
        spec.p = p;
        spec.q = 1;
        spec.b = {slot};
        spec.a = {slot};
        spec.c = {slot};
        Eigen::MatrixXd B = assemble_B(spec);
        const double sign = (p % 2 == 0) ? -1.0 : 1.0;  // (-1)^{p+1}
        const double lhs = (B * to_vec(beta)).dot(to_vec(gamma));
        const double rhs = to_vec(beta).dot(sign * B * to_vec(gamma));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("splitting into bounded and difference-quotient parts") {
    const int n = 256;
    auto a1 = sample(n, [](double xi) { return 0.2 * std::cos(xi); });
    auto b1 = sample(n, [](double xi) { return 0.15 * std::sin(2 * xi); });
    auto c1 = sample(n, [](double xi) { return 0.1 * std::cos(3 * xi); });
    OperatorSpec spec;
    spec.grid_size = n;
    spec.n = 1;
    spec.m = 1;
    spec.q = 1;
    spec.p = 0;
    spec.a = {a1};
    spec.b = {b1};
    spec.c = {c1};
    Eigen::MatrixXd lhs = assemble_B(spec);
    Eigen::MatrixXd rhs = assemble_A1(spec) + assemble_C({a1}, {b1, c1}, n);
    auto phi = sample(n, [](double xi) { return std::cos(xi) + 0.3 * std::sin(2 * xi); });
    Eigen::VectorXd diff = (lhs - rhs) * to_vec(phi);
    CHECK(diff.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("log-kernel operator at the flat interface") {
    const int n = 128;
    Eigen::MatrixXd B0 = assemble_B0(InterfaceProfile(n));
    Eigen::VectorXd on_ones = B0 * Eigen::VectorXd::Ones(n);
    for (int j = 0; j < n; ++j)
        CHECK(on_ones(j) == doctest::Approx(-2.0 * std::numbers::ln2).epsilon(1e-12));
    for (int k : {1, 4}) {
        Eigen::VectorXd got = B0 * to_vec(sample(n, [&](double xi) { return std::cos(k * xi); }));
        for (int j = 0; j < n; ++j)
            CHECK(got(j) == doctest::Approx(-std::cos(k * InterfaceProfile::grid_point(j, n)) / k)
                                .epsilon(1e-11).scale(1.0));
    }
}

TEST_CASE("log-kernel operator against split adaptive quadrature") {
    const int n = 256;
    auto f = InterfaceProfile::from_samples(
        sample(n, [](double xi) { return 0.2 * std::cos(xi); }));
    auto phi = sample(n, [](double xi) { return std::cos(2 * xi); });
    Eigen::VectorXd got = assemble_B0(f) * to_vec(phi);

    auto ff = [](double xi) { return 0.2 * std::cos(xi); };
    for (int j = 0; j < n; j += 32) {
        const double xi = InterfaceProfile::grid_point(j, n);
        // smooth remainder, naive kernel formula
        auto rem = [&](double s) {
            const double t = std::tan(0.5 * s);
            const double T = std::tanh(0.5 * (ff(xi) - ff(xi - s)));
            const double ker =
                std::log((t * t + T * T) / ((1 + t * t) * (1 - T * T)));
            return (ker - std::log(4 * std::pow(std::sin(0.5 * s), 2))) *
                   std::cos(2 * (xi - s));
        };
        const double smooth =
            (oracles::adaptive_simpson(rem, -kPi, -1e-7) +
             oracles::adaptive_simpson(rem, 1e-7, kPi)) / (2 * kPi);
        // the log part acts on cos(2 xi) as multiplication by -1/2
        const double want = smooth - 0.5 * std::cos(2 * xi);
        CHECK(got(j) == doctest::Approx(want).epsilon(1e-7).scale(1.0));
    }
}

TEST_CASE("doubling the grid slashes the quadrature error") {
    auto fslot = [](double xi) { return 0.5 * std::sin(3 * xi); };
    auto fphi = [](double xi) { return std::cos(2 * xi); };

    auto worst_err = [&](int n) {
        auto slot = sample(n, fslot);
        OperatorSpec spec;
        spec.grid_size = n;
        spec.n = 1;
        spec.m = 1;
        spec.b = {slot};
        spec.a = {slot};
        Eigen::VectorXd got = assemble_B(spec) * to_vec(sample(n, fphi));
        double e = 0.0;
        for (int j = 0; j < n; j += n / 8) {
            const double xi = InterfaceProfile::grid_point(j, n);
            auto integrand = [&](double s) {
                const double t = std::tan(0.5 * s);
                const double r = std::tanh(0.5 * (fslot(xi) - fslot(xi - s))) / t;
                return r / (1.0 + r * r) * fphi(xi - s) / t;
            };
            e = std::max(e, std::abs(got(j) - oracles::pv_integral(integrand) / (2 * kPi)));
        }
        return e;
    };

    const double e32 = worst_err(32);
    const double e64 = worst_err(64);
    CHECK(e64 * 1e2 <= e32);
    CHECK(e64 < 1e-6);
}
