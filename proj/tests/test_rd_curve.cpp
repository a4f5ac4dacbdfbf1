#include <cmath>

#include <doctest.h>

#include "catcode/errors.hpp"
#include "catcode/rd_curve.hpp"

using namespace catcode;

namespace {

bool fails_with(Errc code, const std::vector<std::pair<double, double>>& rows) {
    try {
        load_rd_curve(rows, Interp::linear);
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

}  // namespace

TEST_CASE("curve validation") {
    CHECK(fails_with(Errc::missing_zero_rate, {{0.5, 10.0}, {1.0, 5.0}}));
    CHECK(fails_with(Errc::not_monotone, {{0.0, 10.0}, {0.5, 8.0}, {0.5, 6.0}}));
    CHECK(fails_with(Errc::not_monotone, {{0.0, 10.0}, {0.5, 12.0}}));
    CHECK(fails_with(Errc::negative_value, {{0.0, 10.0}, {0.5, -1.0}}));
    // a leading negative rate means the curve does not start at rate zero
    CHECK(fails_with(Errc::missing_zero_rate, {{-0.5, 10.0}, {0.0, 8.0}}));
    CHECK(fails_with(Errc::negative_value, {{0.0, 10.0}, {-0.5, 8.0}}));
    CHECK_NOTHROW(load_rd_curve({{0.0, 10.0}, {0.5, 10.0}}, Interp::linear));  // flat ok
}

TEST_CASE("evaluation modes") {
    RdCurve lin = load_rd_curve({{0.0, 8.0}, {1.0, 4.0}, {2.0, 1.0}}, Interp::linear);
    CHECK(lin.eval(0.0) == 8.0);
    CHECK(lin.eval(1.0) == 4.0);
    CHECK(lin.eval(0.5) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(lin.eval(1.5) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(lin.eval(2.0) == 1.0);
    CHECK(lin.eval(7.5) == 1.0);  // clamp past the last sample

    RdCurve step = load_rd_curve({{0.0, 8.0}, {1.0, 4.0}}, Interp::step_hold);
    CHECK(step.eval(0.999) == 8.0);
    CHECK(step.eval(1.0) == 4.0);
    CHECK(step.eval(3.0) == 4.0);

    CHECK_THROWS_AS(lin.eval(-0.1), Error);
}

TEST_CASE("parametric exponential family") {
    RdCurve curve = parametric_exponential(100.0, 2.0, 41);
    CHECK(curve.eval(0.0) == doctest::Approx(100.0).epsilon(1e-15));
    for (double r : {0.05, 0.5, 1.0, 1.75, 2.0})
        CHECK(curve.eval(r) == doctest::Approx(100.0 * std::exp2(-2.0 * r)).epsilon(1e-12));
    // non-increasing everywhere on a fine sweep
    double prev = curve.eval(0.0);
    for (int i = 1; i <= 200; ++i) {
        double d = curve.eval(2.0 * i / 200.0);
        CHECK(d <= prev + 1e-15);
        prev = d;
    }
}

TEST_CASE("psnr helper") {
    CHECK(psnr_from_mse(255.0 * 255.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(psnr_from_mse(1.0) == doctest::Approx(10.0 * std::log10(255.0 * 255.0)).epsilon(1e-12));
    CHECK(std::isinf(psnr_from_mse(0.0)));
}
