#include "catcode/rd_curve.hpp"

#include <cmath>
#include <limits>

namespace catcode {

RdCurve::RdCurve(std::vector<std::pair<double, double>> points, Interp interp)
    : points_(std::move(points)), interp_(interp) {
    require(!points_.empty(), Errc::missing_zero_rate, "curve has no points");
    require(points_.front().first == 0.0, Errc::missing_zero_rate,
            "curve must define distortion at rate 0");
    double prev_rate = -1.0;
    double prev_dist = -1.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        double rate = points_[i].first;
        double dist = points_[i].second;
        require(rate >= 0.0 && dist >= 0.0 && std::isfinite(rate) && std::isfinite(dist),
                Errc::negative_value, "curve points must be finite and non-negative");
        require(rate > prev_rate, Errc::not_monotone, "curve rates must strictly increase");
        if (i > 0)
            require(dist <= prev_dist, Errc::not_monotone,
                    "distortion must be non-increasing in rate");
        prev_rate = rate;
        prev_dist = dist;
    }
}

double RdCurve::eval(double rate) const {
    require(rate >= 0.0, Errc::negative_rate, "rate must be non-negative");
    if (rate >= points_.back().first) return points_.back().second;
    // Largest sample index with rate <= query.
    std::size_t lo = 0;
    std::size_t hi = points_.size() - 1;
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (points_[mid].first <= rate)
            lo = mid;
        else
            hi = mid;
    }
    if (points_[lo].first == rate || interp_ == Interp::step_hold) return points_[lo].second;
    double r0 = points_[lo].first, d0 = points_[lo].second;
    double r1 = points_[hi].first, d1 = points_[hi].second;
    double t = (rate - r0) / (r1 - r0);
    return d0 + t * (d1 - d0);
}

RdCurve load_rd_curve(const std::vector<std::pair<double, double>>& rows, Interp interp) {
    return RdCurve(rows, interp);
}

RdCurve parametric_exponential(double variance, double max_rate, int n_points, Interp interp) {
    require(variance > 0.0, Errc::negative_value, "variance must be positive");
    require(max_rate > 0.0, Errc::negative_value, "max_rate must be positive");
    require(n_points >= 2, Errc::negative_value, "need at least two points");
    std::vector<std::pair<double, double>> rows;
    rows.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        double rate = max_rate * static_cast<double>(i) / static_cast<double>(n_points - 1);
        rows.emplace_back(rate, variance * std::exp2(-2.0 * rate));
    }
    return RdCurve(std::move(rows), interp);
}

double psnr_from_mse(double mse) {
    if (mse <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace catcode
