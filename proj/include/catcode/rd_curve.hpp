#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "catcode/errors.hpp"

namespace catcode {

enum class Interp { step_hold, linear };

// Operational distortion-vs-rate table of a source encoder. Rate is in bits
// per source sample, distortion is MSE. Immutable once built.
class RdCurve {
  public:
    RdCurve() = default;
    RdCurve(std::vector<std::pair<double, double>> points, Interp interp);

    double eval(double rate) const;

    const std::vector<std::pair<double, double>>& points() const { return points_; }
    Interp interp() const { return interp_; }
    double max_rate() const { return points_.back().first; }

  private:
    std::vector<std::pair<double, double>> points_;
    Interp interp_ = Interp::linear;
};

RdCurve load_rd_curve(const std::vector<std::pair<double, double>>& rows,
                      Interp interp = Interp::linear);

// Synthetic stand-in curve: distortion = variance * 2^(-2 rate), sampled on a
// uniform grid from 0 to max_rate inclusive.
RdCurve parametric_exponential(double variance, double max_rate, int n_points,
                               Interp interp = Interp::linear);

// Reporting helper for 8-bit sources.
double psnr_from_mse(double mse);

}  // namespace catcode
