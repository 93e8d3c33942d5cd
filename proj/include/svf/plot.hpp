#pragma once

#include <optional>
#include <string>

#include "svf/svf_model.hpp"

namespace svf::plot {

inline constexpr std::size_t kPlotRows = 101;

/// CSV with header x,lower,upper (and h when a map is given), one row per
/// equally spaced sample over the domain. Scalar instances only.
std::string plot_csv(const model::SvFunction& f, const std::optional<model::AffineMap>& h,
                     std::size_t rows = kPlotRows);

/// Line plot of the same series.
std::string plot_svg(const model::SvFunction& f, const std::optional<model::AffineMap>& h,
                     std::size_t rows = kPlotRows);

/// Shortest decimal that round-trips to the same double.
std::string shortest(double v);

}  // namespace svf::plot
