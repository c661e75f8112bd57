#include "ara/grid.hpp"

#include <cmath>

#include "ara/distributions.hpp"

namespace ara {

namespace {
constexpr double kSnap = 1e9;
constexpr std::size_t kMaxPoints = 10'000'000;
}  // namespace

double snap_price(double value) noexcept { return std::round(value * kSnap) / kSnap; }

std::optional<std::string> PriceGrid::defect() const {
    if (!std::isfinite(min_) || !std::isfinite(max_) || !std::isfinite(step_)) {
        return "grid bounds and step must be finite";
    }
    if (!(min_ < max_)) return "grid is empty: min must be < max";
    if (!(step_ > 0.0)) return "grid step must be > 0";
    if ((max_ - min_) / step_ > static_cast<double>(kMaxPoints)) return "grid has too many points";
    return std::nullopt;
}

std::vector<double> PriceGrid::points() const {
    if (auto why = defect()) throw InvariantError("invalid price grid: " + *why);
    std::vector<double> pts;
    const auto count = static_cast<std::size_t>(std::floor((max_ - min_) / step_ + 1e-9)) + 1;
    pts.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        pts.push_back(snap_price(min_ + step_ * static_cast<double>(k)));
    }
    return pts;
}

}  // namespace ara
