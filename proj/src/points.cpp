#include "igk/points.hpp"

#include <cmath>

#include "igk/error.hpp"

namespace igk {

PointMatrix::PointMatrix(std::size_t dim) : dim_(dim) {}

PointMatrix::PointMatrix(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0 && !coords_.empty()) {
        throw InvalidArgument("point dimension must be at least 1");
    }
    if (dim_ != 0 && coords_.size() % dim_ != 0) {
        throw DimensionMismatch("coordinate count is not a multiple of the dimension");
    }
}

PointMatrix PointMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    PointMatrix m(rows.front().size());
    for (const auto& r : rows) m.push_back(r);
    return m;
}

void PointMatrix::push_back(std::span<const double> p) {
    if (dim_ == 0) dim_ = p.size();
    if (p.size() != dim_ || dim_ == 0) {
        throw DimensionMismatch("expected dimension " + std::to_string(dim_) + ", got " +
                                std::to_string(p.size()));
    }
    coords_.insert(coords_.end(), p.begin(), p.end());
}

void PointMatrix::erase_row(std::size_t i) {
    const auto first = coords_.begin() + static_cast<std::ptrdiff_t>(i * dim_);
    coords_.erase(first, first + static_cast<std::ptrdiff_t>(dim_));
}

double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

}  // namespace igk
