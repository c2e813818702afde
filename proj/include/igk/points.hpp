#ifndef IGK_POINTS_HPP
#define IGK_POINTS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace igk {

/// Row-major block of equal-dimension real vectors.
class PointMatrix {
public:
    PointMatrix() = default;
    explicit PointMatrix(std::size_t dim);
    PointMatrix(std::size_t dim, std::vector<double> coords);

    static PointMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rows() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const noexcept { return coords_.empty(); }

    std::span<const double> row(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    std::span<double> row(std::size_t i) { return {coords_.data() + i * dim_, dim_}; }

    std::span<const double> flat() const noexcept { return coords_; }

    void push_back(std::span<const double> p);
    void erase_row(std::size_t i);

    bool operator==(const PointMatrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b);

}  // namespace igk

#endif  // IGK_POINTS_HPP
