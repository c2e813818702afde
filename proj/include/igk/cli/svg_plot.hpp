#ifndef IGK_CLI_SVG_PLOT_HPP
#define IGK_CLI_SVG_PLOT_HPP

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "igk/dataset.hpp"
#include "igk/evaluation.hpp"
#include "igk/kmeans.hpp"

namespace igk::cli {

enum class PlotKind { scatter_clusters, scatter_removed, mse_vs_threshold };

std::optional<PlotKind> parse_plot_kind(std::string_view s);

// Markers carry stable class names ("point", "removed", "centroid",
// "vertex") so the output can be inspected mechanically.

/// Points colored by nearest-centroid label, centroids as black squares.
/// Points whose id is in `removed` are drawn as red crosses and left out of
/// the label coloring. Requires 2-D data.
std::string render_scatter(const DataSet& data, const Centroids& centroids,
                           const std::set<PointId>& removed, std::string_view title);

/// Median MSE against threshold, one vertex per row.
std::string render_sweep(const std::vector<SweepRow>& rows, std::string_view title);

}  // namespace igk::cli

#endif  // IGK_CLI_SVG_PLOT_HPP
