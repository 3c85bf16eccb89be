#pragma once

#include <string>
#include <vector>

#include "gofdm/harness.hpp"

namespace gofdm {

enum class PlotMetric { MSE, SER, THROUGHPUT };

// Writes a self-contained SVG chart of one metric versus SNR, one line per
// estimator. MSE and SER use a log y-axis; exact zeros are clamped to 1e-6
// and the clamp is annotated. facet_by_d draws one panel per d instead of
// averaging rows across the d grid. Throws on empty input.
void emit_plots(const std::vector<AggregateRow>& rows, PlotMetric metric,
                const std::string& path, bool facet_by_d = false);

}  // namespace gofdm
