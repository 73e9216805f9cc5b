#pragma once

#include <string>
#include <vector>

#include "qrank/cli/csv_io.hpp"

namespace qrank::cli {

/// Static plot of the classical envelope, the quantum power curve and the
/// chance diagonal, with axes and a legend.
std::string render_roc_svg(const DetectorParams& params, const std::vector<RocRow>& rows);

}  // namespace qrank::cli
