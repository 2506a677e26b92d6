#pragma once

#include <string>
#include <utility>
#include <vector>

#include "latsurg/board.hpp"

namespace latsurg {

// Static board drawing: X boundaries solid, Z boundaries dashed.
std::string board_svg(const Board& board, int cell = 40);

// Horizontal bar chart of (label, value) pairs.
std::string bar_chart_svg(const std::string& title, const std::vector<std::pair<std::string, double>>& bars);

}  // namespace latsurg
