#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "latsurg/board.hpp"

namespace latsurg {

// Text grid, one line per row, tokens separated by single spaces:
// `.` routing, `#` blocked, `A` ancilla, `M` magic port, `Q<id><h|v>` data.
std::string write_layout_text(const Board& board);
Board parse_layout_text(std::string_view text);

// {"rows", "cols", "grid": [row strings as in the text format]}.
nlohmann::ordered_json layout_to_json(const Board& board);
Board layout_from_json(const nlohmann::json& j);

// Accepts either format; JSON is detected by a leading '{'.
Board parse_layout(std::string_view text);

}  // namespace latsurg
