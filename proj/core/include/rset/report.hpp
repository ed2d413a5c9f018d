#pragma once

#include <string>

#include "rset/derand.hpp"
#include "rset/ruling.hpp"

namespace rset {

// All rendering is byte-deterministic: fixed field sets, alphabetical JSON
// keys, exact integers as decimal strings, no floating point.

std::string render_report_json(const RulingSetResult& res, SimMode mode);
std::string render_report_text(const RulingSetResult& res, SimMode mode);

// Line-delimited trace: derandomization chunk records followed by simulator
// round records and a final summary record.
std::string render_trace(const RulingSetResult& res);

std::string render_precondition(const PreconditionReport& rep);

std::string mode_name(SimMode mode);

}  // namespace rset
