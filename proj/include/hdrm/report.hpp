#pragma once

#include <string>

#include "hdrm/engine.hpp"

namespace hdrm {

/// Rounds to 4 decimals and strips trailing zeros ("1", "2.038", "18.4195").
std::string format_stat(double x);

/// Plain-text report in the package's printed layout.
std::string render_text(const TestResult& result);

/// Full-precision JSON with every result field and warnings.
std::string render_json(const TestResult& result);

}  // namespace hdrm
