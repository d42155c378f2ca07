#pragma once

#include <string>

namespace ssbh {

/// Locale-independent shortest round-trip decimal form of a double.
std::string double_to_string(double v);

} // namespace ssbh
