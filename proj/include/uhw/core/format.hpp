#pragma once

#include <string>

namespace uhw {

/// Round-trip decimal form of a double (%.17g); "nan"/"inf" for specials.
std::string format_double(double v);

}  // namespace uhw
