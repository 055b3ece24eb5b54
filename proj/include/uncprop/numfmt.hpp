#pragma once

#include <string>

namespace uncprop {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double x);

// Round to 9 significant decimal digits (report formatting precision).
double round_sig9(double x);

}  // namespace uncprop
