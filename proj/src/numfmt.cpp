#include "uncprop/numfmt.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string_view>

namespace uncprop {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    std::string shortest = buf;
    if (shortest.find('e') != std::string::npos) {
        // %g likes scientific notation even for round numbers ("5e+01");
        // prefer a fixed form when it round-trips and is no longer.
        for (int decimals = 0; decimals <= 18; ++decimals) {
            std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
            if (std::strtod(buf, nullptr) == x) {
                if (std::string_view(buf).size() <= shortest.size()) shortest = buf;
                break;
            }
        }
    }
    return shortest;
}

double round_sig9(double x) {
    if (!std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return std::strtod(buf, nullptr);
}

}  // namespace uncprop
