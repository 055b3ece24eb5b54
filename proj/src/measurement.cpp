#include "uncprop/measurement.hpp"

#include <cmath>

#include "uncprop/error.hpp"
#include "uncprop/numfmt.hpp"

namespace uncprop {

Measurement::Measurement(double value, double unc) : value_(value), unc_(unc) {
    if (!std::isfinite(value) || !std::isfinite(unc))
        fail(errc::non_finite,
             "measurement components must be finite, got " + format_double(value) + " +- " + format_double(unc));
    if (unc < 0.0)
        fail(errc::negative_uncertainty, "standard uncertainty must be >= 0, got " + format_double(unc));
}

RelativeUncertainty relative(const Measurement& m) {
    if (m.value() == 0.0)
        fail(errc::zero_value, "relative uncertainty is undefined for a zero-valued measurement");
    return RelativeUncertainty{m.unc() / std::fabs(m.value())};
}

}  // namespace uncprop
