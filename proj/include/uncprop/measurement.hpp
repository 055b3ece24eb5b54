#pragma once

namespace uncprop {

/// A scalar quantity with its standard (1-sigma) uncertainty. Unit-agnostic:
/// value and uncertainty share whatever unit the caller works in. Immutable
/// after construction; construction rejects negative uncertainties and
/// non-finite components.
class Measurement {
public:
    Measurement() = default;  // 0 +- 0
    Measurement(double value, double unc);

    double value() const { return value_; }
    double unc() const { return unc_; }

    bool operator==(const Measurement&) const = default;

private:
    double value_ = 0.0;
    double unc_ = 0.0;
};

/// Dimensionless unc/|value| ratio.
struct RelativeUncertainty {
    double ratio = 0.0;
};

/// unc/|value|; undefined (ZeroValue) when value == 0.
RelativeUncertainty relative(const Measurement& m);

}  // namespace uncprop
