#include "uncprop/propagation.hpp"

#include <cmath>
#include <cstdlib>
#include <unordered_map>

#include "uncprop/error.hpp"
#include "uncprop/numfmt.hpp"

namespace uncprop {

// Denominators smaller than this are reported as division by zero rather
// than letting the quotient overflow into a plausible-looking number.
static constexpr double kMinDenominator = 1e-300;

double Gradient::partial(std::string_view input) const {
    for (const auto& [name, d] : partials)
        if (name == input) return d;
    fail(errc::missing_input, "no partial recorded for input '" + std::string(input) + "'");
}

const BudgetTerm* UncertaintyBudget::find(std::string_view input) const {
    for (const auto& c : contributions)
        if (c.input == input) return &c;
    return nullptr;
}

namespace {

// Value plus gradient components, one per declared input.
struct Dual {
    double value = 0.0;
    std::vector<double> grad;

    explicit Dual(std::size_t n) : grad(n, 0.0) {}
};

double ipow(double base, int exponent) {
    if (exponent < 0) {
        if (std::fabs(base) < kMinDenominator)
            fail(errc::division_by_zero, "power with negative exponent of a (near-)zero base");
        return 1.0 / ipow(base, -exponent);
    }
    double result = 1.0, acc = base;
    for (int e = exponent; e > 0; e >>= 1) {
        if (e & 1) result *= acc;
        acc *= acc;
    }
    return result;
}

Dual eval_dual(const Expr& e, const std::unordered_map<std::string, std::size_t>& index,
               std::span<const double> values, std::size_t n) {
    switch (e.kind()) {
        case Expr::Kind::Constant: {
            Dual d(n);
            d.value = e.constant_value();
            return d;
        }
        case Expr::Kind::Variable: {
            Dual d(n);
            std::size_t i = index.at(e.variable_name());
            d.value = values[i];
            d.grad[i] = 1.0;
            return d;
        }
        case Expr::Kind::Negate: {
            Dual a = eval_dual(*e.lhs(), index, values, n);
            a.value = -a.value;
            for (double& g : a.grad) g = -g;
            return a;
        }
        case Expr::Kind::Add: {
            Dual a = eval_dual(*e.lhs(), index, values, n);
            Dual b = eval_dual(*e.rhs(), index, values, n);
            a.value += b.value;
            for (std::size_t i = 0; i < n; ++i) a.grad[i] += b.grad[i];
            return a;
        }
        case Expr::Kind::Subtract: {
            Dual a = eval_dual(*e.lhs(), index, values, n);
            Dual b = eval_dual(*e.rhs(), index, values, n);
            a.value -= b.value;
            for (std::size_t i = 0; i < n; ++i) a.grad[i] -= b.grad[i];
            return a;
        }
        case Expr::Kind::Multiply: {
            Dual a = eval_dual(*e.lhs(), index, values, n);
            Dual b = eval_dual(*e.rhs(), index, values, n);
            for (std::size_t i = 0; i < n; ++i) a.grad[i] = a.grad[i] * b.value + a.value * b.grad[i];
            a.value *= b.value;
            return a;
        }
        case Expr::Kind::Divide: {
            Dual a = eval_dual(*e.lhs(), index, values, n);
            Dual b = eval_dual(*e.rhs(), index, values, n);
            if (std::fabs(b.value) < kMinDenominator)
                fail(errc::division_by_zero, "denominator evaluated to " + format_double(b.value));
            double q = a.value / b.value;
            for (std::size_t i = 0; i < n; ++i) a.grad[i] = (a.grad[i] - q * b.grad[i]) / b.value;
            a.value = q;
            return a;
        }
        case Expr::Kind::Power: {
            Dual a = eval_dual(*e.lhs(), index, values, n);
            int k = e.exponent();
            double factor = k == 0 ? 0.0 : static_cast<double>(k) * ipow(a.value, k - 1);
            for (double& g : a.grad) g *= factor;
            a.value = ipow(a.value, k);  // x^0 == 1 by convention, also at x == 0
            return a;
        }
    }
    fail(errc::bad_request, "corrupt expression node");
}

// Non-throwing value-only walk for the Monte Carlo hot path. Returns false
// on a singular or non-finite intermediate.
bool eval_value(const Expr& e, const std::unordered_map<std::string, std::size_t>& index,
                std::span<const double> values, double& out) noexcept {
    switch (e.kind()) {
        case Expr::Kind::Constant:
            out = e.constant_value();
            return true;
        case Expr::Kind::Variable:
            out = values[index.at(e.variable_name())];
            return true;
        case Expr::Kind::Negate: {
            double a;
            if (!eval_value(*e.lhs(), index, values, a)) return false;
            out = -a;
            return true;
        }
        case Expr::Kind::Power: {
            double a;
            if (!eval_value(*e.lhs(), index, values, a)) return false;
            int k = e.exponent();
            if (k < 0 && std::fabs(a) < kMinDenominator) return false;
            double result = 1.0, acc = a;
            for (int m = k < 0 ? -k : k; m > 0; m >>= 1) {
                if (m & 1) result *= acc;
                acc *= acc;
            }
            out = k < 0 ? 1.0 / result : result;
            return std::isfinite(out);
        }
        default: {
            double a, b;
            if (!eval_value(*e.lhs(), index, values, a)) return false;
            if (!eval_value(*e.rhs(), index, values, b)) return false;
            switch (e.kind()) {
                case Expr::Kind::Add: out = a + b; break;
                case Expr::Kind::Subtract: out = a - b; break;
                case Expr::Kind::Multiply: out = a * b; break;
                default:
                    if (std::fabs(b) < kMinDenominator) return false;
                    out = a / b;
                    break;
            }
            return std::isfinite(out);
        }
    }
}

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& name : names) {
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

}  // namespace

namespace detail {

// Shared by evaluate/evaluate_with_partials/montecarlo: checks the input map
// against the declared set and lays values out in declared order.
void check_inputs(const Model& m, const InputMap& inputs,
                  std::unordered_map<std::string, std::size_t>& index, std::vector<double>& values) {
    const auto& declared = m.inputs();
    std::vector<std::string> missing;
    index.clear();
    values.clear();
    index.reserve(declared.size());
    values.reserve(declared.size());
    for (std::size_t i = 0; i < declared.size(); ++i) {
        auto it = inputs.find(declared[i]);
        if (it == inputs.end()) {
            missing.push_back(declared[i]);
            continue;
        }
        index.emplace(declared[i], i);
        values.push_back(it->second.value());
    }
    if (!missing.empty())
        fail(errc::missing_input, "missing input(s): " + join_names(missing));
    if (inputs.size() != declared.size()) {
        std::vector<std::string> extra;
        for (const auto& [name, _] : inputs)
            if (!index.contains(name)) extra.push_back(name);
        fail(errc::unused_input, "input(s) not used by the model: " + join_names(extra));
    }
}

bool eval_model_value(const Model& m, const std::unordered_map<std::string, std::size_t>& index,
                      std::span<const double> values, double& out) noexcept {
    return eval_value(*m.root(), index, values, out);
}

}  // namespace detail

Gradient evaluate_with_partials(const Model& m, const InputMap& inputs) {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<double> values;
    detail::check_inputs(m, inputs, index, values);

    Dual result = eval_dual(*m.root(), index, values, m.inputs().size());
    if (!std::isfinite(result.value))
        fail(errc::overflow, "model value overflowed to " + format_double(result.value));

    Gradient g;
    g.value = result.value;
    g.partials.reserve(m.inputs().size());
    for (std::size_t i = 0; i < m.inputs().size(); ++i) {
        if (!std::isfinite(result.grad[i]))
            fail(errc::overflow, "partial derivative for '" + m.inputs()[i] + "' overflowed");
        g.partials.emplace_back(m.inputs()[i], result.grad[i]);
    }
    return g;
}

double evaluate(const Model& m, const InputMap& inputs) { return evaluate_with_partials(m, inputs).value; }

PropagationResult propagate_full(const Model& m, const InputMap& inputs) {
    Gradient g = evaluate_with_partials(m, inputs);

    PropagationResult r;
    r.value = g.value;
    r.budget.contributions.reserve(g.partials.size());
    double sum = 0.0;
    for (const auto& [name, partial] : g.partials) {
        double t = partial * inputs.at(name).unc();
        double term = t * t;
        sum += term;
        r.budget.contributions.push_back({name, partial, term});
    }
    if (!std::isfinite(sum)) fail(errc::overflow, "combined uncertainty overflowed");
    r.budget.combined = std::sqrt(sum);
    return r;
}

UncertaintyBudget propagate(const Model& m, const InputMap& inputs) {
    return propagate_full(m, inputs).budget;
}

RelativeUncertainty combine_relative(std::span<const RelativeUncertainty> rels) {
    if (rels.empty()) fail(errc::empty_list, "combine_relative needs at least one ratio");
    double sum = 0.0;
    for (const auto& r : rels) {
        if (!std::isfinite(r.ratio) || r.ratio < 0.0)
            fail(errc::out_of_range, "relative uncertainty ratios must be finite and >= 0, got " +
                                         format_double(r.ratio));
        sum += r.ratio * r.ratio;
    }
    return RelativeUncertainty{std::sqrt(sum)};
}

}  // namespace uncprop
