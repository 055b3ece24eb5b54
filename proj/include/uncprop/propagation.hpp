#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uncprop/expression.hpp"
#include "uncprop/measurement.hpp"

namespace uncprop {

using InputMap = std::map<std::string, Measurement>;

/// Model value plus exact partial derivatives, in declared-input order.
struct Gradient {
    double value = 0.0;
    std::vector<std::pair<std::string, double>> partials;

    double partial(std::string_view input) const;
};

struct BudgetTerm {
    std::string input;
    double partial = 0.0;  // dG/dx_i at the input values
    double term = 0.0;     // (partial * unc_i)^2
};

/// Combined standard uncertainty with its per-input decomposition;
/// combined^2 equals the sum of the term entries.
struct UncertaintyBudget {
    double combined = 0.0;
    std::vector<BudgetTerm> contributions;  // declared-input order, one per input

    const BudgetTerm* find(std::string_view input) const;
};

struct PropagationResult {
    double value = 0.0;
    UncertaintyBudget budget;
};

/// Evaluate the model and its partial derivatives by forward-mode (dual
/// number) differentiation. Exact to rounding; no finite differences.
Gradient evaluate_with_partials(const Model& m, const InputMap& inputs);

/// Value only (same input checking and singularity guards).
double evaluate(const Model& m, const InputMap& inputs);

/// Root-sum-square combination of the input uncertainties weighted by the
/// model's partial derivatives, with the per-input breakdown.
UncertaintyBudget propagate(const Model& m, const InputMap& inputs);
PropagationResult propagate_full(const Model& m, const InputMap& inputs);

/// sqrt(sum of squared ratios). Quadrature-additive closed form for pure
/// product/quotient models.
RelativeUncertainty combine_relative(std::span<const RelativeUncertainty> rels);

namespace detail {

// Internal hooks shared with the Monte Carlo sampler so both code paths use
// the same input checking and the same singularity guards.
void check_inputs(const Model& m, const InputMap& inputs,
                  std::unordered_map<std::string, std::size_t>& index, std::vector<double>& values);

// Value-only evaluation; false on a singular or non-finite intermediate.
bool eval_model_value(const Model& m, const std::unordered_map<std::string, std::size_t>& index,
                      std::span<const double> values, double& out) noexcept;

}  // namespace detail

}  // namespace uncprop
