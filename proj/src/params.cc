// Copyright 2026 The dcrv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dcrv/params.h"

#include <cmath>
#include <sstream>

#include "dcrv/error.h"

namespace dcrv {
namespace {

template <typename Scalar>
std::string describe(const Scalar& value) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return to_string(value);
  } else {
    std::ostringstream out;
    out.precision(17);
    out << value;
    return out.str();
  }
}

template <typename Scalar>
bool negligible(const Scalar& residual) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return is_zero(residual);
  } else {
    return residual <= kIdentityTolerance;
  }
}

}  // namespace

template <typename S>
BasicModel<S> make_model_checked(std::vector<S> p, S delta,
                                 const S& tolerance) {
  if (p.size() < 2) {
    throw Error(ErrorCode::kTooFewCategories,
                "need at least 2 categories, got " + std::to_string(p.size()));
  }
  S sum(0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if constexpr (std::is_floating_point_v<S>) {
      if (!std::isfinite(p[i])) {
        throw Error(ErrorCode::kOutOfRange,
                    "p[" + std::to_string(i + 1) + "] is not finite");
      }
    }
    if (!(p[i] > 0 && p[i] < 1)) {
      throw Error(ErrorCode::kOutOfRange, "p[" + std::to_string(i + 1) +
                                              "] = " + describe(p[i]) +
                                              " is not in (0,1)");
    }
    sum += p[i];
  }
  if (!(delta >= 0 && delta <= 1)) {
    throw Error(ErrorCode::kOutOfRange,
                "delta = " + describe(delta) + " is not in [0,1]");
  }
  if (!(abs_value(S(sum - 1)) <= tolerance)) {
    throw Error(ErrorCode::kSumNotOne,
                "probabilities sum to " + describe(sum));
  }
  for (auto& value : p) value /= sum;
  return BasicModel<S>(std::move(p), std::move(delta));
}

template <typename Scalar>
Scalar BasicModel<Scalar>::p_plus(int category) const {
  const Scalar& pi = p(category);
  // Exact indicator at full dependence, even in floating point.
  if (delta_ == 1) return Scalar(1);
  return Scalar(pi + delta_ * (Scalar(1) - pi));
}

template <typename Scalar>
Scalar BasicModel<Scalar>::p_minus(int category) const {
  const Scalar& pi = p(category);
  return Scalar(pi - delta_ * pi);
}

Model new_model(std::vector<double> p, double delta, double tolerance) {
  return make_model_checked<double>(std::move(p), delta, tolerance);
}

ExactModel new_exact_model(std::vector<Rational> p, Rational delta,
                           const Rational& tolerance) {
  for (auto& value : p) value.canonicalize();
  delta.canonicalize();
  return make_model_checked<Rational>(std::move(p), std::move(delta),
                                      tolerance);
}

ExactModel to_exact(const Model& model) {
  std::vector<Rational> p;
  p.reserve(model.probabilities().size());
  for (double value : model.probabilities()) {
    p.push_back(decimal_to_rational(value));
  }
  // Tolerance 1: the floating model was already validated; this only
  // absorbs the rounding left over from its renormalization.
  return new_exact_model(std::move(p), decimal_to_rational(model.delta()),
                         Rational(1));
}

Model to_floating(const ExactModel& model) {
  std::vector<double> p;
  p.reserve(model.probabilities().size());
  for (const auto& value : model.probabilities()) p.push_back(to_double(value));
  return new_model(std::move(p), to_double(model.delta()), 1e-12);
}

template <typename Scalar>
BasicConditional<Scalar> conditional_probs(const BasicModel<Scalar>& model,
                                           int given) {
  const int k = model.categories();
  if (given < 1 || given > k) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "category " + std::to_string(given) + " is not in 1.." +
                    std::to_string(k));
  }
  BasicConditional<Scalar> result;
  result.given = given;
  result.probs.reserve(k);
  for (int j = 1; j <= k; ++j) {
    result.probs.push_back(j == given ? model.p_plus(j) : model.p_minus(j));
  }
  return result;
}

template <typename Scalar>
BasicMarginalParams<Scalar> marginal_params(const BasicModel<Scalar>& model,
                                            int category) {
  const int k = model.categories();
  if (category < 1 || category > k) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "category " + std::to_string(category) + " is not in 1.." +
                    std::to_string(k));
  }
  BasicMarginalParams<Scalar> result;
  result.category = category;
  result.q = Scalar(0);
  for (int j = 1; j <= k; ++j) {
    if (j != category) result.q += model.p(j);
  }
  result.q_plus = result.q + model.delta() * model.p(category);
  result.q_minus = result.q - model.delta() * result.q;
  return result;
}

template <typename Scalar>
IdentityReport<Scalar> check_identities(const BasicModel<Scalar>& model) {
  const int k = model.categories();
  Scalar worst_total(0);
  Scalar worst_marginal(0);
  for (int i = 1; i <= k; ++i) {
    Scalar total = model.p_plus(i);
    Scalar others(0);
    for (int l = 1; l <= k; ++l) {
      if (l == i) continue;
      total += model.p_minus(l);
      others += model.p(l);
    }
    const Scalar total_residual = abs_value(Scalar(total - 1));
    const Scalar marginal_residual = abs_value(Scalar(
        model.p(i) * model.p_plus(i) + model.p_minus(i) * others - model.p(i)));
    if (total_residual > worst_total) worst_total = total_residual;
    if (marginal_residual > worst_marginal) worst_marginal = marginal_residual;
  }
  IdentityReport<Scalar> report;
  report.total_mass_residual = worst_total;
  report.marginal_residual = worst_marginal;
  report.total_mass_holds = negligible(worst_total);
  report.marginal_holds = negligible(worst_marginal);
  return report;
}

template class BasicModel<double>;
template class BasicModel<Rational>;
template BasicConditional<double> conditional_probs(const Model&, int);
template BasicConditional<Rational> conditional_probs(const ExactModel&, int);
template BasicMarginalParams<double> marginal_params(const Model&, int);
template BasicMarginalParams<Rational> marginal_params(const ExactModel&, int);
template IdentityReport<double> check_identities(const Model&);
template IdentityReport<Rational> check_identities(const ExactModel&);

}  // namespace dcrv
