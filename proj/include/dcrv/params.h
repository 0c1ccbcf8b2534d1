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

#ifndef DCRV_PARAMS_H_
#define DCRV_PARAMS_H_

#include <span>
#include <vector>

#include "dcrv/rational.h"

namespace dcrv {

inline constexpr double kDefaultSumTolerance = 1e-9;

// Parameters of a sequence of categorical variables with first-kind
// dependence: K base probabilities and a dependency coefficient delta.
// Every later variable conditions on the first one only; delta = 0 is the
// independent case and delta = 1 copies the first outcome.
//
// Instantiated for double (sampling, CLI) and Rational (enumeration oracle).
// Categories are 1-based in every accessor.
template <typename Scalar>
class BasicModel {
 public:
  int categories() const { return static_cast<int>(p_.size()); }
  const std::vector<Scalar>& probabilities() const { return p_; }
  const Scalar& delta() const { return delta_; }

  const Scalar& p(int category) const { return p_[category - 1]; }
  // P(later variable = i | first = i) = p_i + delta * (1 - p_i).
  Scalar p_plus(int category) const;
  // P(later variable = i | first != i) = (1 - delta) * p_i.
  Scalar p_minus(int category) const;

 private:
  template <typename S>
  friend BasicModel<S> make_model_checked(std::vector<S> p, S delta,
                                          const S& tolerance);

  BasicModel(std::vector<Scalar> p, Scalar delta)
      : p_(std::move(p)), delta_(std::move(delta)) {}

  std::vector<Scalar> p_;
  Scalar delta_;
};

using Model = BasicModel<double>;
using ExactModel = BasicModel<Rational>;

// Validates and renormalizes. Throws Error with kTooFewCategories,
// kOutOfRange (entry outside (0,1) or delta outside [0,1]) or kSumNotOne.
Model new_model(std::vector<double> p, double delta,
                double tolerance = kDefaultSumTolerance);
ExactModel new_exact_model(std::vector<Rational> p, Rational delta,
                           const Rational& tolerance = Rational(1, 1000000000));

// Each double is replaced by the exact value of its shortest decimal form,
// then the vector is rescaled to sum to exactly one.
ExactModel to_exact(const Model& model);
Model to_floating(const ExactModel& model);

// The altered probability vector used for positions 2..n once the first
// outcome is known: p_given^+ at `given`, p_j^- elsewhere.
template <typename Scalar>
struct BasicConditional {
  int given = 0;
  std::vector<Scalar> probs;
};

template <typename Scalar>
BasicConditional<Scalar> conditional_probs(const BasicModel<Scalar>& model,
                                           int given);

// Collapses the categories to {i, everything else}.
template <typename Scalar>
struct BasicMarginalParams {
  int category = 0;
  Scalar q;        // 1 - p_i
  Scalar q_plus;   // q + delta * p_i
  Scalar q_minus;  // q - delta * q
};

template <typename Scalar>
BasicMarginalParams<Scalar> marginal_params(const BasicModel<Scalar>& model,
                                            int category);

template <typename Scalar>
struct IdentityReport {
  bool total_mass_holds = false;  // p_i^+ + sum_{l != i} p_l^- == 1
  bool marginal_holds = false;    // p_i p_i^+ + p_i^- sum_{l != i} p_l == p_i
  Scalar total_mass_residual;
  Scalar marginal_residual;
};

// Both identities, checked for every category. A residual counts as holding
// when it is exactly zero (Rational) or at most kIdentityTolerance (double).
inline constexpr double kIdentityTolerance = 1e-12;

template <typename Scalar>
IdentityReport<Scalar> check_identities(const BasicModel<Scalar>& model);

}  // namespace dcrv

#endif  // DCRV_PARAMS_H_
