// Copyright 2026 The curvsir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CURVSIR_EQUILIBRIUM_HPP_
#define CURVSIR_EQUILIBRIUM_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "curvsir/contact_matrix.hpp"
#include "curvsir/dynamics.hpp"
#include "curvsir/error.hpp"
#include "curvsir/spectral.hpp"

namespace curvsir {

// Fixed-point operator whose positive fixed point is the endemic y:
//   (T y)_i = (beta / gamma) * u / (u + beta (M y)_i) * (M y)_i
void apply_T(std::span<const double> y, const ContactMatrix& m,
             const EpidemicParams& p, std::span<double> out,
             std::span<double> scratch);
std::vector<double> apply_T(std::span<const double> y, const ContactMatrix& m,
                            const EpidemicParams& p);

struct EquilibriumOptions {
  // Stop once ||upper - lower||_inf <= tol.
  double tol = 1e-10;
  std::size_t max_iter = 100000;
  // Per-step slack for the order checks.
  double order_slack = 1e-12;
  SpectralOptions spectral;
};

// One entry per iteration of the bracketing sequences.
struct MonotoneStep {
  bool lower_nondecreasing = true;
  bool upper_nonincreasing = true;
};

struct EquilibriumReport {
  std::vector<double> y_dagger;
  std::vector<double> s_dagger;
  std::size_t iterations = 0;
  double bracket_width = 0.0;
  std::vector<MonotoneStep> monotone_certificate;
  double r0 = 0.0;

  // Starting bracket: lower = alpha * v (v right Perron, max-norm 1) and
  // upper = upper_level * 1.
  double alpha = 0.0;
  double upper_level = 0.0;
  // u / gamma exceeded 1 and the upper start was capped at 1.
  bool upper_capped = false;
  double fixed_point_residual = 0.0;

  std::size_t order_violations() const;
  bool monotone_ok() const { return order_violations() == 0; }
};

class NoEndemicEquilibrium : public NumericalError {
 public:
  explicit NoEndemicEquilibrium(double r0);
  double r0() const { return r0_; }

 private:
  double r0_;
};

// Sub/supersolution bracketing. Requires R0 > 1, else NoEndemicEquilibrium.
// The lower start halves alpha from 1e-3 until T(alpha v) > alpha v; the
// upper start is min(1, u / gamma) and must satisfy T(upper) < upper.
EquilibriumReport solve_endemic(const ContactMatrix& m, const EpidemicParams& p,
                                const EquilibriumOptions& options = {});

// Same iteration from a caller-provided bracket. Throws NumericalError
// unless T(lower) >= lower, T(upper) <= upper and lower <= upper.
EquilibriumReport solve_endemic_from(const ContactMatrix& m,
                                     const EpidemicParams& p,
                                     std::vector<double> lower,
                                     std::vector<double> upper,
                                     const EquilibriumOptions& options = {});

struct OdeDeviation {
  double y_deviation = 0.0;  // ||y(t_end) - y_target||_inf
  double s_deviation = 0.0;  // ||s(t_end) - s_target||_inf
};

struct CrossCheckOptions {
  double t_end = 2000.0;
  double dt = 0.01;
  double s0 = 0.9;
  double y0 = 0.05;
};

// Integrate from the homogeneous interior point (s0, y0) and compare the end
// state with the endemic equilibrium.
OdeDeviation cross_check_ode(const EquilibriumReport& report,
                             const ContactMatrix& m, const EpidemicParams& p,
                             const CrossCheckOptions& options = {});
// Same, compared against the disease-free state (s, y) = (1, 0).
OdeDeviation cross_check_dfe(const ContactMatrix& m, const EpidemicParams& p,
                             const CrossCheckOptions& options = {});

// Keys: schema_version, y_dagger, s_dagger, iterations, bracket_width, r0,
// monotone_ok.
std::string to_json(const EquilibriumReport& report);

}  // namespace curvsir

#endif  // CURVSIR_EQUILIBRIUM_HPP_
