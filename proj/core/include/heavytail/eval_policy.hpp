// Evaluation policy for the Mittag-Leffler function and the quadrature
// representations built on it.

#pragma once

#include <stdexcept>
#include <string>

namespace heavytail {

// Region switching for E_delta(z) on the negative axis:
//   |z| <= series_cut        -> power series (long double accumulation)
//   series_cut < -z < asym_cut -> integral representation
//   -z >= asym_cut           -> asymptotic series
// For z > series_cut the exponential-plus-correction form is used.
struct EvalPolicy {
  double series_tol = 1e-14;   // series term/partial-sum stop ratio
  double quad_tol = 1e-12;     // quadrature relative error target
  double series_cut = 5.0;     // |z| boundary between series and integral
  double asym_cut = 20.0;      // -z boundary between integral and asymptotic
  int max_terms = 400;         // series term cap

  void validate() const {
    if (!(series_tol > 0.0 && series_tol < 1e-2))
      throw std::invalid_argument("EvalPolicy: series_tol out of range");
    if (!(quad_tol > 0.0 && quad_tol < 1e-2))
      throw std::invalid_argument("EvalPolicy: quad_tol out of range");
    if (!(series_cut > 0.0 && asym_cut > series_cut))
      throw std::invalid_argument("EvalPolicy: need 0 < series_cut < asym_cut");
    if (max_terms < 16)
      throw std::invalid_argument("EvalPolicy: max_terms too small");
  }
};

// Thrown when an evaluation cannot meet the policy's accuracy target or a
// requested operation has no implemented closed/numeric form.
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace heavytail
