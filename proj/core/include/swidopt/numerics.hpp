#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace swidopt {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 60;
};

struct RootSpec {
  double tolerance = 1e-12;
  int max_iterations = 200;
};

// Thrown when adaptive refinement exhausts its subdivision budget. The best
// estimate and its error bound are preserved so callers can decide whether
// the partial result is still usable.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RootConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exponential integral E1(x) for x > 0. Series expansion below 1, a
// continued fraction above. Accurate to near machine precision over
// [1e-12, 700]; underflows to 0 for larger arguments.
double exp_integral_e1(double x);

// exp(x) * E1(x), stable for large x where E1 alone underflows.
// Decays like 1/x instead of exp(-x)/x, so it stays representable for any
// positive argument.
double exp_scaled_e1(double x);

// Globally adaptive Gauss-Kronrod 7/15 quadrature over [lower, upper].
// upper may be +infinity, in which case the tail is folded onto [0, 1).
// Terminates once the summed error bound satisfies the spec tolerances;
// throws QuadratureError if the subdivision budget runs out first.
double integrate(const std::function<double(double)>& f, double lower, double upper,
                 const QuadratureSpec& spec = {});

// Root of g on [lower, upper] by bisection. If g(lower) and g(upper) have
// the same sign and upper is finite, the interval is first expanded by
// doubling upper. A g that never crosses zero raises BracketError, except
// when |g(lower)| is already within tolerance, in which case lower is
// returned (the root sits on the boundary).
double find_root(const std::function<double(double)>& g, double lower, double upper,
                 const RootSpec& spec = {});

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace swidopt
