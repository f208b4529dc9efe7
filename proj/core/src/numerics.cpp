#include "swidopt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace swidopt {

namespace {

constexpr double kEulerMascheroni = 0.57721566490153286060651209008240243;

// E1 via the alternating series -gamma - ln x + sum (-1)^{k+1} x^k / (k k!).
double e1_series(double x) {
  double sum = 0.0;
  double power = x;  // (-1)^{k+1} x^k / k!
  for (int k = 1; k < 200; ++k) {
    const double add = power / k;
    sum += add;
    if (std::abs(add) < 1e-18 * std::max(1.0, std::abs(sum))) break;
    power *= -x / (k + 1);
  }
  return -kEulerMascheroni - std::log(x) + sum;
}

// Continued fraction for exp(x) E1(x), x >= 1, by the modified Lentz method:
// exp(x) E1(x) = 1 / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))).
double scaled_e1_cf(double x) {
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 300; ++i) {
    double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = a * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h;
}

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss weights pair with every other Kronrod node (indices 1, 3, 5, 7).
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
  double a;
  double b;
  double estimate;
  double error;
};

struct IntervalWorse {
  bool operator()(const Interval& x, const Interval& y) const {
    return x.error < y.error;
  }
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    double fv;
    if (i == 7) {
      fv = f(center);
      kronrod += kKronrodWeights[7] * fv;
      gauss += kGaussWeights[3] * fv;
    } else {
      const double offset = half * kKronrodNodes[i];
      const double f1 = f(center - offset);
      const double f2 = f(center + offset);
      fv = f1 + f2;
      kronrod += kKronrodWeights[i] * fv;
      if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fv;
    }
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

double integrate_finite(const std::function<double(double)>& f, double lower,
                        double upper, const QuadratureSpec& spec) {
  std::priority_queue<Interval, std::vector<Interval>, IntervalWorse> heap;
  Interval whole = gk15(f, lower, upper);
  double total = whole.estimate;
  double total_err = whole.error;
  heap.push(whole);
  int splits = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (splits >= spec.max_subdivisions) {
      throw QuadratureError("quadrature failed to converge within subdivision budget",
                            total, total_err);
    }
    Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Interval left = gk15(f, worst.a, mid);
    Interval right = gk15(f, mid, worst.b);
    total += left.estimate + right.estimate - worst.estimate;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  return total;
}

}  // namespace

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_integral_e1 requires x > 0");
  if (x < 1.0) return e1_series(x);
  if (x > 700.0) return 0.0;
  return std::exp(-x) * scaled_e1_cf(x);
}

double exp_scaled_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_scaled_e1 requires x > 0");
  if (x < 1.0) return std::exp(x) * e1_series(x);
  return scaled_e1_cf(x);
}

double integrate(const std::function<double(double)>& f, double lower, double upper,
                 const QuadratureSpec& spec) {
  if (std::isnan(lower) || std::isnan(upper)) {
    throw std::invalid_argument("integrate: NaN bound");
  }
  if (lower >= upper) return 0.0;
  if (std::isinf(upper)) {
    // map [lower, inf) onto t in [0, 1) via x = lower + t / (1 - t)
    auto folded = [&f, lower](double t) {
      const double omt = 1.0 - t;
      const double x = lower + t / omt;
      return f(x) / (omt * omt);
    };
    return integrate_finite(folded, 0.0, 1.0, spec);
  }
  return integrate_finite(f, lower, upper, spec);
}

double find_root(const std::function<double(double)>& g, double lower, double upper,
                 const RootSpec& spec) {
  if (!(lower <= upper)) throw std::invalid_argument("find_root: lower > upper");
  double glo = g(lower);
  if (glo == 0.0) return lower;
  double ghi = g(upper);
  if (ghi == 0.0) return upper;
  if (glo * ghi > 0.0) {
    // expand upward in doubling steps looking for a sign change
    double prev = upper;
    double span = std::max(upper - lower, 1.0);
    bool bracketed = false;
    for (int i = 0; i < 64; ++i) {
      double next = prev + span;
      double gnext = g(next);
      if (gnext == 0.0) return next;
      if (glo * gnext < 0.0) {
        lower = prev;
        glo = g(prev);
        if (glo == 0.0) return prev;
        upper = next;
        ghi = gnext;
        bracketed = true;
        break;
      }
      prev = next;
      span *= 2.0;
    }
    if (!bracketed) {
      if (std::abs(g(lower)) <= spec.tolerance) return lower;
      throw BracketError("find_root: no sign change found");
    }
  }
  for (int it = 0; it < spec.max_iterations; ++it) {
    const double mid = 0.5 * (lower + upper);
    if (upper - lower <= spec.tolerance * std::max(1.0, std::abs(mid))) return mid;
    const double gmid = g(mid);
    if (gmid == 0.0) return mid;
    if (glo * gmid < 0.0) {
      upper = mid;
    } else {
      lower = mid;
      glo = gmid;
    }
  }
  throw RootConvergenceError("find_root: max iterations reached");
}

}  // namespace swidopt
