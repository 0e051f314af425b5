#include "recurlab/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace recurlab::verify {

void StepFn::validate() const {
  if (!(lo < hi)) throw std::invalid_argument("step function needs lo < hi");
  if (val.size() != cut.size() + 1)
    throw std::invalid_argument("step function needs one more value than cuts");
  Rational prev = lo;
  for (const auto& c : cut) {
    if (!(prev < c)) throw std::invalid_argument("cuts must be strictly increasing");
    prev = c;
  }
  if (!cut.empty() && !(cut.back() < hi))
    throw std::invalid_argument("cuts must lie strictly inside the interval");
}

void StepFn::require_monotone(bool nonincreasing) const {
  for (size_t i = 1; i < val.size(); ++i) {
    bool ok = nonincreasing ? !(val[i - 1] < val[i]) : !(val[i] < val[i - 1]);
    if (!ok)
      throw std::invalid_argument(nonincreasing ? "integrand must be nonincreasing"
                                                : "integrator must be nondecreasing");
  }
}

Rational StepFn::value_at(const Rational& t) const {
  if (t < lo || hi < t) throw std::domain_error("argument outside the step domain");
  size_t i = 0;
  while (i < cut.size() && !(t < cut[i])) ++i;
  return val[i];
}

std::vector<Rational> StepFn::breakpoints() const {
  std::vector<Rational> b;
  b.push_back(lo);
  b.insert(b.end(), cut.begin(), cut.end());
  b.push_back(hi);
  return b;
}

StieltjesResult stieltjes_step(const StepFn& f, const ScaleFn& g) {
  f.validate();
  f.require_monotone(true);
  std::vector<Rational> b = f.breakpoints();
  StieltjesResult out;
  if (g.exact()) {
    Rational total(0);
    for (size_t i = 0; i + 1 < b.size(); ++i)
      total = total + f.val[i] * (g.at(b[i + 1]) - g.at(b[i]));
    out.exact = true;
    out.exact_value = total;
    out.value = total.value();
    return out;
  }
  double total = 0;
  for (size_t i = 0; i + 1 < b.size(); ++i)
    total += f.val[i].value() * (g(b[i + 1].value()) - g(b[i].value()));
  out.value = total;
  return out;
}

StieltjesResult stieltjes_step_vs_step(const StepFn& f, const StepFn& g) {
  f.validate();
  g.validate();
  f.require_monotone(true);
  g.require_monotone(false);
  if (f.lo != g.lo || f.hi != g.hi)
    throw std::invalid_argument("integrand and integrator domains differ");
  for (const auto& cf : f.cut)
    for (const auto& cg : g.cut)
      if (cf == cg)
        throw std::invalid_argument(
            "shared discontinuity: the Stieltjes integral does not exist");
  // right-continuous g: all mass sits at the jump points
  Rational total(0);
  for (size_t j = 0; j < g.cut.size(); ++j)
    total = total + f.value_at(g.cut[j]) * (g.val[j + 1] - g.val[j]);
  StieltjesResult out;
  out.exact = true;
  out.exact_value = total;
  out.value = total.value();
  return out;
}

StieltjesResult stieltjes_refine(const std::function<double(double)>& f,
                                 bool f_nonincreasing, const ScaleFn& g, double lo,
                                 double hi, double tol, int max_doublings) {
  if (!(lo < hi)) throw std::invalid_argument("refinement needs lo < hi");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  double lower = 0, upper = 0;
  long long parts = 8;
  for (int round = 0; round <= max_doublings; ++round) {
    lower = upper = 0;
    double prev_x = lo, prev_g = g(lo);
    for (long long i = 1; i <= parts; ++i) {
      double x = lo + (hi - lo) * (double)i / (double)parts;
      if (i == parts) x = hi;
      double gx = g(x);
      double dg = gx - prev_g;  // >= 0 for nondecreasing g
      double fl = f(prev_x), fr = f(x);
      // monotone f: endpoint values bracket f on the cell
      double cell_min = f_nonincreasing ? fr : fl;
      double cell_max = f_nonincreasing ? fl : fr;
      lower += cell_min * dg;
      upper += cell_max * dg;
      prev_x = x;
      prev_g = gx;
    }
    if (upper - lower < tol) break;
    parts *= 2;
  }
  StieltjesResult out;
  out.value = 0.5 * (lower + upper);
  out.bracket_width = upper - lower;
  return out;
}

}  // namespace recurlab::verify
