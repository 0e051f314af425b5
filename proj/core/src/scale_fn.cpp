#include "recurlab/scale_fn.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace recurlab {

ScaleFn ScaleFn::power(double alpha) {
  if (!(alpha > 0) || !std::isfinite(alpha))
    throw std::invalid_argument("scale exponent must be positive and finite");
  ScaleFn f;
  f.kind_ = Kind::power;
  f.alpha_ = alpha;
  return f;
}

ScaleFn ScaleFn::piecewise_linear(std::vector<std::pair<Rational, Rational>> knots) {
  if (knots.size() < 2) throw std::invalid_argument("need at least two knots");
  if (knots.front().first != Rational(0) || knots.back().first != Rational(1))
    throw std::invalid_argument("knots must span [0, 1]");
  for (size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i - 1].first < knots[i].first))
      throw std::invalid_argument("knot abscissae must be strictly increasing");
    if (knots[i].second < knots[i - 1].second)
      throw std::invalid_argument("knot values must be nondecreasing");
  }
  ScaleFn f;
  f.kind_ = Kind::piecewise_linear;
  f.knots_ = std::move(knots);
  return f;
}

bool ScaleFn::exact() const {
  if (kind_ == Kind::piecewise_linear) return true;
  return alpha_ == 1.0;
}

double ScaleFn::operator()(double t) const {
  if (t < 0 || t > 1 || !std::isfinite(t))
    throw std::domain_error("scale function argument outside [0, 1]");
  if (kind_ == Kind::power) return t == 0 ? 0.0 : std::pow(t, alpha_);
  for (size_t i = 1; i < knots_.size(); ++i) {
    double t1 = knots_[i].first.value();
    if (t <= t1 || i + 1 == knots_.size()) {
      double t0 = knots_[i - 1].first.value();
      double v0 = knots_[i - 1].second.value();
      double v1 = knots_[i].second.value();
      return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
    }
  }
  return knots_.back().second.value();
}

Rational ScaleFn::at(const Rational& t) const {
  if (t < Rational(0) || Rational(1) < t)
    throw std::domain_error("scale function argument outside [0, 1]");
  if (kind_ == Kind::power) {
    if (alpha_ != 1.0) throw std::logic_error("power scale is not exactly evaluable");
    return t;
  }
  for (size_t i = 1; i < knots_.size(); ++i) {
    if (t <= knots_[i].first) {
      const auto& [t0, v0] = knots_[i - 1];
      const auto& [t1, v1] = knots_[i];
      return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
    }
  }
  return knots_.back().second;  // unreachable: t <= 1 = last abscissa
}

bool ScaleFn::gauge_valid() const {
  if (kind_ == Kind::power) return true;
  if (!knots_.front().second.is_zero()) return false;
  for (size_t i = 1; i < knots_.size(); ++i)
    if (!(knots_[i - 1].second < knots_[i].second)) return false;
  return true;
}

std::string ScaleFn::describe() const {
  if (kind_ == Kind::power) {
    if (alpha_ == 1.0) return "id";
    std::ostringstream os;
    os << "pow:" << alpha_;
    return os.str();
  }
  std::ostringstream os;
  os << "pl:";
  for (size_t i = 0; i < knots_.size(); ++i) {
    if (i) os << ';';
    os << knots_[i].first.str() << ',' << knots_[i].second.str();
  }
  return os.str();
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("bad rational: '" + text + "'"); };
  if (text.empty()) throw bad();
  size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    long long n = std::stoll(text.substr(0, slash));
    long long d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw bad();
  }
}

ScaleFn parse_scale_fn(const std::string& text) {
  if (text == "id") return ScaleFn::identity();
  if (text.rfind("pow:", 0) == 0) return ScaleFn::power(std::stod(text.substr(4)));
  if (text.rfind("pl:", 0) == 0) {
    std::vector<std::pair<Rational, Rational>> knots;
    std::istringstream is(text.substr(3));
    std::string knot;
    while (std::getline(is, knot, ';')) {
      size_t comma = knot.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("bad knot: '" + knot + "'");
      knots.emplace_back(parse_rational(knot.substr(0, comma)),
                         parse_rational(knot.substr(comma + 1)));
    }
    return ScaleFn::piecewise_linear(std::move(knots));
  }
  throw std::invalid_argument("unknown scale function: '" + text + "'");
}

}  // namespace recurlab
