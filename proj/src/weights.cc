#include "ipd/weights.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ipd {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log |e^b - e^a|
double log_abs_diff(double a, double b) {
  if (a == b) return kNegInf;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(-std::exp(lo - hi));
}
}  // namespace

WeightSequence WeightSequence::power(double exponent) {
  if (!std::isfinite(exponent)) throw std::invalid_argument("power weights need a finite exponent");
  return WeightSequence(Kind::power, exponent);
}

WeightSequence WeightSequence::geometric(double ratio) {
  if (!(ratio > 0) || !std::isfinite(ratio)) throw std::invalid_argument("geometric weights need ratio > 0");
  return WeightSequence(Kind::geometric, ratio);
}

bool WeightSequence::is_uniform() const {
  return kind_ == Kind::uniform || param_ == (kind_ == Kind::power ? 0.0 : 1.0);
}

double WeightSequence::log_weight(long n) const {
  if (n < 1) throw std::domain_error("weights start at n = 1");
  switch (kind_) {
    case Kind::uniform: return 0;
    case Kind::power: return param_ * std::log(double(n));
    case Kind::geometric: return double(n - 1) * std::log(param_);
  }
  return 0;
}

std::string WeightSequence::describe() const {
  switch (kind_) {
    case Kind::uniform: return "uniform";
    case Kind::power: return "power(" + std::to_string(param_) + ")";
    case Kind::geometric: return "geometric(" + std::to_string(param_) + ")";
  }
  return "?";
}

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

WeightAccumulator::WeightAccumulator(WeightSequence w) : w_(w), log_D_(kNegInf) {}

double WeightAccumulator::advance() {
  double lw = w_.log_weight(n_ + 1);
  if (n_ == 0) {
    log_W_ = lw;
  } else {
    log_W_ = log_add(log_W_, lw);
    log_D_ = log_add(log_D_, log_abs_diff(log_w_, lw));
  }
  log_w_ = lw;
  ++n_;
  return std::exp(lw - log_W_);
}

WeightConditionReport weight_conditions(const WeightSequence& w, long horizon) {
  if (horizon < 1000) throw std::invalid_argument("weight condition horizon must be at least 1000");
  WeightConditionReport rep;
  WeightAccumulator acc(w);
  const long marks[3] = {horizon / 100, horizon / 10, horizon};
  int next = 0;
  bool up = true, down = true;
  double prev = 0;
  for (long n = 1; n <= horizon + 1; ++n) {
    acc.advance();
    if (n > 1) {
      if (acc.log_w() < prev) up = false;
      if (acc.log_w() > prev) down = false;
    }
    prev = acc.log_w();
    if (next < 3 && n == marks[next] + 1) {
      // acc now holds w_{N+1}; Delta_N needs w_{N+1}, W_N does not
      long N = marks[next];
      double lW_N = acc.log_W() + std::log(-std::expm1(acc.log_w() - acc.log_W()));
      double lw_N = w.log_weight(N);
      rep.trace.push_back({N, std::exp(lw_N - lW_N), lW_N, std::exp(acc.log_Delta() - lW_N)});
      ++next;
    }
  }
  rep.monotone = up || down;
  const auto& t = rep.trace;
  rep.c1 = t[2].step_fraction <= 0.5 * t[1].step_fraction;
  double g_last = std::exp(t[2].log_W - t[1].log_W) - 1;   // (W_H - W_{H/10}) / W_{H/10}
  double g_prev = 1 - std::exp(t[0].log_W - t[1].log_W);   // (W_{H/10} - W_{H/100}) / W_{H/10}
  rep.c2 = g_last >= 0.9 * g_prev;
  if (rep.monotone) {
    rep.c3 = rep.c1 && rep.c2;
    rep.method = "monotone: Delta_N = |w_{N+1} - w_1|, condition 3 from conditions 1 and 2";
  } else {
    rep.c3 = t[2].delta_fraction <= 0.5 * t[1].delta_fraction;
    rep.method = "trend test on Delta_N / W_N";
  }
  return rep;
}

}  // namespace ipd
