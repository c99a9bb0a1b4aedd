#include <algorithm>
#include <cmath>

#include "axivort/error.hpp"
#include "axivort/kernels.hpp"

namespace axivort::kernels {

namespace {

// Rescalings that make the tabulated quantities O(1) and slowly varying in
// x = log(argument) across the whole range.
double scale_F(double s) { return (1.0 + s) * std::sqrt(1.0 + s); }
double scale_Fp(double s) { return s * (1.0 + s) * std::sqrt(1.0 + s); }
double scale_H(double t) { return (1.0 + t) * std::sqrt(1.0 + t); }
double scale_Hp(double t) { return (1.0 + t) * (1.0 + t) * std::sqrt(1.0 + t); }

double rel_dev(double approx, double exact) {
  return std::abs(approx - exact) / std::max(std::abs(exact), 1e-300);
}

}  // namespace

KernelTable::KernelTable(const KernelEvalPolicy& policy, int points_per_decade) : policy_(policy) {
  policy_.validate();
  if (points_per_decade < 8) throw ConfigError("KernelTable needs at least 8 points per decade");
  x0_ = std::log(policy_.small_arg_threshold);
  const double x1 = std::log(policy_.large_arg_threshold);
  const int intervals =
      static_cast<int>(std::ceil((x1 - x0_) / std::log(10.0) * points_per_decade));
  dx_ = (x1 - x0_) / intervals;
  n_ = intervals + 1;
  // One padding node on either side so every interior interval has a
  // centred four-point stencil.
  const int total = n_ + 2;
  f_.resize(total);
  fp_.resize(total);
  h_.resize(total);
  hp_.resize(total);
  for (int j = 0; j < total; ++j) {
    const double v = std::exp(x0_ + (j - 1) * dx_);
    f_[j] = eval_F(v, policy_) * scale_F(v);
    fp_[j] = eval_F_prime(v, policy_) * scale_Fp(v);
    h_[j] = eval_H(v, policy_) * scale_H(v);
    hp_[j] = eval_H_prime(v, policy_) * scale_Hp(v);
  }
}

KernelTable::Slot KernelTable::locate(double x) const {
  Slot slot{};
  const double t = (x - x0_) / dx_;
  if (!(t >= 0.0) || t > n_ - 1) {
    slot.tabulated = false;
    return slot;
  }
  int i = std::min(static_cast<int>(t), n_ - 2);
  const double f = t - i;
  slot.tabulated = true;
  slot.base = i;  // padded index of node i-1
  slot.w[0] = -f * (f - 1.0) * (f - 2.0) / 6.0;
  slot.w[1] = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
  slot.w[2] = -(f + 1.0) * f * (f - 2.0) / 2.0;
  slot.w[3] = (f + 1.0) * f * (f - 1.0) / 6.0;
  return slot;
}

namespace {
inline double apply(const std::vector<double>& v, int base, const double* w) {
  return w[0] * v[base] + w[1] * v[base + 1] + w[2] * v[base + 2] + w[3] * v[base + 3];
}
}  // namespace

double KernelTable::F(double s) const {
  if (!(s > 0.0)) throw DomainError("F requires s > 0");
  const Slot slot = locate(std::log(s));
  if (!slot.tabulated) return eval_F(s, policy_);
  return apply(f_, slot.base, slot.w) / scale_F(s);
}

double KernelTable::F_prime(double s) const {
  if (!(s > 0.0)) throw DomainError("F' requires s > 0");
  const Slot slot = locate(std::log(s));
  if (!slot.tabulated) return eval_F_prime(s, policy_);
  return apply(fp_, slot.base, slot.w) / scale_Fp(s);
}

std::pair<double, double> KernelTable::F_and_F_prime(double s) const {
  if (!(s > 0.0)) throw DomainError("F requires s > 0");
  const Slot slot = locate(std::log(s));
  if (!slot.tabulated) return {eval_F(s, policy_), eval_F_prime(s, policy_)};
  const double sc = scale_F(s);
  return {apply(f_, slot.base, slot.w) / sc, apply(fp_, slot.base, slot.w) / (sc * s)};
}

double KernelTable::H(double tau) const {
  if (!(tau > 0.0)) throw DomainError("H requires tau > 0");
  const Slot slot = locate(std::log(tau));
  if (!slot.tabulated) return eval_H(tau, policy_);
  return apply(h_, slot.base, slot.w) / scale_H(tau);
}

double KernelTable::H_prime(double tau) const {
  if (!(tau > 0.0)) throw DomainError("H' requires tau > 0");
  const Slot slot = locate(std::log(tau));
  if (!slot.tabulated) return eval_H_prime(tau, policy_);
  return apply(hp_, slot.base, slot.w) / scale_Hp(tau);
}

std::pair<double, double> KernelTable::H_and_H_prime(double tau) const {
  if (!(tau > 0.0)) throw DomainError("H requires tau > 0");
  const Slot slot = locate(std::log(tau));
  if (!slot.tabulated) return {eval_H(tau, policy_), eval_H_prime(tau, policy_)};
  const double sc = scale_H(tau);
  return {apply(h_, slot.base, slot.w) / sc, apply(hp_, slot.base, slot.w) / (sc * (1.0 + tau))};
}

KernelTable::Deviation KernelTable::validate(int samples) const {
  Deviation dev;
  const double lo = std::log(1e-2 * policy_.small_arg_threshold);
  const double hi = std::log(1e2 * policy_.large_arg_threshold);
  for (int i = 0; i < samples; ++i) {
    // Irrational offset keeps samples away from the table nodes.
    const double frac = (i + 0.5 * (std::sqrt(5.0) - 1.0)) / samples;
    const double v = std::exp(lo + (hi - lo) * frac);
    dev.F = std::max(dev.F, rel_dev(F(v), eval_F(v, policy_)));
    dev.F_prime = std::max(dev.F_prime, rel_dev(F_prime(v), eval_F_prime(v, policy_)));
    dev.H = std::max(dev.H, rel_dev(H(v), eval_H(v, policy_)));
    dev.H_prime = std::max(dev.H_prime, rel_dev(H_prime(v), eval_H_prime(v, policy_)));
  }
  return dev;
}

const KernelTable& KernelTable::shared() {
  static const KernelTable table;
  return table;
}

}  // namespace axivort::kernels
