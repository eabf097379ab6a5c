#include "hypervolt/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hypervolt/error.hpp"

namespace hypervolt {

namespace {

constexpr double kPi = std::numbers::pi;

// Cosine bump on [0, kBumpWidth].
constexpr double kBumpWidth = 4.0;
constexpr double kBumpFreq = 2.0 * kPi / kBumpWidth;

// (1 - exp(-z)) / z, accurate near z = 0.
cdouble one_minus_exp_over(cdouble z) {
  if (std::abs(z) < 1e-3) {
    return 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0;
  }
  return (1.0 - std::exp(-z)) / z;
}

SourceProfile make_exp() {
  SourceProfile p;
  p.name = "exp";
  p.evaluate = [](double t) { return t < 0.0 ? 0.0 : std::exp(-t); };
  p.transform = [](cdouble s) { return 1.0 / (1.0 + s); };
  p.value_at_zero = 1.0;
  p.moment0 = 1.0;
  p.decay = {DecayKind::exponential, 1.0};
  p.horizon = 41.5;
  p.contour_safe = true;
  return p;
}

SourceProfile make_texp() {
  SourceProfile p;
  p.name = "texp";
  p.evaluate = [](double t) { return t < 0.0 ? 0.0 : t * std::exp(-t); };
  p.transform = [](cdouble s) { return 1.0 / ((1.0 + s) * (1.0 + s)); };
  p.value_at_zero = 0.0;
  p.moment0 = 1.0;
  p.decay = {DecayKind::exponential, 1.0};
  p.horizon = 46.0;
  p.contour_safe = true;
  return p;
}

SourceProfile make_gaussian_bump() {
  SourceProfile p;
  p.name = "gaussian_bump";
  p.evaluate = [](double t) { return t < 0.0 ? 0.0 : std::exp(-(t - 3.0) * (t - 3.0)); };
  p.value_at_zero = std::exp(-9.0);
  p.moment0 = 0.5 * std::sqrt(kPi) * (1.0 + std::erf(3.0));
  p.decay = {DecayKind::super_exponential, 0.0};
  p.horizon = 9.5;
  p.contour_safe = false;
  return p;
}

SourceProfile make_cos_bump() {
  SourceProfile p;
  p.name = "cos_bump";
  p.evaluate = [](double t) {
    if (t < 0.0 || t > kBumpWidth) return 0.0;
    return 0.5 * (1.0 - std::cos(kBumpFreq * t));
  };
  // (1/2) w^2 (1 - e^{-pT}) / (p (p^2 + w^2))
  p.transform = [](cdouble s) {
    const double w2 = kBumpFreq * kBumpFreq;
    return 0.5 * w2 * kBumpWidth * one_minus_exp_over(s * kBumpWidth) / (s * s + w2);
  };
  p.value_at_zero = 0.0;
  p.moment0 = 0.5 * kBumpWidth;
  p.decay = {DecayKind::super_exponential, 0.0};
  p.horizon = kBumpWidth;
  p.contour_safe = false;
  return p;
}

int decay_rank(const Decay& d) {
  switch (d.kind) {
    case DecayKind::super_exponential: return 0;
    case DecayKind::exponential: return 1;
    case DecayKind::power: return 2;
  }
  return 2;
}

}  // namespace

std::string Decay::label() const {
  switch (kind) {
    case DecayKind::exponential: return "exponential";
    case DecayKind::super_exponential: return "super-exponential";
    case DecayKind::power: {
      std::ostringstream os;
      os << "power(" << rate << ")";
      return os.str();
    }
  }
  return "unknown";
}

const std::vector<SourceProfile>& catalog() {
  static const std::vector<SourceProfile> profiles = {
      make_exp(), make_texp(), make_gaussian_bump(), make_cos_bump()};
  return profiles;
}

const SourceProfile& find_profile(const std::string& name) {
  for (const auto& p : catalog()) {
    if (p.name == name) return p;
  }
  throw InputError("unknown profile '" + name + "'");
}

SourceProfile zero_profile() {
  SourceProfile p;
  p.name = "zero";
  p.evaluate = [](double) { return 0.0; };
  p.transform = [](cdouble) { return cdouble(0.0, 0.0); };
  p.decay = {DecayKind::super_exponential, 0.0};
  p.horizon = 1.0;
  p.contour_safe = true;
  return p;
}

SourceProfile combine(double a, const SourceProfile& p, double b, const SourceProfile& q) {
  SourceProfile out;
  std::ostringstream name;
  name << a << "*" << p.name << "+" << b << "*" << q.name;
  out.name = name.str();
  out.evaluate = [a, b, f = p.evaluate, g = q.evaluate](double t) { return a * f(t) + b * g(t); };
  if (p.has_transform() && q.has_transform()) {
    out.transform = [a, b, f = p.transform, g = q.transform](cdouble s) {
      return a * f(s) + b * g(s);
    };
  }
  out.value_at_zero = a * p.value_at_zero + b * q.value_at_zero;
  out.moment0 = a * p.moment0 + b * q.moment0;
  if (decay_rank(p.decay) == 2 && decay_rank(q.decay) == 2) {
    out.decay = {DecayKind::power, std::min(p.decay.rate, q.decay.rate)};
  } else {
    out.decay = decay_rank(p.decay) >= decay_rank(q.decay) ? p.decay : q.decay;
  }
  out.horizon = std::max(p.horizon, q.horizon);
  out.breakpoints = p.breakpoints;
  out.breakpoints.insert(out.breakpoints.end(), q.breakpoints.begin(), q.breakpoints.end());
  for (double h : {p.horizon, q.horizon}) {
    if (h < out.horizon) out.breakpoints.push_back(h);
  }
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()),
                        out.breakpoints.end());
  out.contour_safe = p.contour_safe && q.contour_safe && out.has_transform();
  return out;
}

SourceProfile sample_profile(std::string name, std::vector<double> t, std::vector<double> v) {
  if (t.size() != v.size()) throw InputError("sample profile: column lengths differ");
  if (t.size() < 2) throw InputError("sample profile: need at least two samples");
  if (t.front() != 0.0) throw InputError("sample profile: first sample time must be 0");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(v[i])) {
      throw InputError("sample profile: non-finite value in row " + std::to_string(i + 1));
    }
    if (i > 0 && !(t[i] > t[i - 1])) {
      throw InputError("sample profile: times must be strictly increasing (row " +
                       std::to_string(i + 1) + ")");
    }
  }

  SourceProfile p;
  p.name = std::move(name);
  p.value_at_zero = v.front();
  double m0 = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) m0 += 0.5 * (t[i] - t[i - 1]) * (v[i] + v[i - 1]);
  p.moment0 = m0;
  p.decay = {DecayKind::super_exponential, 0.0};
  p.horizon = t.back();
  p.breakpoints.assign(t.begin() + 1, t.end() - 1);
  p.contour_safe = false;
  p.evaluate = [t = std::move(t), v = std::move(v)](double s) {
    if (s < 0.0 || s > t.back()) return 0.0;
    const auto it = std::upper_bound(t.begin(), t.end(), s);
    if (it == t.end()) return v.back();
    const std::size_t hi = static_cast<std::size_t>(it - t.begin());
    const std::size_t lo = hi - 1;
    const double w = (s - t[lo]) / (t[hi] - t[lo]);
    return v[lo] + w * (v[hi] - v[lo]);
  };
  return p;
}

SourceProfile load_sample_profile(const std::filesystem::path& path, std::ostream* warn) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open sample file '" + path.string() + "'");
  std::vector<double> t, v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a = 0.0, b = 0.0;
    if (!(row >> a)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw InputError("sample file line " + std::to_string(lineno) + ": not numeric");
    }
    if (!(row >> b)) {
      throw InputError("sample file line " + std::to_string(lineno) + ": expected two columns");
    }
    std::string rest;
    if (row >> rest) {
      throw InputError("sample file line " + std::to_string(lineno) + ": too many columns");
    }
    t.push_back(a);
    v.push_back(b);
  }
  auto profile = sample_profile(path.filename().string(), std::move(t), std::move(v));
  if (warn != nullptr) {
    *warn << "warning: sample profile '" << profile.name << "' is extended by zero beyond t = "
          << profile.horizon << "\n";
  }
  return profile;
}

SourceProfile resolve_profile(const std::string& name_or_path, std::ostream* warn) {
  for (const auto& p : catalog()) {
    if (p.name == name_or_path) return p;
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec)) {
    return load_sample_profile(name_or_path, warn);
  }
  throw InputError("unknown profile '" + name_or_path +
                   "' (not a catalog name and not a readable file)");
}

}  // namespace hypervolt
