#ifndef HYPERVOLT_PROFILE_HPP
#define HYPERVOLT_PROFILE_HPP

#include <complex>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace hypervolt {

using cdouble = std::complex<double>;

enum class DecayKind { exponential, super_exponential, power };

struct Decay {
  DecayKind kind = DecayKind::exponential;
  double rate = 0.0;  // rho for power(rho) decay

  std::string label() const;
};

/// The forcing term v0 of the equation.
struct SourceProfile {
  std::string name;
  std::function<double(double)> evaluate;
  /// Closed-form Laplace transform for Re p > 0; empty when only quadrature
  /// is available.
  std::function<cdouble(cdouble)> transform;
  double value_at_zero = 0.0;
  double moment0 = 0.0;  // int_0^inf v0(t) dt
  Decay decay;
  /// v0 vanishes (or is below 1e-17 of its peak) beyond this time.
  double horizon = 0.0;
  /// Points in (0, horizon) where v0 is not smooth.
  std::vector<double> breakpoints;
  /// True when `transform` decays in the left half-plane so deformed
  /// (Talbot-type) contours may use it.  Profiles with delays or compact
  /// support have entire transforms that grow there.
  bool contour_safe = false;

  bool has_transform() const { return static_cast<bool>(transform); }
};

/// Catalog profiles, in catalog order: exp, texp, gaussian_bump, cos_bump.
const std::vector<SourceProfile>& catalog();

/// Catalog lookup by name; throws InputError for unknown names.
const SourceProfile& find_profile(const std::string& name);

/// v0 = 0.
SourceProfile zero_profile();

/// a * p + b * q, with transforms combined when both are present.
SourceProfile combine(double a, const SourceProfile& p, double b, const SourceProfile& q);

/// Two-column (t, v0) samples with strictly increasing t starting at 0.
/// Linear interpolation inside the table, zero beyond the last sample.
SourceProfile sample_profile(std::string name, std::vector<double> t, std::vector<double> v);

/// Parse a sample file (whitespace- or comma-separated columns, '#'
/// comments).  Throws InputError on malformed content.  Writes a note about
/// zero extension to `warn` when given.
SourceProfile load_sample_profile(const std::filesystem::path& path, std::ostream* warn = nullptr);

/// Catalog name or, failing that, a sample-file path.
SourceProfile resolve_profile(const std::string& name_or_path, std::ostream* warn = nullptr);

}  // namespace hypervolt

#endif  // HYPERVOLT_PROFILE_HPP
