#pragma once

// Physical-layer models for a CV-QKD channel sharing a fiber with classical
// WDM channels: attenuation, forward spontaneous Raman scattering (SpRS),
// conversion of Raman power into excess noise, and the asymptotic GG02
// secret key rate under collective attacks with a trusted detector.
//
// Units follow the field names: lengths in km, frequencies in THz (carrier)
// or GHz (bandwidths and detunings), powers in W unless suffixed _dbm,
// variances in shot-noise units (SNU).

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qaplan {

inline constexpr double kPlanck = 6.62607015e-34;  // J*s

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// Tabulated spontaneous Raman coefficient rho(detuning), 1/(km*GHz).
///
/// Detuning is pump minus probe frequency in GHz: positive values are the
/// Stokes side (classical pump above the quantum channel). Lookups use
/// piecewise-linear interpolation and never extrapolate.
class RamanSpectrum {
 public:
  struct Point {
    double detuning_ghz;
    double rho;
  };

  /// Minimum half-span the table must cover on both sides of zero.
  static constexpr double kMinHalfSpanGhz = 15000.0;

  /// Validates the invariants: strictly increasing detunings, rho >= 0,
  /// coverage of at least +-15 THz, and rho(+d) >= rho(-d) at every knot.
  explicit RamanSpectrum(std::vector<Point> points);

  /// Parses the text format: one "detuning_ghz rho" pair per line. Blank
  /// lines are skipped; '#' starts a comment that runs to end of line.
  static RamanSpectrum parse(std::string_view text);
  static RamanSpectrum load(const std::filesystem::path& path);

  double coefficient(double detuning_ghz) const;

  const std::vector<Point>& points() const noexcept { return points_; }
  double min_detuning_ghz() const noexcept { return points_.front().detuning_ghz; }
  double max_detuning_ghz() const noexcept { return points_.back().detuning_ghz; }

 private:
  std::vector<Point> points_;
};

struct FiberParams {
  double alpha_db_per_km = 0.2;
  std::shared_ptr<const RamanSpectrum> raman;

  void validate() const;
};

enum class Detection { kHomodyne, kHeterodyne };

std::string_view to_string(Detection d);
Detection detection_from_string(std::string_view s);

/// Protocol parameters of a Gaussian-modulated coherent-state CV-QKD link.
/// The defaults are artifact defaults, not measured values.
struct CvQkdParams {
  double v_a = 4.0;         // modulation variance, SNU
  double beta = 0.95;       // reconciliation efficiency
  double xi_base = 0.01;    // intrinsic excess noise at channel input, SNU
  double eta_det = 1.0;     // detector efficiency
  double v_el = 0.0;        // electronic noise, SNU
  Detection detection = Detection::kHeterodyne;
  double f_sym = 100e6;     // symbols/s
  double b_q_ghz = 12.5;    // receiver optical bandwidth
  double nu_q_thz = 193.4;  // quantum channel carrier

  void validate() const;
};

/// T = 10^(-alpha*L/10).
double transmittance(double length_km, double alpha_db_per_km);

double raman_coefficient(const RamanSpectrum& spectrum, double pump_freq_thz,
                         double probe_freq_thz);

/// Co-propagating SpRS power collected in bandwidth b_q at the fiber output,
/// with pump and probe attenuation taken equal (effective length = L).
double spurs_power_forward(double p_launch_w, double length_km,
                           const FiberParams& fiber, double rho,
                           double b_q_ghz);

/// Excess noise in SNU referred to the channel input: 2 * P/(h*nu*B) / T.
double raman_to_excess_noise(double p_raman_w, double transmittance,
                             double nu_q_thz, double b_q_ghz);

/// Symplectic eigenvalues of the Alice-Bob state (nu1, nu2) and of the
/// state held by Eve conditioned on Bob's measurement (nu3, nu4; the fifth
/// eigenvalue of the trusted-detector purification is exactly 1).
struct SymplecticSpectrum {
  double nu1;
  double nu2;
  double nu3;
  double nu4;
};

SymplecticSpectrum symplectic_eigenvalues(const CvQkdParams& params, double t,
                                          double xi_total);

/// Von Neumann entropy (bits) of a thermal mode with symplectic eigenvalue nu.
double entropy_of_symplectic_eigenvalue(double nu);

struct SkrResult {
  double mutual_information;  // I_AB, bits/symbol
  double holevo_bound;        // chi_BE, bits/symbol
  double bits_per_symbol;     // max(0, beta*I_AB - chi_BE)
  double rate_bps;            // f_sym * bits_per_symbol
};

/// Asymptotic GG02 key rate. Throws NumericFailure on non-finite results.
SkrResult skr_gg02(const CvQkdParams& params, double t, double xi_total);

struct ClassicalChannel {
  double launch_w;
  double freq_thz;
};

/// Total forward SpRS power (W) reaching the quantum receiver.
double link_raman_power(const FiberParams& fiber, double length_km,
                        const CvQkdParams& params,
                        std::span<const ClassicalChannel> classical_load);

/// Key rate of one fiber direction given its classical channel load.
SkrResult link_skr(const FiberParams& fiber, double length_km,
                   const CvQkdParams& params,
                   std::span<const ClassicalChannel> classical_load);

/// Key rate of one fiber direction given an aggregate SpRS power already
/// collected at the receiver.
SkrResult link_skr_with_raman(const FiberParams& fiber, double length_km,
                              const CvQkdParams& params, double p_raman_w);

}  // namespace qaplan
