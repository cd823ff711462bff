#include "qaplan/physmodels.hpp"

#include <cmath>
#include <string>

#include "qaplan/errors.hpp"

namespace qaplan {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw NumericFailure(std::string("non-finite ") + what);
  }
}

// Trusted-detector added noise referred to Bob's input, SNU.
double detector_noise(const CvQkdParams& p) {
  if (p.detection == Detection::kHeterodyne) {
    return (2.0 - p.eta_det + 2.0 * p.v_el) / p.eta_det;
  }
  return (1.0 - p.eta_det + p.v_el) / p.eta_det;
}

// Symplectic eigenvalues from (sum of squares, product of squares); the
// smaller one is taken as sqrt(product)/larger to avoid cancellation.
std::pair<double, double> eigen_pair(double sum_sq, double prod_sq, double disc) {
  const double big = std::sqrt(0.5 * (sum_sq + std::sqrt(std::max(disc, 0.0))));
  const double small = std::sqrt(std::max(prod_sq, 0.0)) / big;
  return {big, small};
}

}  // namespace

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

void FiberParams::validate() const {
  if (!(alpha_db_per_km > 0.0) || !std::isfinite(alpha_db_per_km)) {
    throw InvalidInput("fiber alpha_db_per_km must be > 0");
  }
  if (!raman) throw InvalidInput("fiber has no raman spectrum");
}

std::string_view to_string(Detection d) {
  return d == Detection::kHeterodyne ? "heterodyne" : "homodyne";
}

Detection detection_from_string(std::string_view s) {
  if (s == "heterodyne") return Detection::kHeterodyne;
  if (s == "homodyne") return Detection::kHomodyne;
  throw InvalidInput("unknown detection '" + std::string(s) +
                     "' (expected homodyne or heterodyne)");
}

void CvQkdParams::validate() const {
  auto fail = [](const char* msg) { throw InvalidInput(msg); };
  if (!(v_a > 0.0)) fail("cvqkd v_a must be > 0");
  if (!(beta > 0.0 && beta <= 1.0)) fail("cvqkd beta must be in (0, 1]");
  if (!(xi_base >= 0.0)) fail("cvqkd xi_base must be >= 0");
  if (!(eta_det > 0.0 && eta_det <= 1.0)) fail("cvqkd eta_det must be in (0, 1]");
  if (!(v_el >= 0.0)) fail("cvqkd v_el must be >= 0");
  if (!(f_sym > 0.0)) fail("cvqkd f_sym must be > 0");
  if (!(b_q_ghz > 0.0)) fail("cvqkd b_q_ghz must be > 0");
  if (!(nu_q_thz > 0.0)) fail("cvqkd nu_q_thz must be > 0");
  for (double v : {v_a, beta, xi_base, eta_det, v_el, f_sym, b_q_ghz, nu_q_thz}) {
    if (!std::isfinite(v)) fail("cvqkd parameters must be finite");
  }
}

double transmittance(double length_km, double alpha_db_per_km) {
  if (!(length_km >= 0.0)) throw InvalidInput("length_km must be >= 0");
  if (!(alpha_db_per_km > 0.0)) throw InvalidInput("alpha_db_per_km must be > 0");
  return std::pow(10.0, -alpha_db_per_km * length_km / 10.0);
}

double raman_coefficient(const RamanSpectrum& spectrum, double pump_freq_thz,
                         double probe_freq_thz) {
  return spectrum.coefficient(pump_freq_thz * 1e3 - probe_freq_thz * 1e3);
}

double spurs_power_forward(double p_launch_w, double length_km,
                           const FiberParams& fiber, double rho, double b_q_ghz) {
  if (!(p_launch_w >= 0.0) || !(length_km >= 0.0) || !(rho >= 0.0) || !(b_q_ghz >= 0.0)) {
    throw InvalidInput("spurs_power_forward inputs must be >= 0");
  }
  const double t = transmittance(length_km, fiber.alpha_db_per_km);
  return p_launch_w * rho * b_q_ghz * length_km * t;
}

double raman_to_excess_noise(double p_raman_w, double transmittance, double nu_q_thz,
                             double b_q_ghz) {
  if (!(transmittance > 0.0)) throw NumericFailure("transmittance must be > 0");
  if (transmittance > 1.0) throw InvalidInput("transmittance must be <= 1");
  if (!(p_raman_w >= 0.0)) throw InvalidInput("raman power must be >= 0");
  if (!(nu_q_thz > 0.0) || !(b_q_ghz > 0.0)) {
    throw InvalidInput("nu_q_thz and b_q_ghz must be > 0");
  }
  const double photons_per_mode = p_raman_w / (kPlanck * nu_q_thz * 1e12 * b_q_ghz * 1e9);
  return 2.0 * photons_per_mode / transmittance;
}

SymplecticSpectrum symplectic_eigenvalues(const CvQkdParams& p, double t, double xi_total) {
  if (!(t > 0.0 && t <= 1.0)) throw InvalidInput("transmittance must be in (0, 1]");
  if (!(xi_total >= 0.0)) throw InvalidInput("xi_total must be >= 0");

  const double v = p.v_a + 1.0;
  const double chi_line = 1.0 / t - 1.0 + xi_total;
  const double chi_det = detector_noise(p);
  const double chi_tot = chi_line + chi_det / t;

  // gamma_AB = [[a I, c Z], [c Z, b I]]
  const double a = v;
  const double b = t * (v + chi_line);
  const double c2 = t * (v * v - 1.0);
  const double sum_ab = a * a + b * b - 2.0 * c2;
  const double det_ab = a * b - c2;
  const double disc_ab = (a - b) * (a - b) * ((a + b) * (a + b) - 4.0 * c2);
  const auto [nu1, nu2] = eigen_pair(sum_ab, det_ab * det_ab, disc_ab);

  const double sqrt_b = std::abs(det_ab);
  const double bob = t * (v + chi_tot);
  double sum_c = 0.0;
  double prod_c = 0.0;
  if (p.detection == Detection::kHomodyne) {
    sum_c = (sum_ab * chi_det + v * sqrt_b + t * (v + chi_line)) / bob;
    prod_c = sqrt_b * (v + sqrt_b * chi_det) / bob;
  } else {
    sum_c = (sum_ab * chi_det * chi_det + det_ab * det_ab + 1.0 +
             2.0 * chi_det * (v * sqrt_b + t * (v + chi_line)) + 2.0 * t * (v * v - 1.0)) /
            (bob * bob);
    const double r = (v + sqrt_b * chi_det) / bob;
    prod_c = r * r;
  }
  const auto [nu3, nu4] = eigen_pair(sum_c, prod_c, sum_c * sum_c - 4.0 * prod_c);

  SymplecticSpectrum s{nu1, nu2, nu3, nu4};
  require_finite(s.nu1 + s.nu2 + s.nu3 + s.nu4, "symplectic eigenvalue");
  return s;
}

double entropy_of_symplectic_eigenvalue(double nu) {
  require_finite(nu, "symplectic eigenvalue");
  if (nu < 1.0 - 1e-9) throw NumericFailure("symplectic eigenvalue below 1");
  if (nu <= 1.0) return 0.0;
  const double up = 0.5 * (nu + 1.0);
  const double down = 0.5 * (nu - 1.0);
  return up * std::log2(up) - down * std::log2(down);
}

SkrResult skr_gg02(const CvQkdParams& p, double t, double xi_total) {
  const SymplecticSpectrum s = symplectic_eigenvalues(p, t, xi_total);

  const double v = p.v_a + 1.0;
  const double chi_tot = 1.0 / t - 1.0 + xi_total + detector_noise(p) / t;
  double i_ab = std::log2((v + chi_tot) / (1.0 + chi_tot));
  if (p.detection == Detection::kHomodyne) i_ab *= 0.5;

  const double holevo =
      entropy_of_symplectic_eigenvalue(s.nu1) + entropy_of_symplectic_eigenvalue(s.nu2) -
      entropy_of_symplectic_eigenvalue(s.nu3) - entropy_of_symplectic_eigenvalue(s.nu4);

  SkrResult r{};
  r.mutual_information = i_ab;
  r.holevo_bound = holevo;
  r.bits_per_symbol = std::max(0.0, p.beta * i_ab - holevo);
  r.rate_bps = p.f_sym * r.bits_per_symbol;
  require_finite(r.mutual_information, "mutual information");
  require_finite(r.holevo_bound, "Holevo bound");
  require_finite(r.rate_bps, "key rate");
  return r;
}

double link_raman_power(const FiberParams& fiber, double length_km, const CvQkdParams& params,
                        std::span<const ClassicalChannel> classical_load) {
  double total = 0.0;
  for (const auto& ch : classical_load) {
    if (ch.freq_thz * 1e3 == params.nu_q_thz * 1e3) {
      throw InvalidInput("classical channel placed on the quantum channel frequency");
    }
    const double rho = raman_coefficient(*fiber.raman, ch.freq_thz, params.nu_q_thz);
    total += spurs_power_forward(ch.launch_w, length_km, fiber, rho, params.b_q_ghz);
  }
  return total;
}

SkrResult link_skr_with_raman(const FiberParams& fiber, double length_km,
                              const CvQkdParams& params, double p_raman_w) {
  const double t = transmittance(length_km, fiber.alpha_db_per_km);
  const double xi_raman = raman_to_excess_noise(p_raman_w, t, params.nu_q_thz, params.b_q_ghz);
  return skr_gg02(params, t, params.xi_base + xi_raman);
}

SkrResult link_skr(const FiberParams& fiber, double length_km, const CvQkdParams& params,
                   std::span<const ClassicalChannel> classical_load) {
  return link_skr_with_raman(fiber, length_km, params,
                             link_raman_power(fiber, length_km, params, classical_load));
}

}  // namespace qaplan
