#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "qaplan/errors.hpp"
#include "qaplan/physmodels.hpp"

namespace qaplan {

namespace {

std::string format_ghz(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Parses one floating-point token; returns false unless the whole token is
// consumed.
bool parse_double(const std::string& token, double& out) {
  if (token.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return errno == 0 && end == token.c_str() + token.size() && std::isfinite(out);
}

}  // namespace

RamanSpectrum::RamanSpectrum(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw InvalidInput("raman spectrum needs at least two points");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!std::isfinite(p.detuning_ghz) || !std::isfinite(p.rho)) {
      throw InvalidInput("raman spectrum has a non-finite entry");
    }
    if (p.rho < 0.0) {
      throw InvalidInput("raman spectrum has negative rho at detuning " +
                         format_ghz(p.detuning_ghz) + " GHz");
    }
    if (i > 0 && !(p.detuning_ghz > points_[i - 1].detuning_ghz)) {
      throw InvalidInput("raman spectrum detunings not strictly increasing at " +
                         format_ghz(p.detuning_ghz) + " GHz");
    }
  }
  if (min_detuning_ghz() > -kMinHalfSpanGhz || max_detuning_ghz() < kMinHalfSpanGhz) {
    throw InvalidInput("raman spectrum must cover at least +-15000 GHz of detuning");
  }
  // Stokes dominance, checked at every knot whose mirror lies in the table.
  for (const auto& p : points_) {
    const double d = std::abs(p.detuning_ghz);
    if (d == 0.0 || d > -min_detuning_ghz() || d > max_detuning_ghz()) continue;
    if (coefficient(d) < coefficient(-d)) {
      throw InvalidInput("raman spectrum anti-Stokes exceeds Stokes at |detuning| " +
                         format_ghz(d) + " GHz");
    }
  }
}

RamanSpectrum RamanSpectrum::parse(std::string_view text) {
  std::vector<Point> points;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    const int col = static_cast<int>(line.find(a)) + 1;
    if (!(fields >> b)) {
      throw ParseError("expected \"detuning_ghz rho\" pair", line_no, col);
    }
    if (fields >> extra) {
      throw ParseError("unexpected trailing field '" + extra + "'", line_no,
                       static_cast<int>(line.find(extra, col)) + 1);
    }
    Point p{};
    if (!parse_double(a, p.detuning_ghz)) {
      throw ParseError("invalid detuning '" + a + "'", line_no, col);
    }
    if (!parse_double(b, p.rho)) {
      throw ParseError("invalid rho '" + b + "'", line_no,
                       static_cast<int>(line.find(b, col + a.size() - 1)) + 1);
    }
    points.push_back(p);
  }
  return RamanSpectrum(std::move(points));
}

RamanSpectrum RamanSpectrum::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open raman table: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

double RamanSpectrum::coefficient(double detuning_ghz) const {
  if (!(detuning_ghz >= min_detuning_ghz() && detuning_ghz <= max_detuning_ghz())) {
    throw OutOfRange("detuning " + format_ghz(detuning_ghz) +
                     " GHz outside raman table span [" +
                     format_ghz(min_detuning_ghz()) + ", " +
                     format_ghz(max_detuning_ghz()) + "]");
  }
  auto hi = std::lower_bound(points_.begin(), points_.end(), detuning_ghz,
                             [](const Point& p, double d) { return p.detuning_ghz < d; });
  if (hi->detuning_ghz == detuning_ghz) return hi->rho;
  auto lo = std::prev(hi);
  const double w = (detuning_ghz - lo->detuning_ghz) / (hi->detuning_ghz - lo->detuning_ghz);
  return lo->rho + w * (hi->rho - lo->rho);
}

}  // namespace qaplan
