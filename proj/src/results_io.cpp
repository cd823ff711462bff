#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "qaplan/errors.hpp"
#include "qaplan/io.hpp"

namespace qaplan {

namespace {

using json = nlohmann::ordered_json;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// JSON has no infinity; unlimited headroom travels as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& j) {
  return j.is_null() ? kUnlimited : j.get<double>();
}

}  // namespace

ResultFormat result_format_from_string(std::string_view s) {
  if (s == "csv") return ResultFormat::kCsv;
  if (s == "json") return ResultFormat::kJson;
  throw InvalidInput("unknown format '" + std::string(s) + "' (expected csv or json)");
}

std::string emit_results(const std::vector<PlanReport>& reports, ResultFormat format) {
  if (reports.empty()) throw InvalidInput("no reports to emit");
  if (format == ResultFormat::kCsv) {
    std::string out = "policy,margin,p_dbm,offered,blocked,blocking_ratio\n";
    for (const auto& r : reports) {
      out += r.policy + "," + fixed6(r.margin) + "," + fixed6(r.p_dbm) + "," +
             std::to_string(r.offered) + "," + std::to_string(r.blocked) + "," +
             fixed6(r.blocking_ratio) + "\n";
    }
    return out;
  }

  json doc;
  doc["schema"] = "qaplan.plan_reports";
  doc["version"] = kResultSchemaVersion;
  json& arr = doc["reports"] = json::array();
  for (const auto& r : reports) {
    json j;
    j["policy"] = r.policy;
    j["margin"] = r.margin;
    j["p_dbm"] = r.p_dbm;
    j["offered"] = r.offered;
    j["blocked"] = r.blocked;
    j["blocking_ratio"] = r.blocking_ratio;
    j["qkd_feasible"] = r.qkd_feasible;
    j["q_slot"] = r.q_slot;
    j["request_hash"] = r.request_hash;
    json links = json::array();
    for (const auto& l : r.per_link) {
      links.push_back({{"name", l.name},
                       {"length_km", l.length_km},
                       {"utilization", l.utilization},
                       {"qkd_allocated_bps", l.qkd_allocated_bps},
                       {"skr_capacity_bps", l.skr_capacity_bps},
                       {"noise_headroom_w", number_or_null(l.noise_headroom_w)},
                       {"residual_headroom_w", number_or_null(l.residual_headroom_w)}});
    }
    j["per_link"] = std::move(links);
    arr.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::vector<PlanReport> reports_from_json(std::string_view text) {
  std::vector<PlanReport> out;
  try {
    const json doc = json::parse(text);
    if (doc.at("version").get<int>() != kResultSchemaVersion) {
      throw ParseError("unsupported result schema version");
    }
    for (const auto& j : doc.at("reports")) {
      PlanReport r;
      r.policy = j.at("policy").get<std::string>();
      r.margin = j.at("margin").get<double>();
      r.p_dbm = j.at("p_dbm").get<double>();
      r.offered = j.at("offered").get<int>();
      r.blocked = j.at("blocked").get<int>();
      r.blocking_ratio = j.at("blocking_ratio").get<double>();
      r.qkd_feasible = j.at("qkd_feasible").get<bool>();
      r.q_slot = j.at("q_slot").get<int>();
      r.request_hash = j.at("request_hash").get<std::uint64_t>();
      for (const auto& l : j.at("per_link")) {
        r.per_link.push_back({l.at("name").get<std::string>(), l.at("length_km").get<double>(),
                              l.at("utilization").get<double>(),
                              l.at("qkd_allocated_bps").get<double>(),
                              l.at("skr_capacity_bps").get<double>(),
                              number_or_inf(l.at("noise_headroom_w")),
                              number_or_inf(l.at("residual_headroom_w"))});
      }
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid result JSON: ") + e.what());
  }
  return out;
}

std::string emit_placement(const PlacementSweep& sweep, ResultFormat format) {
  if (format == ResultFormat::kCsv) {
    std::string out = "q_slot,freq_thz,spurs_w,is_argmin\n";
    char buf[128];
    for (const auto& p : sweep.points) {
      std::snprintf(buf, sizeof buf, "%d,%.4f,%.9e,%d\n", p.q_slot, p.freq_thz, p.spurs_w,
                    p.q_slot == sweep.argmin_slot ? 1 : 0);
      out += buf;
    }
    return out;
  }
  json doc;
  doc["schema"] = "qaplan.placement_sweep";
  doc["version"] = kResultSchemaVersion;
  doc["argmin_slot"] = sweep.argmin_slot;
  json& pts = doc["points"] = json::array();
  for (const auto& p : sweep.points) {
    pts.push_back({{"q_slot", p.q_slot}, {"freq_thz", p.freq_thz}, {"spurs_w", p.spurs_w}});
  }
  return doc.dump(2) + "\n";
}

void write_output(const std::filesystem::path& path, std::string_view content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw Error("failed writing to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + path.string());
  out << content;
  out.close();
  if (!out) throw Error("failed writing output file " + path.string());
}

}  // namespace qaplan
