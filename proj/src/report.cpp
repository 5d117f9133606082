#include "radfact/report.hpp"

#include <algorithm>
#include <sstream>

namespace radfact {

void Report::verdict(std::string name, bool passed, nlohmann::json detail) {
  nlohmann::json v{{"name", std::move(name)}, {"passed", passed}};
  if (!detail.is_null()) v["detail"] = std::move(detail);
  verdicts_.push_back(std::move(v));
}

bool Report::passed() const {
  return std::all_of(verdicts_.begin(), verdicts_.end(),
                     [](const nlohmann::json& v) { return v.at("passed").get<bool>(); });
}

nlohmann::json Report::to_json() const {
  nlohmann::json j{{"command", command_},
                   {"config", config_},
                   {"verdicts", verdicts_},
                   {"witnesses", witnesses_},
                   {"timing", timing_}};
  if (!extra_.empty()) j["data"] = extra_;
  return j;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

std::string Report::text() const {
  std::ostringstream out;
  for (const auto& v : verdicts_) {
    out << (v.at("passed").get<bool>() ? "PASS " : "FAIL ") << v.at("name").get<std::string>();
    if (v.contains("detail")) {
      const auto& d = v["detail"];
      out << ": " << (d.is_string() ? d.get<std::string>() : d.dump());
    }
    out << "\n";
  }
  for (const auto& w : witnesses_) out << "  witness " << (w.is_string() ? w.get<std::string>() : w.dump()) << "\n";
  if (!timing_.is_null()) out << "timing " << timing_.dump() << "\n";
  return out.str();
}

std::vector<std::string> check_report_schema(const nlohmann::json& report) {
  std::vector<std::string> problems;
  if (!report.is_object()) return {"report is not an object"};
  const std::vector<std::string> allowed{"command", "config", "verdicts", "witnesses", "timing", "data"};
  for (const auto& [key, value] : report.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      problems.push_back("unexpected key '" + key + "'");
    }
  }
  auto need = [&](const char* key) {
    if (!report.contains(key)) problems.push_back(std::string("missing '") + key + "'");
    return report.contains(key);
  };
  if (need("command") && !report["command"].is_string()) problems.push_back("command is not a string");
  if (need("config") && !report["config"].is_object()) problems.push_back("config is not an object");
  if (need("verdicts")) {
    if (!report["verdicts"].is_array()) {
      problems.push_back("verdicts is not an array");
    } else {
      for (const auto& v : report["verdicts"]) {
        if (!v.is_object() || !v.contains("name") || !v["name"].is_string() ||
            !v.contains("passed") || !v["passed"].is_boolean()) {
          problems.push_back("malformed verdict " + v.dump());
        }
      }
    }
  }
  if (need("witnesses") && !report["witnesses"].is_array()) problems.push_back("witnesses is not an array");
  if (need("timing") && !(report["timing"].is_null() || report["timing"].is_object() ||
                          report["timing"].is_number())) {
    problems.push_back("timing is neither null, a number nor an object");
  }
  if (report.contains("data") && !report["data"].is_object()) problems.push_back("data is not an object");
  return problems;
}

}  // namespace radfact
