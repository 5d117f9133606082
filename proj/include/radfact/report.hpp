#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace radfact {

// The JSON envelope shared by every command:
// {command, config, verdicts: [{name, passed, detail?}], witnesses: [...], timing}.
class Report {
 public:
  Report(std::string command, nlohmann::json config)
      : command_(std::move(command)), config_(std::move(config)) {}

  void verdict(std::string name, bool passed, nlohmann::json detail = nullptr);
  void witness(nlohmann::json w) { witnesses_.push_back(std::move(w)); }
  void attach(std::string key, nlohmann::json value) { extra_[std::move(key)] = std::move(value); }
  void set_timing(nlohmann::json timing) { timing_ = std::move(timing); }

  bool passed() const;
  const nlohmann::json& verdicts() const { return verdicts_; }
  nlohmann::json to_json() const;
  // Keys sorted, two-space indent, trailing newline; identical input gives identical bytes.
  std::string dump() const;
  std::string text() const;

 private:
  std::string command_;
  nlohmann::json config_;
  nlohmann::json verdicts_ = nlohmann::json::array();
  nlohmann::json witnesses_ = nlohmann::json::array();
  nlohmann::json extra_ = nlohmann::json::object();
  nlohmann::json timing_ = nullptr;
};

// Problems with the report shape; empty when it matches the schema.
std::vector<std::string> check_report_schema(const nlohmann::json& report);

}  // namespace radfact
