#pragma once

#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>

#include "json.hpp"
#include "spaceform/datasets.hpp"
#include "spaceform/reconstruct.hpp"

namespace spaceform::cli {

using nlohmann::json;

class ConfigError : public Error {
  using Error::Error;
};

// Loaded config plus the directory relative paths are resolved against.
struct Config {
  json doc;
  std::filesystem::path base;

  static Config load(const std::string& path);
  std::filesystem::path resolve(const std::string& p) const;
};

// Unknown keys are errors.
void allow_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where);
const json& require(const json& obj, const char* key, const std::string& where);
double get_number(const json& obj, const char* key, const std::string& where);
std::optional<double> get_optional_number(const json& obj, const char* key, const std::string& where);

SurfaceCase config_case(const json& doc);
double config_L0(const json& doc);
std::optional<Grid> config_grid(const json& doc);

// "data": {"file": ...} or {"dataset": {...}}.
FundamentalData load_data(const Config& c, const json& section, const std::string& where);

}  // namespace spaceform::cli
