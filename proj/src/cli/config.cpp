#include "config.hpp"

#include <fstream>

#include "spaceform/io.hpp"

namespace spaceform::cli {

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  Config c;
  try {
    c.doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!c.doc.is_object()) throw ConfigError("config must be a JSON object");
  c.base = std::filesystem::path(path).parent_path();
  return c;
}

std::filesystem::path Config::resolve(const std::string& p) const {
  const std::filesystem::path q(p);
  return q.is_absolute() ? q : base / q;
}

void allow_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* a : keys) known = known || k == a;
    if (!known) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing key '" + std::string(key) + "' in " + where);
  return obj.at(key);
}

double get_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a number");
  return v.get<double>();
}

std::optional<double> get_optional_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) return std::nullopt;
  return get_number(obj, key, where);
}

SurfaceCase config_case(const json& doc) {
  const json& v = require(doc, "case", "config");
  if (!v.is_string()) throw ConfigError("'case' must be a string");
  const auto c = parse_case(v.get<std::string>());
  if (!c) throw ConfigError("unknown case '" + v.get<std::string>() + "'");
  return *c;
}

double config_L0(const json& doc) { return get_optional_number(doc, "L0", "config").value_or(0.0); }

std::optional<Grid> config_grid(const json& doc) {
  if (!doc.contains("grid")) return std::nullopt;
  const json& g = doc.at("grid");
  Grid out;
  if (g.contains("n")) {
    allow_keys(g, {"lo", "hi", "n"}, "grid");
    const double n = get_number(g, "n", "grid");
    if (n < 3 || n != static_cast<double>(static_cast<std::size_t>(n)))
      throw ConfigError("grid.n must be an integer ≥ 3");
    out = Grid::square(get_number(g, "lo", "grid"), get_number(g, "hi", "grid"), static_cast<std::size_t>(n));
  } else {
    allow_keys(g, {"u0", "v0", "du", "dv", "nu", "nv"}, "grid");
    out.u0 = get_number(g, "u0", "grid");
    out.v0 = get_number(g, "v0", "grid");
    out.du = get_number(g, "du", "grid");
    out.dv = get_number(g, "dv", "grid");
    const double nu = get_number(g, "nu", "grid"), nv = get_number(g, "nv", "grid");
    if (nu < 0 || nv < 0) throw ConfigError("grid sizes must be non-negative");
    out.nu = static_cast<std::size_t>(nu);
    out.nv = static_cast<std::size_t>(nv);
  }
  out.validate();
  return out;
}

FundamentalData load_data(const Config& c, const json& section, const std::string& where) {
  allow_keys(section, {"file", "dataset"}, where);
  const SurfaceCase sc = config_case(c.doc);
  const double L0 = config_L0(c.doc);
  if (section.contains("file") == section.contains("dataset"))
    throw ConfigError(where + " needs exactly one of 'file' or 'dataset'");
  if (section.contains("file")) {
    const json& f = section.at("file");
    if (!f.is_string()) throw ConfigError(where + ".file must be a string");
    const auto path = c.resolve(f.get<std::string>());
    if (!std::filesystem::exists(path)) throw ConfigError("missing field file '" + path.string() + "'");
    return io::fundamental_from_table(io::read_table(path), ambient_model(sc, L0));
  }
  const json& d = section.at("dataset");
  allow_keys(d, {"family", "radius", "seed"}, where + ".dataset");
  DatasetSpec spec;
  const json& fam = require(d, "family", where + ".dataset");
  if (!fam.is_string()) throw ConfigError("dataset family must be a string");
  spec.family = fam.get<std::string>();
  spec.surface_case = sc;
  spec.L0 = L0;
  const auto grid = config_grid(c.doc);
  if (!grid) throw ConfigError("a dataset needs a 'grid' section");
  spec.grid = *grid;
  spec.radius = get_optional_number(d, "radius", where + ".dataset").value_or(1.0);
  spec.seed = static_cast<std::uint64_t>(get_optional_number(d, "seed", where + ".dataset").value_or(0.0));
  return make_dataset(spec);
}

}  // namespace spaceform::cli
