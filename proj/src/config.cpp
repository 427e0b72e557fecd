#include "gssdc/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "gssdc/matrix_io.hpp"

namespace gssdc {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  return from_string(read_text_file(path), path);
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text, const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  size_t pos = 0;
  int lineno = 0;
  while (pos <= text.size()) {
    const size_t end = text.find('\n', pos);
    std::string line = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? text.size() + 1 : end + 1;
    ++lineno;

    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;

    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    cfg.values_[key] = value;
  }
  return cfg;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(origin_ + ": missing required key '" + key + "'");
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& dflt) const {
  auto it = values_.find(key);
  return it == values_.end() ? dflt : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError(origin_ + ": key '" + key + "' is not a number: '" + v + "'");
  return x;
}

double KeyValueConfig::get_double(const std::string& key, double dflt) const {
  return has(key) ? get_double(key) : dflt;
}

int KeyValueConfig::get_int(const std::string& key) const {
  const double x = get_double(key);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x)
    throw ConfigError(origin_ + ": key '" + key + "' is not an integer");
  return i;
}

int KeyValueConfig::get_int(const std::string& key, int dflt) const {
  return has(key) ? get_int(key) : dflt;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t dflt) const {
  if (!has(key)) return dflt;
  const std::string v = get_string(key);
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError(origin_ + ": key '" + key + "' is not an unsigned integer: '" + v + "'");
  return static_cast<std::uint64_t>(x);
}

SpectralPreset SpectralPreset::parse(const std::string& text) {
  const std::string s = trim(text);
  SpectralPreset preset;
  const size_t brace = s.find('{');
  if (brace == std::string::npos) {
    preset.name = s;
    return preset;
  }
  if (s.back() != '}') throw ConfigError("preset '" + text + "': missing closing brace");
  preset.name = trim(s.substr(0, brace));
  std::string body = s.substr(brace + 1, s.size() - brace - 2);
  size_t pos = 0;
  while (pos < body.size()) {
    size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    const std::string item = trim(body.substr(pos, comma - pos));
    pos = comma + 1;
    if (item.empty()) continue;
    const size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("preset '" + text + "': expected key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    const std::string val = trim(item.substr(eq + 1));
    char* end = nullptr;
    const double x = std::strtod(val.c_str(), &end);
    if (end == val.c_str() || *end != '\0')
      throw ConfigError("preset '" + text + "': parameter '" + key + "' is not a number");
    preset.params[key] = x;
  }
  if (preset.name.empty()) throw ConfigError("preset '" + text + "': empty name");
  return preset;
}

std::string SpectralPreset::to_string() const {
  std::string out = name + "{";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) out += ',';
    first = false;
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out += k + "=" + std::string(buf, res.ptr);
  }
  return out + "}";
}

SpectralFn make_spectral_fn(const SpectralPreset& preset, double lambda_max) {
  auto param = [&](const char* key, double dflt) {
    auto it = preset.params.find(key);
    return it == preset.params.end() ? dflt : it->second;
  };
  if (lambda_max <= 0.0 && preset.name != "const" && preset.name != "gmrf_lowpass")
    throw ConfigError("preset '" + preset.name + "': needs a positive lambda_max");

  if (preset.name == "pgs_exp") {
    const double c = param("c", 1.5);
    return [c, lambda_max](double lam) { return std::exp(-c * lam / lambda_max); };
  }
  if (preset.name == "sm_ratio") {
    const double eps = param("eps", 0.1);
    return [eps, lambda_max](double lam) { return lam / lambda_max + eps; };
  }
  if (preset.name == "st_gauss") {
    return [lambda_max](double lam) {
      const double t = (2.0 * lam - lambda_max) / std::sqrt(lambda_max);
      return std::exp(-t * t);
    };
  }
  if (preset.name == "gmrf_lowpass") {
    const double a = param("a", 0.1);
    return [a](double lam) { return a / (lam + a); };
  }
  if (preset.name == "const") {
    const double v = param("v", 1.0);
    return [v](double) { return v; };
  }
  throw ConfigError("unknown spectral preset '" + preset.name + "'");
}

}  // namespace gssdc
