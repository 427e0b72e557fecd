#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "gssdc/priors.hpp"

namespace gssdc {

// Raised for malformed configs / presets; the CLI maps it to a usage error.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Flat key=value files; '#' starts a comment, blank lines ignored.
class KeyValueConfig {
public:
  static KeyValueConfig load(const std::string& path);
  static KeyValueConfig from_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get_string(const std::string& key) const;                       // required
  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double dflt) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int dflt) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const;

private:
  std::string origin_;
  std::map<std::string, std::string> values_;
};

// Named spectral function with parameters, written name{key=value,...}:
//   pgs_exp{c=1.5}       exp(-c * lambda / lambda_max)
//   sm_ratio{eps=0.1}    lambda / lambda_max + eps
//   st_gauss{}           exp(-((2 lambda - lambda_max) / sqrt(lambda_max))^2)
//   gmrf_lowpass{a=0.1}  a / (lambda + a)
//   const{v=1}           v
struct SpectralPreset {
  std::string name;
  std::map<std::string, double> params;

  static SpectralPreset parse(const std::string& text);
  std::string to_string() const;
};

SpectralFn make_spectral_fn(const SpectralPreset& preset, double lambda_max);

}  // namespace gssdc
