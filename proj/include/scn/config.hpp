#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace scn {

// All physical and game parameters of one scenario. BS 0 is the macrocell,
// BSs 1..num_bs-1 are the small cells.
struct ScenarioConfig {
  int num_bs = 11;
  int num_users = 60;
  int num_subcarriers = 16;
  double subcarrier_bandwidth = 1.0;
  double area_side = 1000.0;
  double power_mbs = 10.0;
  double power_scbs = 1.0;
  double noise_variance = 1e-12;
  double pathloss_exponent = 3.0;
  double min_distance = 1.0;
  double rate_threshold = 0.0;
  std::vector<int> quotas = std::vector<int>(11, 4);
  std::array<double, 3> priority_coeffs = {100.0, 30.0, 1.0};
  double zeta1 = 0.1;
  double zeta2 = 3.0;
  double sinr_saturation = 1e12;
  std::uint64_t rng_seed = 1;

  double bs_power(int l) const { return l == 0 ? power_mbs : power_scbs; }

  // Per-subcarrier transmit power; total BS power is split evenly.
  double subcarrier_power(int l) const { return bs_power(l) / num_subcarriers; }

  std::vector<double> subcarrier_powers() const;

  // Copy with a different population. Uniform quotas are re-broadcast to the
  // new cell count; non-uniform quotas must already have the right length.
  ScenarioConfig resized(int users, int bss) const;

  void validate() const;  // throws std::invalid_argument on the first bad field

  std::string to_json_text() const;  // single line, stable key order
  static ScenarioConfig from_json_text(const std::string& text);

  // Accepts either a bare config object or a results file that embeds one
  // under "config" (in that case an embedded master seed is also absorbed).
  static ScenarioConfig from_json_file(const std::string& path);

  // Typed KEY=VALUE override; unknown keys throw.
  void apply_override(const std::string& key, const std::string& value);
};

}  // namespace scn
