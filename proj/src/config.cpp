#include "scn/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace scn {

using ordered_json = nlohmann::ordered_json;

std::vector<double> ScenarioConfig::subcarrier_powers() const {
  std::vector<double> p(static_cast<std::size_t>(num_bs));
  for (int l = 0; l < num_bs; ++l) p[static_cast<std::size_t>(l)] = subcarrier_power(l);
  return p;
}

ScenarioConfig ScenarioConfig::resized(int users, int bss) const {
  ScenarioConfig out = *this;
  out.num_users = users;
  out.num_bs = bss;
  if (static_cast<int>(quotas.size()) != bss) {
    const bool uniform =
        !quotas.empty() &&
        std::all_of(quotas.begin(), quotas.end(), [&](int q) { return q == quotas.front(); });
    if (!uniform) {
      throw std::invalid_argument(
          "quotas: non-uniform quota list cannot be resized to " + std::to_string(bss) +
          " base stations");
    }
    out.quotas.assign(static_cast<std::size_t>(bss), quotas.front());
  }
  return out;
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (num_bs < 1) fail("num_bs must be >= 1");
  if (num_users < 0) fail("num_users must be >= 0");
  if (num_subcarriers < 1) fail("num_subcarriers must be >= 1");
  if (!(subcarrier_bandwidth > 0.0)) fail("subcarrier_bandwidth must be > 0");
  if (!(area_side > 0.0)) fail("area_side must be > 0");
  if (!(power_mbs > 0.0)) fail("power_mbs must be > 0");
  if (!(power_scbs > 0.0)) fail("power_scbs must be > 0");
  if (!(noise_variance >= 0.0)) fail("noise_variance must be >= 0");
  if (!(pathloss_exponent > 0.0)) fail("pathloss_exponent must be > 0");
  if (!(min_distance > 0.0)) fail("min_distance must be > 0");
  if (!(rate_threshold >= 0.0)) fail("rate_threshold must be >= 0");
  if (static_cast<int>(quotas.size()) != num_bs)
    fail("quotas must list exactly num_bs entries");
  for (std::size_t l = 0; l < quotas.size(); ++l) {
    if (quotas[l] < 1)
      fail("quotas[" + std::to_string(l) + "] must be >= 1");
  }
  if (!(priority_coeffs[0] >= priority_coeffs[1] && priority_coeffs[1] >= priority_coeffs[2]))
    fail("priority_coeffs must be non-increasing");
  if (!(priority_coeffs[2] > 0.0)) fail("priority_coeffs must be > 0");
  if (!(zeta1 > 0.0)) fail("zeta1 must be > 0");
  if (!(zeta2 > 1.0)) fail("zeta2 must be > 1");
  if (!(sinr_saturation > 0.0)) fail("sinr_saturation must be > 0");
}

namespace {

ordered_json to_json(const ScenarioConfig& c) {
  ordered_json j;
  j["num_bs"] = c.num_bs;
  j["num_users"] = c.num_users;
  j["num_subcarriers"] = c.num_subcarriers;
  j["subcarrier_bandwidth"] = c.subcarrier_bandwidth;
  j["area_side"] = c.area_side;
  j["power_mbs"] = c.power_mbs;
  j["power_scbs"] = c.power_scbs;
  j["noise_variance"] = c.noise_variance;
  j["pathloss_exponent"] = c.pathloss_exponent;
  j["min_distance"] = c.min_distance;
  j["rate_threshold"] = c.rate_threshold;
  j["quotas"] = c.quotas;
  j["priority_coeffs"] = c.priority_coeffs;
  j["zeta1"] = c.zeta1;
  j["zeta2"] = c.zeta2;
  j["sinr_saturation"] = c.sinr_saturation;
  j["rng_seed"] = c.rng_seed;
  return j;
}

ScenarioConfig from_json(const ordered_json& j) {
  ScenarioConfig c;
  std::vector<std::string> known = {
      "num_bs",         "num_users",      "num_subcarriers", "subcarrier_bandwidth",
      "area_side",      "power_mbs",      "power_scbs",      "noise_variance",
      "pathloss_exponent", "min_distance", "rate_threshold", "quotas",
      "priority_coeffs", "zeta1",         "zeta2",           "sinr_saturation",
      "rng_seed"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw std::invalid_argument("unknown config key: " + it.key());
  }
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("num_bs", c.num_bs);
  get("num_users", c.num_users);
  get("num_subcarriers", c.num_subcarriers);
  get("subcarrier_bandwidth", c.subcarrier_bandwidth);
  get("area_side", c.area_side);
  get("power_mbs", c.power_mbs);
  get("power_scbs", c.power_scbs);
  get("noise_variance", c.noise_variance);
  get("pathloss_exponent", c.pathloss_exponent);
  get("min_distance", c.min_distance);
  get("rate_threshold", c.rate_threshold);
  if (j.contains("quotas")) {
    const auto& q = j.at("quotas");
    if (q.is_number_integer()) {
      c.quotas.assign(static_cast<std::size_t>(c.num_bs), q.get<int>());
    } else {
      c.quotas = q.get<std::vector<int>>();
    }
  } else if (static_cast<int>(c.quotas.size()) != c.num_bs) {
    c.quotas.assign(static_cast<std::size_t>(c.num_bs), c.quotas.front());
  }
  get("priority_coeffs", c.priority_coeffs);
  get("zeta1", c.zeta1);
  get("zeta2", c.zeta2);
  get("sinr_saturation", c.sinr_saturation);
  get("rng_seed", c.rng_seed);
  c.validate();
  return c;
}

}  // namespace

std::string ScenarioConfig::to_json_text() const { return to_json(*this).dump(); }

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
  return from_json(ordered_json::parse(text));
}

ScenarioConfig ScenarioConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  ordered_json j = ordered_json::parse(in);
  if (j.contains("config")) {
    ScenarioConfig c = from_json(j.at("config"));
    if (j.contains("master_seed")) c.rng_seed = j.at("master_seed").get<std::uint64_t>();
    return c;
  }
  return from_json(j);
}

void ScenarioConfig::apply_override(const std::string& key, const std::string& value) {
  auto as_int = [&]() {
    std::size_t pos = 0;
    int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("bad integer for " + key);
    return v;
  };
  auto as_double = [&]() {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("bad number for " + key);
    return v;
  };
  auto as_int_list = [&]() {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw std::invalid_argument("empty list for " + key);
    return out;
  };

  if (key == "num_bs") {
    int prev = num_bs;
    num_bs = as_int();
    // Keep uniform quota lists in step with the cell count.
    if (static_cast<int>(quotas.size()) == prev && !quotas.empty() &&
        std::all_of(quotas.begin(), quotas.end(),
                    [&](int q) { return q == quotas.front(); })) {
      quotas.assign(static_cast<std::size_t>(num_bs), quotas.front());
    }
  } else if (key == "num_users") {
    num_users = as_int();
  } else if (key == "num_subcarriers") {
    num_subcarriers = as_int();
  } else if (key == "subcarrier_bandwidth") {
    subcarrier_bandwidth = as_double();
  } else if (key == "area_side") {
    area_side = as_double();
  } else if (key == "power_mbs") {
    power_mbs = as_double();
  } else if (key == "power_scbs") {
    power_scbs = as_double();
  } else if (key == "noise_variance") {
    noise_variance = as_double();
  } else if (key == "pathloss_exponent") {
    pathloss_exponent = as_double();
  } else if (key == "min_distance") {
    min_distance = as_double();
  } else if (key == "rate_threshold") {
    rate_threshold = as_double();
  } else if (key == "quotas") {
    std::vector<int> q = as_int_list();
    if (q.size() == 1) q.assign(static_cast<std::size_t>(num_bs), q.front());
    quotas = std::move(q);
  } else if (key == "priority_coeffs") {
    std::vector<double> v;
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
    if (v.size() != 3) throw std::invalid_argument("priority_coeffs needs 3 values");
    priority_coeffs = {v[0], v[1], v[2]};
  } else if (key == "zeta1") {
    zeta1 = as_double();
  } else if (key == "zeta2") {
    zeta2 = as_double();
  } else if (key == "sinr_saturation") {
    sinr_saturation = as_double();
  } else if (key == "rng_seed") {
    rng_seed = std::stoull(value);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

}  // namespace scn
