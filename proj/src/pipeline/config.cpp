#include "vmdtex/pipeline/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "vmdtex/error.hpp"

namespace vmdtex::pipeline {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& message) { throw config_error("BadConfig", message); }

void check_keys(const toml::table& table, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, node] : table) {
    if (!allowed.contains(std::string(key.str()))) {
      bad("unknown key '" + std::string(key.str()) + "'" + (where.empty() ? "" : " in [" + where + "]"));
    }
  }
}

const toml::table* section(const toml::table& root, const char* name) {
  const auto* node = root.get(name);
  if (node == nullptr) return nullptr;
  if (!node->is_table()) bad(std::string("'") + name + "' must be a table");
  return node->as_table();
}

template <typename T>
std::optional<T> get(const toml::table& t, const char* key, const std::string& where) {
  const auto* node = t.get(key);
  if (node == nullptr) return std::nullopt;
  if constexpr (std::is_same_v<T, double>) {
    if (auto v = node->value<double>()) return *v;  // integers convert
  } else if constexpr (std::is_same_v<T, bool>) {
    if (node->is_boolean()) return node->as_boolean()->get();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (node->is_string()) return node->as_string()->get();
  } else {
    if (node->is_integer()) {
      const auto v = node->as_integer()->get();
      if (v >= 0) return static_cast<T>(v);
    }
  }
  bad("bad value for '" + std::string(key) + "' in [" + where + "]");
}

std::vector<double> get_reals(const toml::table& t, const char* key, const std::string& where,
                              std::vector<double> fallback) {
  const auto* node = t.get(key);
  if (node == nullptr) return fallback;
  const auto* arr = node->as_array();
  if (arr == nullptr) bad("'" + std::string(key) + "' in [" + where + "] must be an array");
  std::vector<double> out;
  for (const auto& item : *arr) {
    const auto v = item.value<double>();
    if (!v) bad("'" + std::string(key) + "' in [" + where + "] must hold numbers");
    out.push_back(*v);
  }
  return out;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

std::optional<int> parse_magnification(std::string_view text) {
  if (text == "all" || text == "full") return std::nullopt;
  if (!text.empty() && (text.back() == 'X' || text.back() == 'x')) text.remove_suffix(1);
  int mag = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), mag);
  if (ec != std::errc{} || p != text.data() + text.size() || !dataset::is_valid_magnification(mag)) {
    throw config_error("BadMagnification", "magnification must be 40, 100, 200, 400 or all");
  }
  return mag;
}

void PipelineConfig::finalize() {
  experiment.seed = seed;
  experiment.jobs = jobs;
  if (features.vmd.init == vmd::InitScheme::random) features.vmd.seed = seed;
  features.validate();
  experiment.validate();
  if (synthetic_spec.patients_per_class < 2 || synthetic_spec.images_per_patient < 1 ||
      synthetic_spec.image_side < 16 || !dataset::is_valid_magnification(synthetic_spec.magnification)) {
    bad("invalid [synthetic] settings");
  }
  if (!synthetic && dataset_root.empty()) bad("dataset.root is required unless dataset.synthetic = true");
}

PipelineConfig parse_config(std::string_view text, const fs::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML syntax error: " << e.description() << " at line " << e.source().begin.line;
    bad(msg.str());
  }
  check_keys(root, "", {"seed", "jobs", "cache_dir", "output_dir", "dataset", "synthetic", "vmd", "features",
                        "selection", "classifier", "experiment"});
  PipelineConfig c;
  if (auto v = get<std::uint64_t>(root, "seed", "top level")) c.seed = *v;
  if (auto v = get<std::size_t>(root, "jobs", "top level")) c.jobs = *v;
  if (auto v = get<std::string>(root, "cache_dir", "top level")) c.cache_dir = resolve(base_dir, *v);
  c.output_dir = resolve(base_dir, get<std::string>(root, "output_dir", "top level").value_or("vmdtex-out"));

  if (const auto* t = section(root, "dataset")) {
    check_keys(*t, "dataset", {"root", "synthetic", "magnification", "channel"});
    if (auto v = get<std::string>(*t, "root", "dataset")) c.dataset_root = resolve(base_dir, *v);
    if (auto v = get<bool>(*t, "synthetic", "dataset")) c.synthetic = *v;
    if (const auto* m = t->get("magnification")) {
      if (m->is_integer()) c.experiment.magnification = parse_magnification(std::to_string(m->as_integer()->get()));
      else if (m->is_string()) c.experiment.magnification = parse_magnification(m->as_string()->get());
      else bad("bad value for 'magnification' in [dataset]");
    }
    if (auto v = get<std::string>(*t, "channel", "dataset")) {
      if (*v == "green") c.features.channel = ChannelMode::green;
      else if (*v == "luminance") c.features.channel = ChannelMode::luminance;
      else bad("dataset.channel must be \"green\" or \"luminance\"");
    }
  }
  if (const auto* t = section(root, "synthetic")) {
    check_keys(*t, "synthetic", {"patients_per_class", "images_per_patient", "image_side", "magnification"});
    auto& s = c.synthetic_spec;
    if (auto v = get<std::size_t>(*t, "patients_per_class", "synthetic")) s.patients_per_class = *v;
    if (auto v = get<std::size_t>(*t, "images_per_patient", "synthetic")) s.images_per_patient = *v;
    if (auto v = get<std::size_t>(*t, "image_side", "synthetic")) s.image_side = *v;
    if (auto v = get<int>(*t, "magnification", "synthetic")) s.magnification = *v;
  }
  if (const auto* t = section(root, "vmd")) {
    check_keys(*t, "vmd", {"levels", "alpha", "tau", "epsilon", "max_iterations", "init"});
    auto& v = c.features.vmd;
    if (auto x = get<int>(*t, "levels", "vmd")) c.features.levels = *x;
    if (auto x = get<double>(*t, "alpha", "vmd")) v.alpha = *x;
    if (auto x = get<double>(*t, "tau", "vmd")) v.tau = *x;
    if (auto x = get<double>(*t, "epsilon", "vmd")) v.epsilon = *x;
    if (auto x = get<int>(*t, "max_iterations", "vmd")) v.max_iterations = *x;
    if (auto x = get<std::string>(*t, "init", "vmd")) {
      if (*x == "fixed") v.init = vmd::InitScheme::fixed;
      else if (*x == "random") v.init = vmd::InitScheme::random;
      else bad("vmd.init must be \"fixed\" or \"random\"");
    }
  }
  if (const auto* t = section(root, "features")) {
    check_keys(*t, "features", {"zernike_order", "grid_side", "renyi_order", "kapur_orders", "yager_denominator"});
    auto& f = c.features;
    if (auto x = get<int>(*t, "zernike_order", "features")) f.zernike.max_order = *x;
    if (auto x = get<std::size_t>(*t, "grid_side", "features")) f.zernike.grid_side = *x;
    if (auto x = get<double>(*t, "renyi_order", "features")) f.entropy.renyi = *x;
    const auto kapur = get_reals(*t, "kapur_orders", "features", {f.entropy.kapur_a, f.entropy.kapur_b});
    if (kapur.size() != 2) bad("features.kapur_orders must hold two numbers");
    f.entropy.kapur_a = kapur[0];
    f.entropy.kapur_b = kapur[1];
    if (auto x = get<std::string>(*t, "yager_denominator", "features")) {
      if (*x == "bins") f.entropy.yager = features::YagerDenominator::bins;
      else if (*x == "pixels") f.entropy.yager = features::YagerDenominator::pixels;
      else bad("features.yager_denominator must be \"bins\" or \"pixels\"");
    }
  }
  if (const auto* t = section(root, "selection")) {
    check_keys(*t, "selection", {"relief_k", "p_threshold", "fallback_count"});
    if (auto x = get<std::size_t>(*t, "relief_k", "selection")) c.experiment.relief_k = *x;
    if (auto x = get<double>(*t, "p_threshold", "selection")) c.experiment.significance.p_threshold = *x;
    if (auto x = get<std::size_t>(*t, "fallback_count", "selection")) c.experiment.significance.fallback_count = *x;
  }
  if (const auto* t = section(root, "classifier")) {
    check_keys(*t, "classifier", {"gammas", "sigmas", "inner_folds"});
    auto& g = c.experiment.grid;
    g.gammas = get_reals(*t, "gammas", "classifier", g.gammas);
    g.sigmas = get_reals(*t, "sigmas", "classifier", g.sigmas);
    if (auto x = get<std::size_t>(*t, "inner_folds", "classifier")) g.inner_folds = *x;
  }
  if (const auto* t = section(root, "experiment")) {
    check_keys(*t, "experiment", {"mode", "k", "repeats", "train_fraction"});
    auto& e = c.experiment;
    if (auto x = get<std::string>(*t, "mode", "experiment")) {
      if (*x == "kfold") e.protocol = evaluation::Protocol::kfold;
      else if (*x == "holdout") e.protocol = evaluation::Protocol::holdout;
      else bad("experiment.mode must be \"kfold\" or \"holdout\"");
    }
    if (auto x = get<std::size_t>(*t, "k", "experiment")) e.k = *x;
    if (auto x = get<std::size_t>(*t, "repeats", "experiment")) e.repeats = *x;
    if (auto x = get<double>(*t, "train_fraction", "experiment")) e.train_fraction = *x;
  }
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("MissingConfig", "cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

nlohmann::ordered_json PipelineConfig::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["dataset"] = {{"root", synthetic ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(dataset_root.generic_string())},
                  {"synthetic", synthetic},
                  {"magnification", evaluation::scope_name(experiment.magnification)}};
  if (synthetic) {
    j["synthetic"] = {{"patients_per_class", synthetic_spec.patients_per_class},
                      {"images_per_patient", synthetic_spec.images_per_patient},
                      {"image_side", synthetic_spec.image_side},
                      {"magnification", synthetic_spec.magnification}};
  }
  j["features"] = nlohmann::ordered_json::parse(features.fingerprint());
  const auto& e = experiment;
  j["selection"] = {{"relief_k", e.relief_k},
                    {"p_threshold", e.significance.p_threshold},
                    {"fallback_count", e.significance.fallback_count}};
  j["classifier"] = {{"gammas", e.grid.gammas}, {"sigmas", e.grid.sigmas}, {"inner_folds", e.grid.inner_folds}};
  j["experiment"] = {{"mode", e.protocol == evaluation::Protocol::kfold ? "kfold" : "holdout"},
                     {"k", e.k},
                     {"repeats", e.repeats},
                     {"train_fraction", e.train_fraction}};
  return j;
}

}  // namespace vmdtex::pipeline
