#include "vmdtex/evaluation/feature_cache.hpp"

#include <nlohmann/json.hpp>

#include "vmdtex/error.hpp"
#include "vmdtex/util/atomic_file.hpp"
#include "vmdtex/util/hash.hpp"
#include "vmdtex/util/parallel.hpp"
#include "vmdtex/vmd/tree.hpp"

namespace vmdtex::evaluation {

namespace fs = std::filesystem;

void FeatureSettings::validate() const {
  vmd.validate();
  if (vmd.modes != 2) throw config_error("BadParams", "the decomposition tree needs vmd.modes = 2");
  if (levels < 1) throw config_error("BadParams", "levels must be >= 1");
  zernike.validate();
  entropy.validate();
}

std::string FeatureSettings::fingerprint() const {
  nlohmann::ordered_json j;
  j["vmd"] = {{"modes", vmd.modes},
              {"alpha", vmd.alpha},
              {"tau", vmd.tau},
              {"epsilon", vmd.epsilon},
              {"max_iterations", vmd.max_iterations},
              {"init", vmd.init == vmd::InitScheme::fixed ? "fixed" : "random"},
              {"seed", vmd.seed}};
  j["levels"] = levels;
  j["zernike"] = {{"max_order", zernike.max_order}, {"grid_side", zernike.grid_side}};
  j["entropy"] = {{"renyi", entropy.renyi},
                  {"kapur_a", entropy.kapur_a},
                  {"kapur_b", entropy.kapur_b},
                  {"yager", entropy.yager == features::YagerDenominator::bins ? "bins" : "pixels"}};
  j["channel"] = channel == ChannelMode::green ? "green" : "luminance";
  return j.dump();
}

FeatureCache::FeatureCache(fs::path directory, const FeatureSettings& settings)
    : directory_(std::move(directory)), fingerprint_(settings.fingerprint()) {}

std::string FeatureCache::key(const std::string& content_hash) const {
  return util::sha256_hex(content_hash + '\n' + fingerprint_);
}

fs::path FeatureCache::entry_path(const std::string& k) const {
  return directory_ / k.substr(0, 2) / (k + ".json");
}

std::optional<std::vector<double>> FeatureCache::load(const std::string& content_hash) const {
  if (!enabled()) return std::nullopt;
  const fs::path p = entry_path(key(content_hash));
  std::error_code ec;
  if (!fs::exists(p, ec)) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(util::read_file(p));
    if (j.at("fingerprint").get<std::string>() != fingerprint_) return std::nullopt;
    return j.at("values").get<std::vector<double>>();
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entry: recompute and overwrite
  }
}

void FeatureCache::store(const std::string& content_hash, const std::vector<double>& values) const {
  if (!enabled()) return;
  nlohmann::ordered_json j;
  j["content_sha256"] = content_hash;
  j["fingerprint"] = fingerprint_;
  j["values"] = values;
  util::write_file_atomic(entry_path(key(content_hash)), j.dump());
}

std::vector<double> compute_features(const fs::path& image, const FeatureSettings& settings,
                                     const features::FeatureExtractor& extractor) {
  const auto gray = load_green_channel(image, settings.channel);
  const auto tree = vmd::iterative_vmd(gray, settings.levels, settings.vmd);
  return extractor(tree).values;
}

features::FeatureTable featurize(const dataset::Manifest& manifest, const FeatureSettings& settings,
                                 const FeatureCache* cache, std::size_t jobs) {
  settings.validate();
  const features::FeatureExtractor extractor(settings.zernike, settings.entropy,
                                             static_cast<std::size_t>(settings.levels));
  features::FeatureTable table;
  table.names = extractor.names();
  const auto& samples = manifest.samples();
  table.rows.resize(samples.size());
  util::parallel_for(samples.size(), util::resolve_jobs(jobs), [&](std::size_t i) {
    const auto& s = samples[i];
    auto& row = table.rows[i];
    row.sample_id = s.sample_id();
    row.patient_id = s.patient_id;
    row.magnification = s.magnification;
    row.label = s.class_label;
    std::string hash;
    if (cache != nullptr && cache->enabled()) {
      hash = util::sha256_file(s.path);
      if (auto hit = cache->load(hash); hit && hit->size() == table.names.size()) {
        row.values = std::move(*hit);
        return;
      }
    }
    try {
      row.values = compute_features(s.path, settings, extractor);
    } catch (const Error& e) {
      throw Error(e.category(), e.kind(), s.path.string() + ": " + e.what());
    }
    if (!hash.empty()) cache->store(hash, row.values);
  });
  return table;
}

}  // namespace vmdtex::evaluation
