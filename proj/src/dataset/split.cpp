#include "vmdtex/dataset/split.hpp"

#include <algorithm>
#include <cmath>

#include "vmdtex/error.hpp"
#include "vmdtex/util/random.hpp"

namespace vmdtex::dataset {

SplitPlan patient_split(const Manifest& manifest, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw config_error("BadFraction", "train_fraction must lie in (0, 1)");
  }
  std::vector<std::string> patients;
  for (const auto& [id, label] : manifest.patients()) patients.push_back(id);

  const auto total = patients.size();
  const auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(total) + 0.5));
  if (n_train == 0 || n_train >= total) {
    throw data_error("TooFewPatients", "split of " + std::to_string(total) +
                                           " patients leaves one side empty");
  }

  util::Rng rng(seed);
  rng.shuffle(patients);

  SplitPlan plan;
  plan.seed = seed;
  plan.train_patients.assign(patients.begin(), patients.begin() + static_cast<std::ptrdiff_t>(n_train));
  plan.test_patients.assign(patients.begin() + static_cast<std::ptrdiff_t>(n_train), patients.end());
  std::ranges::sort(plan.train_patients);
  std::ranges::sort(plan.test_patients);
  return plan;
}

std::vector<std::vector<std::string>> patient_folds(const Manifest& manifest, std::size_t k,
                                                    std::uint64_t seed) {
  const auto total = manifest.patients().size();
  if (k < 2 || k > total) {
    throw config_error("BadK", "fold count " + std::to_string(k) + " invalid for " +
                                   std::to_string(total) + " patients");
  }
  std::vector<std::string> benign, malignant;
  for (const auto& [id, label] : manifest.patients())
    (label == ClassLabel::benign ? benign : malignant).push_back(id);

  util::Rng rng(seed);
  rng.shuffle(benign);
  rng.shuffle(malignant);

  std::vector<std::vector<std::string>> folds(k);
  std::size_t position = 0;
  for (const auto* group : {&benign, &malignant})
    for (const auto& id : *group) folds[position++ % k].push_back(id);
  for (auto& fold : folds) std::ranges::sort(fold);
  return folds;
}

}  // namespace vmdtex::dataset
