#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vmdtex/dataset/manifest.hpp"

namespace vmdtex::dataset {

/// Patient-level train/test partition. Sets are sorted and disjoint.
struct SplitPlan {
  std::vector<std::string> train_patients;
  std::vector<std::string> test_patients;
  std::uint64_t seed = 0;

  bool operator==(const SplitPlan&) const = default;
};

/// Shuffles the patient list with `seed` and assigns the first
/// floor(train_fraction * P + 0.5) patients to training.
/// Throws Error{config, "BadFraction"} or Error{data, "TooFewPatients"}.
SplitPlan patient_split(const Manifest& manifest, double train_fraction, std::uint64_t seed);

/// k disjoint patient sets whose sizes differ by at most one. Patients are
/// shuffled within each class and dealt round-robin, so folds are class-balanced.
/// Throws Error{config, "BadK"} unless 2 <= k <= patient count.
std::vector<std::vector<std::string>> patient_folds(const Manifest& manifest, std::size_t k,
                                                    std::uint64_t seed);

}  // namespace vmdtex::dataset
