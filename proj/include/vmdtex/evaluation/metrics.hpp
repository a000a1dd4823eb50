#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "vmdtex/dataset/sample.hpp"

namespace vmdtex::evaluation {

/// Malignant is the positive class.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o);
  bool operator==(const ConfusionCounts&) const = default;
};

/// Throws Error{data, "LengthMismatch"}.
ConfusionCounts confusion(std::span<const dataset::ClassLabel> predictions,
                          std::span<const dataset::ClassLabel> labels);

/// Ratios with a zero denominator are empty rather than 0 or NaN.
struct ImageMetrics {
  std::optional<double> accuracy;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::optional<double> ppv;
  std::optional<double> npv;
};

/// Throws Error{data, "EmptyEvaluation"} when counts are all zero.
ImageMetrics image_metrics(const ConfusionCounts& counts);

struct ImageResult {
  std::string patient_id;
  dataset::ClassLabel predicted = dataset::ClassLabel::benign;
  dataset::ClassLabel truth = dataset::ClassLabel::benign;
};

struct PatientScore {
  std::string patient_id;
  std::size_t images = 0;      // N_p
  std::size_t recognized = 0;  // N_rec
  double score = 0.0;          // N_rec / N_p
};

struct PatientRecognition {
  double rate = 0.0;  // unweighted mean of per-patient scores
  std::vector<PatientScore> patients;  // sorted by id
};

/// Throws Error{data, "UnknownPatient"} for ids outside `known_patients`
/// and Error{data, "EmptyEvaluation"} for no results.
PatientRecognition patient_recognition_rate(std::span<const ImageResult> results,
                                            const std::set<std::string>& known_patients);

}  // namespace vmdtex::evaluation
