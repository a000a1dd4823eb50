#include "vmdtex/evaluation/metrics.hpp"

#include <map>

#include "vmdtex/error.hpp"

namespace vmdtex::evaluation {

using dataset::ClassLabel;

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) {
  tp += o.tp;
  fp += o.fp;
  tn += o.tn;
  fn += o.fn;
  return *this;
}

ConfusionCounts confusion(std::span<const ClassLabel> predictions, std::span<const ClassLabel> labels) {
  if (predictions.size() != labels.size()) {
    throw data_error("LengthMismatch", "predictions and labels differ in length");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool pred_pos = predictions[i] == ClassLabel::malignant;
    if (labels[i] == ClassLabel::malignant) {
      ++(pred_pos ? c.tp : c.fn);
    } else {
      ++(pred_pos ? c.fp : c.tn);
    }
  }
  return c;
}

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ImageMetrics image_metrics(const ConfusionCounts& c) {
  if (c.total() == 0) throw data_error("EmptyEvaluation", "no evaluated samples");
  return {ratio(c.tp + c.tn, c.total()), ratio(c.tp, c.tp + c.fn), ratio(c.tn, c.tn + c.fp),
          ratio(c.tp, c.tp + c.fp), ratio(c.tn, c.tn + c.fn)};
}

PatientRecognition patient_recognition_rate(std::span<const ImageResult> results,
                                            const std::set<std::string>& known_patients) {
  if (results.empty()) throw data_error("EmptyEvaluation", "no per-image results");
  std::map<std::string, PatientScore> by_patient;
  for (const auto& r : results) {
    if (!known_patients.contains(r.patient_id)) {
      throw data_error("UnknownPatient", "result for unknown patient " + r.patient_id);
    }
    auto& s = by_patient[r.patient_id];
    s.patient_id = r.patient_id;
    ++s.images;
    if (r.predicted == r.truth) ++s.recognized;
  }
  PatientRecognition out;
  double sum = 0.0;
  for (auto& [id, s] : by_patient) {
    s.score = static_cast<double>(s.recognized) / static_cast<double>(s.images);
    sum += s.score;
    out.patients.push_back(s);
  }
  out.rate = sum / static_cast<double>(out.patients.size());
  return out;
}

}  // namespace vmdtex::evaluation
