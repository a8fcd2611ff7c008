// Randomized property corpus: one runner per acceptance criterion.
#pragma once

#include "psch/io.hpp"

#include <cstdint>

namespace psch {

struct CorpusScale {
  int identity_instances = 200;
  int sandwich_instances = 200;
  int contraction_trials = 1000;
  int cutoff_trials = 500;
  int capacity_instances = 100;
  int equivalence_instances = 100;
  int mazya_instances = 50;
  int gradient_trials = 1000;
  int criticalize_instances = 50;

  static CorpusScale full() { return {}; }
  static CorpusScale reduced();
};

struct CriterionOutcome {
  int id = 0;
  std::string name;
  bool passed = true;
  std::string summary;
  Json details = Json::object();
};

CriterionOutcome criterion_gst_identity(std::uint64_t seed, const CorpusScale& scale);
CriterionOutcome criterion_sandwich(std::uint64_t seed, const CorpusScale& scale);
CriterionOutcome criterion_contraction(std::uint64_t seed, const CorpusScale& scale);
CriterionOutcome criterion_cutoff(std::uint64_t seed, const CorpusScale& scale);
CriterionOutcome criterion_capacity_oracle(std::uint64_t seed, const CorpusScale& scale);
CriterionOutcome criterion_capacity_equivalence(std::uint64_t seed, const CorpusScale& scale);
CriterionOutcome criterion_mazya(std::uint64_t seed, const CorpusScale& scale);
CriterionOutcome criterion_hardy(std::uint64_t seed, const CorpusScale& scale);
CriterionOutcome criterion_criticality(std::uint64_t seed, const CorpusScale& scale);
CriterionOutcome criterion_kp(std::uint64_t seed, const CorpusScale& scale);
CriterionOutcome criterion_cheeger(std::uint64_t seed, const CorpusScale& scale);
CriterionOutcome criterion_fractional(std::uint64_t seed, const CorpusScale& scale);

/// Criteria 1 to 12 in order.
std::vector<CriterionOutcome> run_criteria(std::uint64_t seed, const CorpusScale& scale);

/// Corpus report: one assertion per criterion.
Report corpus_report(std::uint64_t seed, const CorpusScale& scale);

}  // namespace psch
