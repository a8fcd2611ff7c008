// One PASS/FAIL line per acceptance criterion, at full corpus size.
#include "psch/corpus.hpp"

#include <chrono>
#include <cstdio>
#include <iterator>

using namespace psch;

namespace {

constexpr std::uint64_t kSeed = 42;

void print(const CriterionOutcome& c, double seconds) {
  std::printf("%s criterion %2d %-28s %s [%.1fs]\n", c.passed ? "PASS" : "FAIL", c.id, c.name.c_str(),
              c.summary.c_str(), seconds);
  std::fflush(stdout);
}

}  // namespace

int main() {
  using Runner = CriterionOutcome (*)(std::uint64_t, const CorpusScale&);
  const Runner runners[] = {criterion_gst_identity, criterion_sandwich,        criterion_contraction,
                            criterion_cutoff,       criterion_capacity_oracle, criterion_capacity_equivalence,
                            criterion_mazya,        criterion_hardy,           criterion_criticality,
                            criterion_kp,           criterion_cheeger,         criterion_fractional};
  const CorpusScale full = CorpusScale::full();
  int failed = 0;
  for (std::size_t i = 0; i < std::size(runners); ++i) {
    const Runner r = runners[i];
    const auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome c;
    try {
      c = r(kSeed, full);
    } catch (const std::exception& e) {
      c.passed = false;
      c.summary = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.id == 0) c.id = static_cast<int>(i) + 1;
    print(c, dt);
    if (!c.passed) ++failed;
  }

  const auto t0 = std::chrono::steady_clock::now();
  CriterionOutcome det{13, "determinism", true, "", Json::object()};
  try {
    const std::string a = dump_json(corpus_report(kSeed, full).to_json());
    const std::string b = dump_json(corpus_report(kSeed, full).to_json());
    det.passed = a == b;
    det.summary = det.passed ? "two corpus runs byte-identical (" + std::to_string(a.size()) + " bytes)"
                             : "corpus runs differ";
  } catch (const std::exception& e) {
    det.passed = false;
    det.summary = std::string("exception: ") + e.what();
  }
  print(det, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  if (!det.passed) ++failed;
  return failed == 0 ? 0 : 1;
}
