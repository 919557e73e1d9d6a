#pragma once

#include <string>
#include <vector>

#include "levy2d/asymptotic_fit.hpp"
#include "levy2d/process_family.hpp"

namespace levy2d {

enum class VerdictValue { Recurrent, Transient, Inconclusive };

const char* to_string(VerdictValue v);

// A recorded hypothesis of the rule behind a verdict. Verdicts only claim
// Recurrent or Transient when every gate their direction needs holds; the
// informational gates (framework assumptions that are recorded, not
// verified) are marked as holding with a detail note.
struct GateCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct LabeledFit {
  std::string label;
  AsymptoticFit fit;
  IntegralDecision decision = IntegralDecision::Inconclusive;
};

struct Verdict {
  VerdictValue value = VerdictValue::Inconclusive;
  std::string criterion;  // chung_fuchs | tails | p5 | regvar
  std::vector<LabeledFit> fits;
  std::vector<GateCheck> assumptions;
  std::string note;
};

// Divergence test of int_0 rho drho / q on the symbol envelopes:
// sup-envelope divergent -> Recurrent, inf-envelope convergent ->
// Transient. Both envelope fits are attached.
Verdict classify_chung_fuchs(const ProcessFamily& f);

// Divergence test of int^inf drho / (rho * H) on the enveloped cumulative
// tail integral H. The divergent sup-side implies recurrence with no
// extra hypotheses; the convergent inf-side implies transience only under
// the monotone-tail certificate and an infinite second moment, and
// downgrades to Inconclusive when either gate fails.
Verdict classify_by_tails(const ProcessFamily& f);

// One-directional sufficient tests: recurrence from divergence of
// int^inf drho / (rho^3 sup ball + rho sup m2), or immediately from a
// finite sup second moment; transience (under the same gates as the tail
// criterion) from convergence of the inf two-term integral, either
// one-term integral, or the decreasing-density boundary integral
// int drho / (rho^5 inf n).
Verdict classify_sufficient_p5(const ProcessFamily& f);

// Trichotomy by the declared tail index: delta < -4 recurrent,
// -4 < delta <= -2 transient, delta = -4 decided by the boundary
// integral int drho / (rho^5 n) when it converges (transient) and left
// Inconclusive when it diverges, the test being one-directional.
Verdict classify_regvar(const RadialDensity& density);

struct ClassificationReport {
  VerdictValue value = VerdictValue::Inconclusive;
  bool contradiction = false;
  std::vector<Verdict> verdicts;
  std::string note;
};

// Merges verdicts: disagreement between non-Inconclusive values raises
// the contradiction flag (a numerical or modeling fault, the dichotomy
// admits no third outcome); otherwise the decided value wins, and
// Inconclusive only survives when unanimous.
ClassificationReport reconcile(const std::vector<Verdict>& verdicts);

}  // namespace levy2d
