#include <sstream>

#include "tribo/framework.hpp"
#include "tribo/io.hpp"

namespace tribo {

namespace {

bool sameWeights(const GoodnessWeights& a, const GoodnessWeights& b) {
  const auto x = a.normalized();
  const auto y = b.normalized();
  return x.corr == y.corr && x.mon == y.mon && x.rob == y.rob;
}

}  // namespace

AuditReport configAudit(const MetaParameters& meta) {
  const MetaParameters d{};
  AuditReport r;
  auto add = [&r](std::string name, std::string value, bool isDefault, std::string note = {}) {
    r.entries.push_back({std::move(name), std::move(value), isDefault, std::move(note)});
  };

  add("alarmLevelFault", formatDouble17(meta.alarmLevelFault),
      meta.alarmLevelFault == d.alarmLevelFault, "multiple of the steady-state envelope maximum");
  add("motherWavelet", meta.motherWavelet, meta.motherWavelet == d.motherWavelet);
  add("nOfDecompLevels", std::to_string(meta.nOfDecompLevels),
      meta.nOfDecompLevels == d.nOfDecompLevels);
  const auto& w = meta.degParamWeights;
  add("degParamWeights",
      formatDouble17(w.corr) + ", " + formatDouble17(w.mon) + ", " + formatDouble17(w.rob),
      sameWeights(w, d.degParamWeights), "corr, mon, rob");
  add("alarmLevelRUL", formatDouble17(meta.alarmLevelRUL), meta.alarmLevelRUL == d.alarmLevelRUL,
      "failure threshold on the degradation feature");
  if (meta.rulModelParameters) {
    const auto& m = *meta.rulModelParameters;
    add("RULmodelParameters",
        formatDouble17(m.c) + ", " + formatDouble17(m.b) + ", " + formatDouble17(m.sigma2), false,
        "c, b, sigma2");
  } else {
    add("RULmodelParameters", "", true, "derived at run time from least squares");
  }
  add("nOfSimulations", std::to_string(meta.nOfSimulations),
      meta.nOfSimulations == d.nOfSimulations);
  return r;
}

}  // namespace tribo
