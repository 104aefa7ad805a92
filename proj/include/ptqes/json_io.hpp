#pragma once

#include <string>

#include <json.hpp>

#include "ptqes/spectrum.hpp"

namespace ptqes {

/// {"checks": [{"name","residual","tolerance","pass"}], "state_class",
///  "grid": {"L","N"}, "epsilon": [re, im]}
nlohmann::json report_to_json(const VerificationReport& report);

/// {"eigenvalues": [[re, im], ...], "reality_fraction": r}
nlohmann::json spectrum_to_json(const Spectrum& s);

nlohmann::json match_to_json(const MatchResult& m);

nlohmann::json sweep_to_json(const std::vector<SweepRecord>& records);

nlohmann::json bindings_to_json(const Bindings& b);

}  // namespace ptqes
