#pragma once

#include "quadwalk/counting.hpp"
#include "quadwalk/harmonic.hpp"
#include "quadwalk/ladders.hpp"
#include "quadwalk/montecarlo.hpp"
#include "quadwalk/verify.hpp"
#include "quadwalk/walk_model.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace quadwalk {

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

/// theorem_id,n,measured,predicted,ratio,dp_error_bound,detail
std::string verify_csv(const std::vector<VerifyRow>& rows);
/// u,value
std::string renewal_csv(const RenewalTable& t);
/// k,probability
std::string ladder_csv(const LadderDist& ld);

nlohmann::json to_json(const Moments& m);
nlohmann::json to_json(const LatticeStructure& ls);
nlohmann::json to_json(const TiltParams& tp);
nlohmann::json to_json(const LadderDist& ld);
nlohmann::json to_json(const RenewalTable& t);
nlohmann::json to_json(const HarmonicEstimate& e);
nlohmann::json to_json(const McEstimate& e);
nlohmann::json to_json(const std::vector<VerifyRow>& rows);

/// Wraps a payload as {"schema_version": 1, "command": ..., "result": ...}.
nlohmann::json envelope(const std::string& command, nlohmann::json result);

} // namespace quadwalk
