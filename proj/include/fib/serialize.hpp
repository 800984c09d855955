#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "fib/approx.hpp"
#include "fib/braid.hpp"
#include "fib/exact.hpp"

namespace fib {

/// JSON view of a compile result; distance is a decimal string so precision
/// survives the round trip.
inline std::string to_json(const CompileResult& res, const std::string& target,
                           const std::string& epsilon, std::uint64_t seed,
                           long elapsed_ms = 0) {
    nlohmann::json j;
    j["target"] = target;
    j["epsilon"] = epsilon;
    j["seed"] = seed;
    j["braid"] = format_braid(res.braid);
    j["ft"] = format_ft(res.ft);
    j["sigma_count"] = res.sigma_gate_count;
    j["distance"] = res.achieved_distance.str(20);
    j["trials"] = res.trials;
    j["elapsed_ms"] = elapsed_ms;
    return j.dump(2);
}

}  // namespace fib
