#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "etaforge/etaq.hpp"

namespace etaforge {

// The fourteen primitive holomorphic eta quotients of weight 1/2, in the
// order 1..14 used for reporting.
const std::array<ExponentVector, 14>& zagier_list();

// (1-based index, nu) with x == rescale(zagier_list()[index - 1], nu).
std::optional<std::pair<int, std::int64_t>> zagier_match(const ExponentVector& x);

}  // namespace etaforge
