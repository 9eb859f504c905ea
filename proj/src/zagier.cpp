#include "etaforge/zagier.hpp"

namespace etaforge {

const std::array<ExponentVector, 14>& zagier_list() {
  static const std::array<ExponentVector, 14> list{
      ExponentVector{{1, 1}},
      ExponentVector{{1, 2}, {2, -1}},
      ExponentVector{{1, -1}, {2, 2}},
      ExponentVector{{1, -1}, {2, 3}, {4, -1}},
      ExponentVector{{1, -2}, {2, 5}, {4, -2}},
      ExponentVector{{1, 1}, {2, -1}, {4, 1}},
      ExponentVector{{1, 1}, {2, -1}, {3, -1}, {6, 2}},
      ExponentVector{{1, 2}, {2, -1}, {3, -1}, {6, 1}},
      ExponentVector{{1, -1}, {2, 2}, {3, 1}, {6, -1}},
      ExponentVector{{1, -1}, {2, 1}, {3, 2}, {6, -1}},
      ExponentVector{{1, -1}, {2, 2}, {3, 1}, {4, -1}, {6, -1}, {12, 1}},
      ExponentVector{{1, -2}, {2, 5}, {3, 1}, {4, -2}, {6, -2}, {12, 1}},
      ExponentVector{{1, 1}, {2, -1}, {3, -1}, {4, 1}, {6, 2}, {12, -1}},
      ExponentVector{{1, 1}, {2, -2}, {3, -2}, {4, 1}, {6, 5}, {12, -2}},
  };
  return list;
}

std::optional<std::pair<int, std::int64_t>> zagier_match(const ExponentVector& x) {
  if (x.empty()) return std::nullopt;
  const std::int64_t nu = content(x);
  const ExponentVector p = primitive_part(x);
  const auto& list = zagier_list();
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i] == p) return std::make_pair(static_cast<int>(i + 1), nu);
  return std::nullopt;
}

}  // namespace etaforge
