#include "qcm/golden.h"

namespace qcm {

const std::vector<GoldenEntry>& GoldenTable() {
  static const std::vector<GoldenEntry> table = [] {
    std::vector<GoldenEntry> t;
    const std::pair<int, double> tightened[] = {
        {1, 0.39999},  {2, 0.48263},  {3, 0.51391},  {4, 0.52480},  {5, 0.53247},
        {6, 0.53783},  {7, 0.54140},  {8, 0.54429},  {9, 0.54639},  {10, 0.54804},
        {11, 0.54947}, {12, 0.55060}, {13, 0.55152}, {14, 0.55229}, {15, 0.55297},
        {16, 0.55356}, {17, 0.55406}, {18, 0.55450}, {19, 0.55490}, {20, 0.55526},
        {25, 0.55657}, {30, 0.55741}, {35, 0.55801}, {40, 0.55846}, {50, 0.55909},
        {60, 0.55950}, {70, 0.55979}, {80, 0.56001}};
    for (auto [n, v] : tightened) t.push_back({LpVariant::kTightened, n, 0, v});
    const std::pair<int, double> franking[] = {
        {1, 0.5},      {2, 0.5},      {3, 0.50555},  {4, 0.51153},  {5, 0.51793},
        {6, 0.52125},  {7, 0.52338},  {8, 0.52600},  {9, 0.52767},  {10, 0.52880},
        {12, 0.53102}, {14, 0.53248}, {16, 0.53372}, {18, 0.53448}, {20, 0.53524},
        {25, 0.53654}, {30, 0.53745}, {35, 0.53813}, {40, 0.53861}, {45, 0.53900}};
    for (auto [n, v] : franking) t.push_back({LpVariant::kFRanking, n, 0, v});
    // Odd girth at least 2k+1, all at n = 80.
    const std::pair<int, double> odd_girth[] = {
        {2, 0.56288}, {3, 0.57023}, {4, 0.57911},  {5, 0.58587},  {6, 0.59071},
        {8, 0.59697}, {16, 0.60693}, {32, 0.61231}, {64, 0.61514}};
    for (auto [k, v] : odd_girth) t.push_back({LpVariant::kOddGirth, 80, k, v});
    return t;
  }();
  return table;
}

std::optional<double> GoldenValue(LpVariant variant, int n, int k) {
  for (const auto& e : GoldenTable()) {
    if (e.variant == variant && e.n == n && e.k == k) return e.value;
  }
  return std::nullopt;
}

}  // namespace qcm
