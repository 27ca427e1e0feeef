#include "qcm/query_list.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcm {
namespace {

std::vector<int> PositionsOf(const std::vector<int>& order) {
  std::vector<int> pos(order.size());
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  return pos;
}

void RequirePermutation(const std::vector<int>& order, int n, const char* what) {
  if (!IsPermutation(order, n)) {
    throw std::invalid_argument(std::string(what) + " is not a permutation of " +
                                std::to_string(n) + " vertices");
  }
}

std::string JoinInts(const std::vector<int>& values) {
  std::ostringstream out;
  for (size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << values[i];
  return out.str();
}

}  // namespace

bool IsPermutation(const std::vector<int>& order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

RankVector::RankVector(std::vector<double> ranks) : ranks_(std::move(ranks)) {
  for (double r : ranks_) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("rank outside (0,1]");
  }
  std::vector<double> sorted = ranks_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("ranks are not distinct");
  }
}

std::vector<int> RankVector::Order() const {
  std::vector<int> order(ranks_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [this](int a, int b) { return ranks_[a] < ranks_[b]; });
  return order;
}

RankVector RankVector::WithRank(int v, double x) const {
  std::vector<double> ranks = ranks_;
  ranks[v] = x;
  return RankVector(std::move(ranks));
}

RankVector SampleRankVector(int n, Rng& rng) {
  std::vector<double> ranks(n);
  std::set<double> used;
  for (int v = 0; v < n; ++v) {
    double r = rng.UniformOpenClosed();
    while (used.count(r)) r = rng.UniformOpenClosed();
    used.insert(r);
    ranks[v] = r;
  }
  return RankVector(std::move(ranks));
}

RankVector RanksFromOrder(const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  std::vector<double> ranks(n);
  for (int i = 0; i < n; ++i) ranks[order[i]] = static_cast<double>(i + 1) / (n + 1);
  return RankVector(std::move(ranks));
}

QueryList QueryList::CommonPreference(std::vector<int> decision_order,
                                      std::vector<int> preference) {
  const int n = static_cast<int>(decision_order.size());
  RequirePermutation(decision_order, n, "decision order");
  RequirePermutation(preference, n, "preference order");
  QueryList list;
  list.form_ = Form::kVertexIterative;
  list.n_ = n;
  list.decision_pos_ = PositionsOf(decision_order);
  list.decision_order_ = std::move(decision_order);
  list.common_ = true;
  list.common_pref_pos_ = PositionsOf(preference);
  list.excluded_.assign(n, false);
  return list;
}

QueryList QueryList::PerVertexPreference(std::vector<int> decision_order,
                                         std::vector<std::vector<int>> preferences) {
  const int n = static_cast<int>(decision_order.size());
  RequirePermutation(decision_order, n, "decision order");
  if (static_cast<int>(preferences.size()) != n) {
    throw std::invalid_argument("need one preference order per vertex");
  }
  QueryList list;
  list.form_ = Form::kVertexIterative;
  list.n_ = n;
  list.decision_pos_ = PositionsOf(decision_order);
  list.decision_order_ = std::move(decision_order);
  list.common_ = false;
  for (const auto& pref : preferences) {
    RequirePermutation(pref, n, "preference order");
    list.pref_pos_.push_back(PositionsOf(pref));
  }
  list.excluded_.assign(n, false);
  return list;
}

QueryList QueryList::Explicit(int n, const std::vector<std::pair<int, int>>& ordered_pairs) {
  QueryList list;
  list.form_ = Form::kExplicit;
  list.n_ = n;
  list.explicit_pos_.assign(static_cast<size_t>(n) * n, -1);
  if (static_cast<int64_t>(ordered_pairs.size()) != list.size()) {
    throw std::invalid_argument("explicit list must order all ordered pairs");
  }
  for (size_t i = 0; i < ordered_pairs.size(); ++i) {
    const auto [u, v] = ordered_pairs[i];
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw std::invalid_argument("invalid ordered pair in explicit list");
    }
    int64_t& slot = list.explicit_pos_[u * n + v];
    if (slot != -1) throw std::invalid_argument("ordered pair repeated in list");
    slot = static_cast<int64_t>(i);
  }
  list.excluded_.assign(n, false);
  return list;
}

int QueryList::PreferencePosition(int u, int v) const {
  return common_ ? common_pref_pos_[v] : pref_pos_[u][v];
}

int64_t QueryList::Position(int u, int v) const {
  if (form_ == Form::kExplicit) return explicit_pos_[u * n_ + v];
  // Within u's block, v's index among the n-1 vertices other than u.
  const int pv = PreferencePosition(u, v);
  const int pu = PreferencePosition(u, u);
  const int index = pv - (pu < pv ? 1 : 0);
  return static_cast<int64_t>(decision_pos_[u]) * (n_ - 1) + index;
}

int64_t QueryList::PairTime(int u, int v) const {
  return std::min(Position(u, v), Position(v, u));
}

QueryList QueryList::Exclude(const std::vector<int>& vertices) const {
  QueryList copy = *this;
  for (int v : vertices) {
    if (v < 0 || v >= n_) throw std::invalid_argument("excluded vertex out of range");
    copy.excluded_[v] = true;
  }
  return copy;
}

std::vector<std::pair<int, int>> QueryList::Materialize() const {
  std::vector<std::pair<int, int>> pairs(size());
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      if (u != v) pairs[Position(u, v)] = {u, v};
    }
  }
  return pairs;
}

std::string QueryList::ToSpecText() const {
  std::ostringstream out;
  if (form_ == Form::kVertexIterative) {
    out << "list vi " << n_ << '\n';
    out << "decision " << JoinInts(decision_order_) << '\n';
    auto order_of = [this](const std::vector<int>& pos) {
      std::vector<int> order(n_);
      for (int v = 0; v < n_; ++v) order[pos[v]] = v;
      return order;
    };
    if (common_) {
      out << "pref common " << JoinInts(order_of(common_pref_pos_)) << '\n';
    } else {
      for (int u = 0; u < n_; ++u) {
        out << "pref " << u << ' ' << JoinInts(order_of(pref_pos_[u])) << '\n';
      }
    }
  } else {
    out << "list explicit " << n_ << '\n' << "pairs";
    for (const auto& [u, v] : Materialize()) out << ' ' << u << ' ' << v;
    out << '\n';
  }
  std::vector<int> excluded;
  for (int v = 0; v < n_; ++v) {
    if (excluded_[v]) excluded.push_back(v);
  }
  if (!excluded.empty()) out << "exclude " << JoinInts(excluded) << '\n';
  return out.str();
}

QueryList QueryList::FromSpecText(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string form;
  int n = -1;
  std::vector<int> decision;
  std::vector<int> common;
  std::vector<std::vector<int>> per_vertex;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> excluded;
  auto read_ints = [](std::istringstream& fields) {
    std::vector<int> values;
    int x;
    while (fields >> x) values.push_back(x);
    return values;
  };
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag[0] == '#') continue;
    if (tag == "list") {
      fields >> form >> n;
      per_vertex.assign(std::max(n, 0), {});
    } else if (tag == "decision") {
      decision = read_ints(fields);
    } else if (tag == "pref") {
      std::string which;
      fields >> which;
      if (which == "common") {
        common = read_ints(fields);
      } else {
        const int u = std::stoi(which);
        if (u < 0 || u >= n) throw std::invalid_argument("bad preference owner");
        per_vertex[u] = read_ints(fields);
      }
    } else if (tag == "pairs") {
      std::vector<int> flat = read_ints(fields);
      for (size_t i = 0; i + 1 < flat.size(); i += 2) pairs.emplace_back(flat[i], flat[i + 1]);
    } else if (tag == "exclude") {
      excluded = read_ints(fields);
    } else {
      throw std::invalid_argument("unknown list spec record '" + tag + "'");
    }
  }
  QueryList list;
  if (form == "vi") {
    list = common.empty() ? PerVertexPreference(decision, per_vertex)
                          : CommonPreference(decision, common);
  } else if (form == "explicit") {
    list = Explicit(n, pairs);
  } else {
    throw std::invalid_argument("list spec lacks a 'list' header");
  }
  return list.Exclude(excluded);
}

QueryList RankingList(const RankVector& x) {
  std::vector<int> order = x.Order();
  return QueryList::CommonPreference(order, order);
}

QueryList FRankingList(const std::vector<int>& decision_order, const RankVector& x) {
  return QueryList::CommonPreference(decision_order, x.Order());
}

const char* AlgorithmKindName(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kGreedy: return "greedy";
    case AlgorithmKind::kIrp: return "irp";
    case AlgorithmKind::kRdo: return "rdo";
    case AlgorithmKind::kMrg: return "mrg";
    case AlgorithmKind::kUur: return "uur";
    case AlgorithmKind::kRanking: return "ranking";
    case AlgorithmKind::kFRanking: return "franking";
  }
  return "?";
}

std::optional<AlgorithmKind> ParseAlgorithmKind(const std::string& name) {
  for (AlgorithmKind kind :
       {AlgorithmKind::kGreedy, AlgorithmKind::kIrp, AlgorithmKind::kRdo,
        AlgorithmKind::kMrg, AlgorithmKind::kUur, AlgorithmKind::kRanking,
        AlgorithmKind::kFRanking}) {
    if (name == AlgorithmKindName(kind)) return kind;
  }
  return std::nullopt;
}

bool NeedsAdversarialOrder(AlgorithmKind kind) {
  return kind == AlgorithmKind::kGreedy || kind == AlgorithmKind::kIrp ||
         kind == AlgorithmKind::kFRanking;
}

QueryList BuildAlgorithmList(AlgorithmKind kind, const Graph& g,
                             const std::optional<std::vector<int>>& adversarial_order,
                             uint64_t seed) {
  const int n = g.vertex_count();
  if (NeedsAdversarialOrder(kind)) {
    if (!adversarial_order.has_value()) {
      throw std::invalid_argument(std::string(AlgorithmKindName(kind)) +
                                  " needs an adversarial decision order");
    }
    RequirePermutation(*adversarial_order, n, "adversarial order");
  }
  Rng rng(seed);
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  auto independent_prefs = [&]() {
    std::vector<std::vector<int>> prefs;
    for (int v = 0; v < n; ++v) prefs.push_back(RandomPermutation(n, rng));
    return prefs;
  };
  switch (kind) {
    case AlgorithmKind::kGreedy:
      return QueryList::CommonPreference(*adversarial_order, *adversarial_order);
    case AlgorithmKind::kIrp:
      return QueryList::PerVertexPreference(*adversarial_order, independent_prefs());
    case AlgorithmKind::kRdo:
      return QueryList::CommonPreference(RandomPermutation(n, rng), identity);
    case AlgorithmKind::kMrg: {
      std::vector<int> pi = RandomPermutation(n, rng);
      return QueryList::PerVertexPreference(std::move(pi), independent_prefs());
    }
    case AlgorithmKind::kUur: {
      std::vector<int> pi = RandomPermutation(n, rng);
      std::vector<int> sigma = RandomPermutation(n, rng);
      return QueryList::CommonPreference(std::move(pi), std::move(sigma));
    }
    case AlgorithmKind::kRanking:
      return RankingList(SampleRankVector(n, rng));
    case AlgorithmKind::kFRanking:
      return FRankingList(*adversarial_order, SampleRankVector(n, rng));
  }
  throw std::invalid_argument("unknown algorithm kind");
}

}  // namespace qcm
