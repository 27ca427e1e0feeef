#include "qcm/lp_factory.h"

#include <algorithm>
#include <string>

namespace qcm {
namespace {

using Tag = ConstraintTag;

std::string Name(const std::string& base, std::initializer_list<int> idx) {
  std::string out = base;
  for (int i : idx) out += "_" + std::to_string(i);
  return out;
}

// Shared state for one Ranking-family model.
class RankingBuilder {
 public:
  RankingBuilder(LpModel& model, int n) : m_(model), n_(n) {}

  int g(int i, int j) { return m_.Variable(Name("g", {i, j})); }
  int h(int k, int l) { return m_.Variable(Name("h", {k, l})); }

  // Passive gain: g(i,j) - h(j,i).
  void Passive(LinearExpr& e, int i, int j, const Rational& c) {
    e.Add(g(i, j), c).Add(h(j, i), -c);
  }
  // Remaining share after gain and compensation: 1 - g(i,j) - h(i,j).
  void Leftover(LinearExpr& e, int i, int j, const Rational& c) {
    e.AddConstant(c).Add(g(i, j), -c).Add(h(i, j), -c);
  }
  void Bound(int var, const LinearExpr& e, Tag tag) {
    m_.AddUpperBound(var, e, n_, std::move(tag));
  }
  void Le(LinearExpr e, const Rational& rhs, Tag tag) {
    m_.AddConstraint(e, Sense::kLessEqual, rhs, std::move(tag));
  }

  // Monotonicity, pinning, and the gain/compensation coupling with weight
  // `copies` on the victim compensation h(1,n).
  void Functions(int copies) {
    const int n = n_;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) g(i, j);
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l) h(k, l);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j < n; ++j)
        Le(LinearExpr().Add(g(i, j), 1).Add(g(i, j + 1), -1), 0,
           {"g_mono_second", {i, j}});
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l < n; ++l)
        Le(LinearExpr().Add(h(k, l), 1).Add(h(k, l + 1), -1), 0,
           {"h_mono_second", {k, l}});
    for (int i = 1; i < n; ++i)
      for (int j = 1; j <= n; ++j)
        Le(LinearExpr().Add(g(i + 1, j), 1).Add(g(i, j), -1), 0,
           {"g_mono_first", {i, j}});
    for (int k = 0; k < n; ++k)
      for (int l = 0; l <= n; ++l)
        Le(LinearExpr().Add(h(k + 1, l), 1).Add(h(k, l), -1), 0,
           {"h_mono_first", {k, l}});
    for (int k = 0; k <= n; ++k)
      m_.AddConstraint(LinearExpr().Add(h(k, 0), 1), Sense::kEqual, 0, {"h_zero", {k}});
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        Le(LinearExpr().Add(g(i, j), 1).Add(h(i, j), 1).Add(h(1, n), copies), 1,
           {"gain_cap", {i, j}});
        Le(LinearExpr().Add(g(i, j), -1).Add(h(j, i), 1).Add(h(1, n), copies), 0,
           {"gain_floor", {i, j}});
      }
    }
  }

  int Unmatched(int iu) { return m_.Variable(Name("G", {iu}) + "_bot_bot"); }
  int NoBackup(const std::string& prefix, int iu, int iv) {
    return m_.Variable(Name(prefix, {iu, iv}) + "_bot");
  }
  int WithBackup(const std::string& prefix, int iu, int iv, int ib) {
    return m_.Variable(Name(prefix, {iu, iv, ib}));
  }

  // u unmatched without u*: collects the passive gain from every rank.
  void UnmatchedFamily() {
    for (int iu = 1; iu <= n_; ++iu) {
      LinearExpr e;
      for (int j = 1; j <= n_; ++j) Passive(e, iu, j, 1);
      Bound(Unmatched(iu), e, {"unmatched", {iu}});
    }
  }

  // u matched to v without u*, no backup. `extra` extra compensation copies
  // (odd girth); `adjacent` adds the bounds for u* inserted just around x_u.
  void NoBackupFamily(const std::string& prefix, int extra, bool adjacent) {
    const int n = n_;
    for (int iu = 1; iu <= n; ++iu) {
      for (int iv = 1; iv <= n; ++iv) {
        const int var = NoBackup(prefix, iu, iv);
        if (iu <= iv) {
          for (int t0 = 0; t0 <= iu; ++t0) {
            LinearExpr e;
            for (int j = 1; j < iv; ++j) Passive(e, iu, j, 1);
            Passive(e, iu, iv, Rational(1, 2));
            e.Add(h(iu, t0), n - iv).Add(h(iv, iu), n - iv);
            for (int j = 1; j <= t0; ++j) e.Add(h(j, iu), 1);
            e.Add(h(iu, iv), t0);
            Leftover(e, iu, iv, n - t0);
            if (extra > 0) {
              e.Add(h(iv, t0), (n - iv) * extra).Add(h(iu, 1), t0 * extra);
            }
            Bound(var, e, {"nobackup_later", {iu, iv, t0}});
          }
        }
        if (iv <= iu) {
          for (int t0 = 0; t0 <= iu; ++t0) {
            LinearExpr e;
            for (int j = 1; j <= t0; ++j) e.Add(g(iv, j), 1);
            for (int j = t0 + 1; j < iv; ++j) Passive(e, iu, j, 1);
            const int m = n - std::max(t0, iv - 1);
            e.Add(h(iv, t0), m).Add(h(iv, iu), m);
            e.Add(h(iu, iv), t0);
            Leftover(e, iu, iv, n - t0);
            if (extra > 0) e.Add(h(iv, t0), m * extra).Add(h(iu, 1), t0 * extra);
            Bound(var, e, {"nobackup_earlier", {iu, iv, t0}});
          }
          if (adjacent) AdjacentNoBackup(var, iu, iv, "nobackup_adjacent");
        }
      }
    }
  }

  void AdjacentNoBackup(int var, int iu, int iv, const std::string& family) {
    for (int t0 : {iu - 1, iu}) {
      LinearExpr e;
      for (int j = 1; j <= t0; ++j) e.Add(g(iv, j), 1);
      e.Add(h(iv, iu), n_ - t0);
      Leftover(e, iu, iv, n_ - t0);
      Bound(var, e, {family, {iu, iv, t0}});
    }
  }

  // No-backup bounds that also account for the length-6 threshold t3 <= t0.
  void TightNoBackupFamily() {
    const int n = n_;
    for (int iu = 1; iu <= n; ++iu) {
      for (int iv = 1; iv <= n; ++iv) {
        const int var = NoBackup("GT", iu, iv);
        if (iu <= iv) {
          for (int t0 = 0; t0 <= iu; ++t0) {
            for (int t3 = 0; t3 <= t0; ++t3) {
              LinearExpr e;
              for (int j = 1; j < iv; ++j) Passive(e, iu, j, 1);
              Passive(e, iu, iv, Rational(1, 2));
              Leftover(e, iu, iv, n - t0);
              if (t3 < t0) e.Add(h(iu, t0), n - iv);
              e.Add(h(iv, iu), n - iv).Add(h(iu, t3), n - iv).Add(h(iv, t3), n - iv);
              for (int j = 1; j <= t0; ++j) e.Add(h(j, iu), 1);
              e.Add(h(std::min(t3 + 1, iu), 1), t3).Add(h(iu, iv), t3);
              if (t3 < t0) e.Add(h(std::min(t0 + 1, iu), iv), t0 - t3);
              Bound(var, e, {"tight_later", {iu, iv, t0, t3}});
            }
          }
        }
        if (iv <= iu) {
          for (int t0 = 0; t0 <= iu; ++t0) {
            for (int t3 = 0; t3 <= t0; ++t3) {
              LinearExpr e;
              for (int j = 1; j <= t0; ++j) e.Add(g(iv, j), 1);
              for (int j = t0 + 1; j < iv; ++j) Passive(e, iu, j, 1);
              Leftover(e, iu, iv, n - t0);
              const int m = n - std::max(t0, iv - 1);
              if (t3 < t0) e.Add(h(iv, t0), m);
              e.Add(h(iv, iu), m);
              e.Add(h(iv, t3), 2 * m);
              e.Add(h(std::min(t3 + 1, iu), 1), t3).Add(h(iu, iv), t3);
              if (t3 < t0) e.Add(h(std::min(t0 + 1, iu), iv), t0 - t3);
              Bound(var, e, {"tight_earlier", {iu, iv, t0, t3}});
            }
          }
          AdjacentNoBackup(var, iu, iv, "tight_adjacent");
        }
      }
    }
  }

  // u matched to v with backup b (ib >= iv).
  void BackupFamily(const std::string& prefix, int extra, bool adjacent) {
    const int n = n_;
    for (int iu = 1; iu <= n; ++iu) {
      for (int iv = 1; iv <= n; ++iv) {
        for (int ib = iv; ib <= n; ++ib) {
          const int var = WithBackup(prefix, iu, iv, ib);
          if (iu <= iv && iv < ib) {
            for (int t0 = 0; t0 <= iu; ++t0) {
              LinearExpr e;
              for (int j = 1; j < iv; ++j) Passive(e, iu, j, 1);
              Passive(e, iu, iv, Rational(1, 2));
              const int m = std::max(ib - iv - 1, 0);
              e.Add(h(iu, t0), m).Add(h(iv, iu), m);
              Leftover(e, iu, ib, t0);
              Leftover(e, iu, iv, n - t0);
              if (extra > 0) e.Add(h(iv, t0), (ib - iv - 1) * extra);
              Bound(var, e, {"backup_gap", {iu, iv, ib, t0}});
            }
          }
          if (iu <= iv && iv == ib) {
            for (int t0 = 0; t0 <= iu; ++t0) {
              LinearExpr e;
              for (int j = 1; j < iv; ++j) Passive(e, iu, j, 1);
              Leftover(e, iu, ib, t0);
              Leftover(e, iu, iv, n - t0);
              Bound(var, e, {"backup_tie", {iu, iv, ib, t0}});
            }
          }
          if (iv <= iu) {
            for (int t0 = 0; t0 <= iu; ++t0) {
              LinearExpr e;
              for (int j = 1; j <= t0; ++j) Passive(e, iv, j, 1);
              for (int j = t0 + 1; j < iv; ++j) Passive(e, iu, j, 1);
              const int m = std::max(ib - 1 - std::max(t0, iv - 1), 0);
              e.Add(h(iv, t0), m).Add(h(iv, iu), m);
              Leftover(e, iu, ib, t0);
              Leftover(e, iu, iv, n - t0);
              if (extra > 0) e.Add(h(iv, t0), m * extra);
              Bound(var, e, {"backup_earlier", {iu, iv, ib, t0}});
            }
            if (adjacent) {
              for (int t0 : {iu - 1, iu}) {
                LinearExpr e;
                for (int j = 1; j <= t0; ++j) Passive(e, iv, j, 1);
                e.Add(h(iv, iu), std::max(ib - t0 - 1, 0));
                Leftover(e, iu, ib, t0);
                Leftover(e, iu, iv, n - t0);
                Bound(var, e, {"backup_adjacent", {iu, iv, ib, t0}});
              }
            }
          }
        }
      }
    }
  }

  // Per-rank bound Gu_i: the worst of the uniformly averaged profile bounds.
  void Aggregate(const std::string& nobackup, const std::string& backup) {
    const int n = n_;
    LinearExpr objective;
    for (int iu = 1; iu <= n; ++iu) {
      const int gu = m_.Variable(Name("Gu", {iu}));
      Le(LinearExpr().Add(gu, 1).Add(Unmatched(iu), -1), 0, {"agg_unmatched", {iu}});
      for (int s = 1; s <= n; ++s) {
        LinearExpr e;
        e.Add(gu, 1);
        for (int j = s; j <= n; ++j) e.Add(NoBackup(nobackup, iu, j), Rational(-1, n + 1 - s));
        Le(e, 0, {"agg_nobackup", {iu, s}});
      }
      for (int ib = 1; ib <= n; ++ib) {
        for (int s = 1; s <= ib; ++s) {
          int which = 0;
          for (int bb : {std::min(ib + 1, n), ib}) {
            LinearExpr e;
            e.Add(gu, 1);
            for (int j = s; j <= ib; ++j) {
              e.Add(WithBackup(backup, iu, j, bb), Rational(-1, ib + 1 - s));
            }
            Le(e, 0, {"agg_backup", {iu, ib, s, which++}});
          }
        }
      }
      objective.Add(gu, Rational(1, n));
    }
    m_.SetObjective(objective);
  }

 private:
  LpModel& m_;
  int n_;
};

void RequirePositive(int n) {
  if (n < 1) throw LpParameterError("discretization size n must be >= 1");
}

}  // namespace

LpModel BuildRankingLp(int n) {
  RequirePositive(n);
  LpModel model(LpVariant::kSimple, n, 0);
  RankingBuilder b(model, n);
  b.Functions(4);
  b.UnmatchedFamily();
  b.NoBackupFamily("G", 0, true);
  b.BackupFamily("G", 0, true);
  b.Aggregate("G", "G");
  return model;
}

LpModel BuildTightenedRankingLp(int n) {
  RequirePositive(n);
  LpModel model(LpVariant::kTightened, n, 0);
  RankingBuilder b(model, n);
  b.Functions(4);
  b.UnmatchedFamily();
  b.TightNoBackupFamily();
  b.BackupFamily("G", 0, true);
  b.Aggregate("GT", "G");
  return model;
}

LpModel BuildOddGirthRankingLp(int n, int k) {
  RequirePositive(n);
  if (k < 2) throw LpParameterError("odd-girth LP requires k >= 2");
  LpModel model(LpVariant::kOddGirth, n, k);
  RankingBuilder b(model, n);
  b.Functions(k);
  b.UnmatchedFamily();
  b.NoBackupFamily("Gk", std::max(k - 2, 0), false);
  b.BackupFamily("Gk", std::max(k - 2, 0), false);
  b.Aggregate("Gk", "Gk");
  return model;
}

LpModel BuildFRankingLp(int n) {
  RequirePositive(n);
  LpModel m(LpVariant::kFRanking, n, 0);
  auto g = [&](int i) { return m.Variable(Name("g", {i})); };
  auto h = [&](int k) { return m.Variable(Name("h", {k})); };
  auto le = [&](LinearExpr e, const Rational& rhs, Tag tag) {
    m.AddConstraint(e, Sense::kLessEqual, rhs, std::move(tag));
  };
  auto bound = [&](int var, const LinearExpr& e, Tag tag) {
    m.AddUpperBound(var, e, n, std::move(tag));
  };
  auto leftover = [&](LinearExpr& e, int i, const Rational& c) {
    e.AddConstant(c).Add(g(i), -c).Add(h(i), -c);
  };
  auto gain_prefix = [&](LinearExpr& e, int upto) {
    for (int k = 1; k <= upto; ++k) e.Add(g(k), 1);
  };
  auto at_most = [&](int lhs, int rhs, Tag tag) {
    le(LinearExpr().Add(lhs, 1).Add(rhs, -1), 0, std::move(tag));
  };

  for (int i = 1; i <= n; ++i) g(i);
  for (int k = 0; k <= n; ++k) h(k);
  for (int i = 1; i < n; ++i) at_most(g(i), g(i + 1), {"g_mono", {i}});
  for (int k = 0; k < n; ++k) at_most(h(k), h(k + 1), {"h_mono", {k}});
  m.AddConstraint(LinearExpr().Add(h(0), 1), Sense::kEqual, 0, {"h_zero", {0}});
  for (int i = 1; i <= n; ++i) {
    le(LinearExpr().Add(g(i), 1).Add(h(i), 1).Add(h(n), 1), 1, {"gain_cap", {i}});
    le(LinearExpr().Add(g(i), -1).Add(h(n), 1), 0, {"gain_floor", {i}});
  }

  for (int iu = 1; iu <= n; ++iu) {
    const std::string u = std::to_string(iu);
    const int passive = m.Variable("GFP_" + u);
    const int active = m.Variable("GFA_" + u);

    // No match without u*.
    const int none = m.Variable("GF_" + u + "_bot_bot");
    {
      LinearExpr e;
      gain_prefix(e, n);
      bound(none, e, {"f_unmatched", {iu}});
    }
    // Passive match, passive backup.
    const int pp = m.Variable("GF_" + u + "_P_P");
    at_most(pp, g(iu), {"f_passive_passive", {iu}});
    // Passive match, no backup.
    const int pnone = m.Variable("GF_" + u + "_P_bot");
    for (int t0 = 0; t0 <= n; ++t0) {
      LinearExpr e;
      gain_prefix(e, t0);
      e.Add(h(t0), n - t0).Add(g(iu), n - t0);
      bound(pnone, e, {"f_passive_nobackup", {iu, t0}});
    }
    at_most(passive, pnone, {"f_agg_passive", {iu, 0}});
    at_most(passive, pp, {"f_agg_passive", {iu, 1}});
    // Passive match, active backup at rank ib.
    for (int ib = 1; ib <= n; ++ib) {
      const int pa = m.Variable("GF_" + u + "_P_A" + std::to_string(ib));
      for (int t0 = 0; t0 <= n; ++t0) {
        LinearExpr e;
        gain_prefix(e, t0);
        e.Add(h(t0), std::max(ib - t0 - 1, 0));
        leftover(e, ib, t0);
        e.Add(g(iu), n - t0);
        bound(pa, e, {"f_passive_active", {iu, ib, t0}});
      }
      at_most(passive, pa, {"f_agg_passive", {iu, 1 + ib}});
    }
    at_most(active, none, {"f_agg_active_unmatched", {iu}});

    // Active match at rank iv, no backup.
    auto active_none = [&](int iv) {
      return m.Variable("GF_" + u + "_A" + std::to_string(iv) + "_bot");
    };
    for (int iv = 1; iv <= n; ++iv) {
      const int var = active_none(iv);
      for (int t1 = iv; t1 <= n; ++t1) {
        for (int t0 = 0; t0 < t1; ++t0) {
          for (int c = 1; c <= 4; ++c) {
            LinearExpr e;
            const int top = c <= 2 ? t1 : t1 - 1;
            gain_prefix(e, top);
            e.Add(h(t0), n - top).Add(h(iv), t0);
            if (c == 1 || c == 3) {
              e.Add(g(iu), top - t0);
              leftover(e, iv, n - top);
            } else {
              leftover(e, iv, n - t0);
            }
            bound(var, e, {"f_active_nobackup", {iu, iv, t1, t0, c}});
          }
        }
        const int t0 = t1;
        for (int c = 1; c <= 2; ++c) {
          LinearExpr e;
          gain_prefix(e, t1);
          e.Add(h(t0), n - t1).Add(h(iv), t0);
          if (c == 1) {
            e.Add(g(iu), t1 - t0);
            leftover(e, iv, n - t1);
          } else {
            leftover(e, iv, n - t0);
          }
          bound(var, e, {"f_active_nobackup_eq", {iu, iv, t1, c}});
        }
      }
    }

    // Active match at rank iv, active backup at rank ib >= iv.
    auto active_active = [&](int iv, int ib) {
      return m.Variable("GF_" + u + "_A" + std::to_string(iv) + "_A" + std::to_string(ib));
    };
    for (int iv = 1; iv <= n; ++iv) {
      for (int ib = iv; ib <= n; ++ib) {
        const int var = active_active(iv, ib);
        for (int t1 = iv; t1 <= n; ++t1) {
          for (int t0 = 0; t0 <= t1; ++t0) {
            const int cases = t0 < t1 ? 6 : 3;
            for (int c = 1; c <= cases; ++c) {
              LinearExpr e;
              const int top = c <= 3 ? t1 : t1 - 1;
              gain_prefix(e, top);
              e.Add(h(t0), c <= 3 ? std::max(ib - t1 - 1, 0) : std::max(ib - t1, 0));
              const int mid = top - t0;
              if (c == 1 || c == 4) {
                leftover(e, ib, t0);
                leftover(e, iv, mid);
              } else if (c == 2 || c == 5) {
                leftover(e, ib, t0);
                e.Add(g(iu), mid);
              } else {
                e.Add(g(iu), t0 + mid);
              }
              leftover(e, iv, n - top);
              bound(var, e, {"f_active_active", {iu, iv, ib, t1, t0, c}});
            }
          }
        }
      }
    }

    for (int s = 1; s <= n; ++s) {
      LinearExpr e;
      e.Add(active, 1);
      for (int iv = s; iv <= n; ++iv) e.Add(active_none(iv), Rational(-1, n + 1 - s));
      le(e, 0, {"f_agg_active_nobackup", {iu, s}});
    }
    for (int ib = 1; ib <= n; ++ib) {
      for (int s = 1; s <= ib; ++s) {
        int which = 0;
        for (int bb : {ib, std::min(ib + 1, n)}) {
          LinearExpr e;
          e.Add(active, 1);
          for (int iv = s; iv <= ib; ++iv) e.Add(active_active(iv, bb), Rational(-1, ib + 1 - s));
          le(e, 0, {"f_agg_active_backup", {iu, ib, s, which++}});
        }
      }
    }
  }

  const int w = m.Variable("W");
  for (int t = 0; t <= n; ++t) {
    LinearExpr e;
    e.Add(w, 1);
    for (int iu = 1; iu <= t; ++iu) e.Add(m.Find("GFP_" + std::to_string(iu)), Rational(-1, n));
    for (int iu = t + 1; iu <= n; ++iu) {
      e.Add(m.Find("GFA_" + std::to_string(iu)), Rational(-1, n));
    }
    le(e, 0, {"objective_split", {t}});
  }
  m.SetObjective(LinearExpr().Add(w, 1));
  return m;
}

LpModel BuildModel(LpVariant variant, int n, int k) {
  switch (variant) {
    case LpVariant::kSimple: return BuildRankingLp(n);
    case LpVariant::kTightened: return BuildTightenedRankingLp(n);
    case LpVariant::kOddGirth: return BuildOddGirthRankingLp(n, k);
    case LpVariant::kFRanking: return BuildFRankingLp(n);
    case LpVariant::kGeneric: break;
  }
  throw LpParameterError("no builder for this variant");
}

}  // namespace qcm
