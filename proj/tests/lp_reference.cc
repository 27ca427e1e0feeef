#include "lp_reference.h"

#include <algorithm>
#include <functional>
#include <sstream>

namespace reference {
namespace {

using qcm::Rational;
using Idx = std::vector<int>;

struct Expr {
  std::map<std::string, Rational> terms;
  Rational constant;

  static Expr Var(const std::string& name) {
    Expr e;
    e.terms[name] = 1;
    return e;
  }
  static Expr Const(const Rational& c) {
    Expr e;
    e.constant = c;
    return e;
  }
};

Expr operator+(Expr a, const Expr& b) {
  for (const auto& [name, c] : b.terms) a.terms[name] += c;
  a.constant += b.constant;
  return a;
}
Expr operator*(const Rational& s, Expr a) {
  for (auto& [name, c] : a.terms) c *= s;
  a.constant *= s;
  return a;
}
Expr operator-(const Expr& a, const Expr& b) { return a + Rational(-1) * b; }

std::string Join(const std::string& base, const Idx& idx) {
  std::string out = base;
  for (int i : idx) out += "_" + std::to_string(i);
  return out;
}

// All tuples of the product of inclusive ranges that satisfy `keep`.
void Product(const std::vector<std::pair<int, int>>& ranges,
             const std::function<bool(const Idx&)>& keep,
             const std::function<void(const Idx&)>& emit) {
  for (const auto& [lo, hi] : ranges) {
    if (lo > hi) return;
  }
  Idx cur;
  for (const auto& r : ranges) cur.push_back(r.first);
  while (true) {
    if (keep(cur)) emit(cur);
    size_t d = ranges.size();
    while (d > 0) {
      --d;
      if (cur[d] < ranges[d].second) {
        ++cur[d];
        break;
      }
      cur[d] = ranges[d].first;
      if (d == 0) return;
    }
    if (ranges.empty()) return;
  }
}

bool Any(const Idx&) { return true; }

Expr Sum(int from, int to, const std::function<Expr(int)>& f) {
  Expr e;
  for (int j = from; j <= to; ++j) e = e + f(j);
  return e;
}

class Writer {
 public:
  explicit Writer(int n) : n_(n) {}

  // lhs <= rhs
  void Le(const std::string& family, const Expr& lhs, const Expr& rhs) {
    Push(family, lhs - rhs, qcm::Sense::kLessEqual);
  }
  void Eq(const std::string& family, const Expr& lhs, const Expr& rhs) {
    Push(family, lhs - rhs, qcm::Sense::kEqual);
  }
  // var <= (1/n) * rhs
  void Bound(const std::string& family, const std::string& var, const Expr& rhs) {
    Le(family, Expr::Var(var), Rational(1, n_) * rhs);
  }

  Model model;

 private:
  void Push(const std::string& family, const Expr& diff, qcm::Sense sense) {
    Row row;
    row.family = family;
    for (const auto& [name, c] : diff.terms) {
      if (c != 0) row.lhs[name] = c;
    }
    row.sense = sense;
    row.rhs = -diff.constant;
    model.rows.push_back(std::move(row));
  }

  int n_;
};

Model Ranking(qcm::LpVariant variant, int n, int k) {
  Writer w(n);
  const bool tight = variant == qcm::LpVariant::kTightened;
  const bool girth = variant == qcm::LpVariant::kOddGirth;
  const int victim_copies = girth ? k : 4;
  const int extra = girth ? std::max(k - 2, 0) : 0;
  const std::string nb = tight ? "GT" : girth ? "Gk" : "G";
  const std::string wb = girth ? "Gk" : "G";

  auto g = [](int i, int j) { return Expr::Var(Join("g", {i, j})); };
  auto h = [](int a, int b) { return Expr::Var(Join("h", {a, b})); };
  auto gP = [&](int i, int j) { return g(i, j) - h(j, i); };
  auto gB = [&](int i, int j) { return Expr::Const(1) - g(i, j) - h(i, j); };
  auto R = [](Rational r) { return r; };
  const std::pair<int, int> one_n{1, n}, zero_n{0, n};

  // Function constraints.
  Product({one_n, {1, n - 1}}, Any, [&](const Idx& x) {
    w.Le("g_mono_second", g(x[0], x[1]), g(x[0], x[1] + 1));
  });
  Product({zero_n, {0, n - 1}}, Any, [&](const Idx& x) {
    w.Le("h_mono_second", h(x[0], x[1]), h(x[0], x[1] + 1));
  });
  Product({{1, n - 1}, one_n}, Any, [&](const Idx& x) {
    w.Le("g_mono_first", g(x[0] + 1, x[1]), g(x[0], x[1]));
  });
  Product({{0, n - 1}, zero_n}, Any, [&](const Idx& x) {
    w.Le("h_mono_first", h(x[0] + 1, x[1]), h(x[0], x[1]));
  });
  Product({zero_n}, Any, [&](const Idx& x) { w.Eq("h_zero", h(x[0], 0), Expr()); });
  Product({one_n, one_n}, Any, [&](const Idx& x) {
    const int i = x[0], j = x[1];
    w.Le("gain_cap", R(victim_copies) * h(1, n), gB(i, j));
    w.Le("gain_floor", R(victim_copies) * h(1, n), gP(i, j));
  });

  // (x_u, bot, bot)
  Product({one_n}, Any, [&](const Idx& x) {
    w.Bound("unmatched", Join("G", {x[0]}) + "_bot_bot", Sum(1, n, [&](int j) { return gP(x[0], j); }));
  });

  // (x_u, x_v, bot). Indices: iu, iv, t0.
  auto nbvar = [&](int iu, int iv) { return Join(nb, {iu, iv}) + "_bot"; };
  if (!tight) {
    Product({one_n, one_n, zero_n}, [](const Idx& x) { return x[2] <= x[0] && x[0] <= x[1]; },
            [&](const Idx& x) {
              const int iu = x[0], iv = x[1], t0 = x[2];
              Expr e = Sum(1, iv - 1, [&](int j) { return gP(iu, j); }) + R(Rational(1, 2)) * gP(iu, iv) +
                       R(n - iv) * (h(iu, t0) + h(iv, iu)) + Sum(1, t0, [&](int j) { return h(j, iu); }) +
                       R(t0) * h(iu, iv) + R(n - t0) * gB(iu, iv);
              e = e + R((n - iv) * extra) * h(iv, t0) + R(t0 * extra) * h(iu, 1);
              w.Bound("nobackup_later", nbvar(iu, iv), e);
            });
    Product({one_n, one_n, zero_n}, [](const Idx& x) { return x[2] <= x[0] && x[1] <= x[0]; },
            [&](const Idx& x) {
              const int iu = x[0], iv = x[1], t0 = x[2];
              const int m = n - std::max(t0, iv - 1);
              Expr e = Sum(1, t0, [&](int j) { return g(iv, j); }) +
                       Sum(t0 + 1, iv - 1, [&](int j) { return gP(iu, j); }) +
                       R(m) * (h(iv, t0) + h(iv, iu)) + R(t0) * h(iu, iv) + R(n - t0) * gB(iu, iv);
              e = e + R(m * extra) * h(iv, t0) + R(t0 * extra) * h(iu, 1);
              w.Bound("nobackup_earlier", nbvar(iu, iv), e);
            });
    if (!girth) {
      Product({one_n, one_n, zero_n},
              [](const Idx& x) { return x[1] <= x[0] && x[0] - 1 <= x[2] && x[2] <= x[0]; },
              [&](const Idx& x) {
                const int iu = x[0], iv = x[1], t0 = x[2];
                w.Bound("nobackup_adjacent", nbvar(iu, iv),
                        Sum(1, t0, [&](int j) { return g(iv, j); }) + R(n - t0) * h(iv, iu) +
                            R(n - t0) * gB(iu, iv));
              });
    }
  } else {
    // Indices: iu, iv, t0, t3.
    auto t3clamp = [](int t3, int iu) { return std::min(t3 + 1, iu); };
    Product({one_n, one_n, zero_n, zero_n},
            [](const Idx& x) { return x[3] <= x[2] && x[2] <= x[0] && x[0] <= x[1]; },
            [&](const Idx& x) {
              const int iu = x[0], iv = x[1], t0 = x[2], t3 = x[3];
              Expr e = Sum(1, iv - 1, [&](int j) { return gP(iu, j); }) + R(Rational(1, 2)) * gP(iu, iv) +
                       R(n - t0) * gB(iu, iv);
              if (t3 < t0) {
                e = e + R(n - iv) * (h(iu, t0) + h(iv, iu) + h(iu, t3) + h(iv, t3));
              } else {
                e = e + R(n - iv) * (h(iv, iu) + h(iu, t3) + h(iv, t3));
              }
              e = e + Sum(1, t0, [&](int j) { return h(j, iu); }) +
                  R(t3) * (h(t3clamp(t3, iu), 1) + h(iu, iv));
              if (t3 < t0) e = e + R(t0 - t3) * h(std::min(t0 + 1, iu), iv);
              w.Bound("tight_later", nbvar(iu, iv), e);
            });
    Product({one_n, one_n, zero_n, zero_n},
            [](const Idx& x) { return x[3] <= x[2] && x[2] <= x[0] && x[1] <= x[0]; },
            [&](const Idx& x) {
              const int iu = x[0], iv = x[1], t0 = x[2], t3 = x[3];
              const int m = n - std::max(t0, iv - 1);
              Expr e = Sum(1, t0, [&](int j) { return g(iv, j); }) +
                       Sum(t0 + 1, iv - 1, [&](int j) { return gP(iu, j); }) + R(n - t0) * gB(iu, iv);
              if (t3 < t0) {
                e = e + R(m) * (h(iv, t0) + h(iv, iu));
              } else {
                e = e + R(m) * h(iv, iu);
              }
              e = e + R(m) * (h(iv, t3) + h(iv, t3)) + R(t3) * (h(t3clamp(t3, iu), 1) + h(iu, iv));
              if (t3 < t0) e = e + R(t0 - t3) * h(std::min(t0 + 1, iu), iv);
              w.Bound("tight_earlier", nbvar(iu, iv), e);
            });
    Product({one_n, one_n, zero_n},
            [](const Idx& x) { return x[1] <= x[0] && x[0] - 1 <= x[2] && x[2] <= x[0]; },
            [&](const Idx& x) {
              const int iu = x[0], iv = x[1], t0 = x[2];
              w.Bound("tight_adjacent", nbvar(iu, iv),
                      Sum(1, t0, [&](int j) { return g(iv, j); }) + R(n - t0) * h(iv, iu) +
                          R(n - t0) * gB(iu, iv));
            });
  }

  // (x_u, x_v, x_b), backups ranked no earlier than the match.
  // Indices: iu, iv, ib, t0.
  auto bvar = [&](int iu, int iv, int ib) { return Join(wb, {iu, iv, ib}); };
  Product({one_n, one_n, one_n, zero_n},
          [](const Idx& x) { return x[3] <= x[0] && x[0] <= x[1] && x[1] < x[2]; },
          [&](const Idx& x) {
            const int iu = x[0], iv = x[1], ib = x[2], t0 = x[3];
            Expr e = Sum(1, iv - 1, [&](int j) { return gP(iu, j); }) + R(Rational(1, 2)) * gP(iu, iv) +
                     R(std::max(ib - iv - 1, 0)) * (h(iu, t0) + h(iv, iu)) + R(t0) * gB(iu, ib) +
                     R(n - t0) * gB(iu, iv);
            e = e + R((ib - iv - 1) * extra) * h(iv, t0);
            w.Bound("backup_gap", bvar(iu, iv, ib), e);
          });
  Product({one_n, one_n, one_n, zero_n},
          [](const Idx& x) { return x[3] <= x[0] && x[0] <= x[1] && x[1] == x[2]; },
          [&](const Idx& x) {
            const int iu = x[0], iv = x[1], ib = x[2], t0 = x[3];
            w.Bound("backup_tie", bvar(iu, iv, ib),
                    Sum(1, iv - 1, [&](int j) { return gP(iu, j); }) + R(t0) * gB(iu, ib) +
                        R(n - t0) * gB(iu, iv));
          });
  Product({one_n, one_n, one_n, zero_n},
          [](const Idx& x) { return x[3] <= x[0] && x[1] <= x[0] && x[1] <= x[2]; },
          [&](const Idx& x) {
            const int iu = x[0], iv = x[1], ib = x[2], t0 = x[3];
            const int m = std::max(ib - 1 - std::max(t0, iv - 1), 0);
            Expr e = Sum(1, t0, [&](int j) { return gP(iv, j); }) +
                     Sum(t0 + 1, iv - 1, [&](int j) { return gP(iu, j); }) +
                     R(m) * (h(iv, t0) + h(iv, iu)) + R(t0) * gB(iu, ib) + R(n - t0) * gB(iu, iv);
            e = e + R(m * extra) * h(iv, t0);
            w.Bound("backup_earlier", bvar(iu, iv, ib), e);
          });
  if (!girth) {
    Product({one_n, one_n, one_n, zero_n},
            [](const Idx& x) {
              return x[1] <= x[0] && x[1] <= x[2] && x[0] - 1 <= x[3] && x[3] <= x[0];
            },
            [&](const Idx& x) {
              const int iu = x[0], iv = x[1], ib = x[2], t0 = x[3];
              w.Bound("backup_adjacent", bvar(iu, iv, ib),
                      Sum(1, t0, [&](int j) { return gP(iv, j); }) +
                          R(std::max(ib - t0 - 1, 0)) * h(iv, iu) + R(t0) * gB(iu, ib) +
                          R(n - t0) * gB(iu, iv));
            });
  }

  // Per-rank aggregation and objective.
  auto gu = [](int iu) { return Expr::Var(Join("Gu", {iu})); };
  Product({one_n}, Any, [&](const Idx& x) {
    w.Le("agg_unmatched", gu(x[0]), Expr::Var(Join("G", {x[0]}) + "_bot_bot"));
  });
  Product({one_n, one_n}, Any, [&](const Idx& x) {
    const int iu = x[0], s = x[1];
    w.Le("agg_nobackup", gu(iu),
         R(Rational(1, n + 1 - s)) * Sum(s, n, [&](int j) { return Expr::Var(nbvar(iu, j)); }));
  });
  Product({one_n, one_n, one_n}, [](const Idx& x) { return x[2] <= x[1]; }, [&](const Idx& x) {
    const int iu = x[0], ib = x[1], s = x[2];
    for (int bb : {std::min(ib + 1, n), ib}) {
      w.Le("agg_backup", gu(iu),
           R(Rational(1, ib + 1 - s)) * Sum(s, ib, [&](int j) { return Expr::Var(bvar(iu, j, bb)); }));
    }
  });
  for (int iu = 1; iu <= n; ++iu) w.model.objective[Join("Gu", {iu})] = Rational(1, n);
  return w.model;
}

Model FRanking(int n) {
  Writer w(n);
  auto g = [](int i) { return Expr::Var(Join("g", {i})); };
  auto h = [](int i) { return Expr::Var(Join("h", {i})); };
  auto lo = [&](int i) { return Expr::Const(1) - g(i) - h(i); };
  auto gsum = [&](int upto) { return Sum(1, upto, g); };
  auto R = [](Rational r) { return r; };
  auto var = [](const std::string& s) { return Expr::Var(s); };
  const std::pair<int, int> one_n{1, n}, zero_n{0, n};
  auto U = [](int iu) { return "GF_" + std::to_string(iu); };

  Product({{1, n - 1}}, Any, [&](const Idx& x) { w.Le("g_mono", g(x[0]), g(x[0] + 1)); });
  Product({{0, n - 1}}, Any, [&](const Idx& x) { w.Le("h_mono", h(x[0]), h(x[0] + 1)); });
  w.Eq("h_zero", h(0), Expr());
  Product({one_n}, Any, [&](const Idx& x) {
    w.Le("gain_cap", h(n), lo(x[0]));
    w.Le("gain_floor", h(n), g(x[0]));
  });

  Product({one_n}, Any, [&](const Idx& x) {
    w.Bound("f_unmatched", U(x[0]) + "_bot_bot", gsum(n));
    w.Le("f_passive_passive", var(U(x[0]) + "_P_P"), g(x[0]));
  });
  Product({one_n, zero_n}, Any, [&](const Idx& x) {
    const int iu = x[0], t0 = x[1];
    w.Bound("f_passive_nobackup", U(iu) + "_P_bot", gsum(t0) + R(n - t0) * (h(t0) + g(iu)));
  });
  Product({one_n, one_n, zero_n}, Any, [&](const Idx& x) {
    const int iu = x[0], ib = x[1], t0 = x[2];
    w.Bound("f_passive_active", U(iu) + "_P_A" + std::to_string(ib),
            gsum(t0) + R(std::max(ib - t0 - 1, 0)) * h(t0) + R(t0) * lo(ib) + R(n - t0) * g(iu));
  });

  // (x_u, x_v^A, bot). Indices: iu, iv, t1, t0.
  auto anb = [&](int iu, int iv) { return U(iu) + "_A" + std::to_string(iv) + "_bot"; };
  Product({one_n, one_n, one_n, zero_n}, [](const Idx& x) { return x[3] < x[2] && x[1] <= x[2]; },
          [&](const Idx& x) {
            const int iu = x[0], iv = x[1], t1 = x[2], t0 = x[3];
            const std::string v = anb(iu, iv);
            const Expr base1 = gsum(t1) + R(n - t1) * h(t0) + R(t0) * h(iv);
            const Expr base3 = gsum(t1 - 1) + R(n - t1 + 1) * h(t0) + R(t0) * h(iv);
            w.Bound("f_active_nobackup", v, base1 + R(t1 - t0) * g(iu) + R(n - t1) * lo(iv));
            w.Bound("f_active_nobackup", v, base1 + R(n - t0) * lo(iv));
            w.Bound("f_active_nobackup", v, base3 + R(t1 - t0 - 1) * g(iu) + R(n - t1 + 1) * lo(iv));
            w.Bound("f_active_nobackup", v, base3 + R(n - t0) * lo(iv));
          });
  Product({one_n, one_n, one_n, zero_n}, [](const Idx& x) { return x[3] == x[2] && x[1] <= x[2]; },
          [&](const Idx& x) {
            const int iu = x[0], iv = x[1], t1 = x[2], t0 = x[3];
            const std::string v = anb(iu, iv);
            const Expr base = gsum(t1) + R(n - t1) * h(t0) + R(t0) * h(iv);
            w.Bound("f_active_nobackup_eq", v, base + R(t1 - t0) * g(iu) + R(n - t1) * lo(iv));
            w.Bound("f_active_nobackup_eq", v, base + R(n - t0) * lo(iv));
          });

  // (x_u, x_v^A, x_b^A). Indices: iu, iv, ib, t1, t0.
  auto aa = [&](int iu, int iv, int ib) {
    return U(iu) + "_A" + std::to_string(iv) + "_A" + std::to_string(ib);
  };
  Product({one_n, one_n, one_n, one_n, zero_n},
          [](const Idx& x) { return x[1] <= x[2] && x[4] <= x[3] && x[1] <= x[3]; },
          [&](const Idx& x) {
            const int iu = x[0], iv = x[1], ib = x[2], t1 = x[3], t0 = x[4];
            const std::string v = aa(iu, iv, ib);
            const Expr right = gsum(t1) + R(std::max(ib - t1 - 1, 0)) * h(t0);
            const Expr tail = R(n - t1) * lo(iv);
            w.Bound("f_active_active", v, right + R(t0) * lo(ib) + R(t1 - t0) * lo(iv) + tail);
            w.Bound("f_active_active", v, right + R(t0) * lo(ib) + R(t1 - t0) * g(iu) + tail);
            w.Bound("f_active_active", v, right + R(t0) * g(iu) + R(t1 - t0) * g(iu) + tail);
            if (t0 < t1) {
              const Expr left = gsum(t1 - 1) + R(std::max(ib - t1, 0)) * h(t0);
              const Expr ltail = R(n - t1 + 1) * lo(iv);
              w.Bound("f_active_active", v, left + R(t0) * lo(ib) + R(t1 - t0 - 1) * lo(iv) + ltail);
              w.Bound("f_active_active", v, left + R(t0) * lo(ib) + R(t1 - t0 - 1) * g(iu) + ltail);
              w.Bound("f_active_active", v, left + R(t0) * g(iu) + R(t1 - t0 - 1) * g(iu) + ltail);
            }
          });

  // Grouping into passive and active per-rank bounds.
  auto P = [](int iu) { return Expr::Var("GFP_" + std::to_string(iu)); };
  auto A = [](int iu) { return Expr::Var("GFA_" + std::to_string(iu)); };
  Product({one_n}, Any, [&](const Idx& x) {
    const int iu = x[0];
    w.Le("f_agg_passive", P(iu), var(U(iu) + "_P_bot"));
    w.Le("f_agg_passive", P(iu), var(U(iu) + "_P_P"));
    w.Le("f_agg_active_unmatched", A(iu), var(U(iu) + "_bot_bot"));
  });
  Product({one_n, one_n}, Any, [&](const Idx& x) {
    w.Le("f_agg_passive", P(x[0]), var(U(x[0]) + "_P_A" + std::to_string(x[1])));
  });
  Product({one_n, one_n}, Any, [&](const Idx& x) {
    const int iu = x[0], s = x[1];
    w.Le("f_agg_active_nobackup", A(iu),
         R(Rational(1, n + 1 - s)) * Sum(s, n, [&](int iv) { return var(anb(iu, iv)); }));
  });
  Product({one_n, one_n, one_n}, [](const Idx& x) { return x[2] <= x[1]; }, [&](const Idx& x) {
    const int iu = x[0], ib = x[1], s = x[2];
    for (int bb : {ib, std::min(ib + 1, n)}) {
      w.Le("f_agg_active_backup", A(iu),
           R(Rational(1, ib + 1 - s)) * Sum(s, ib, [&](int iv) { return var(aa(iu, iv, bb)); }));
    }
  });
  Product({zero_n}, Any, [&](const Idx& x) {
    const int t = x[0];
    w.Le("objective_split", var("W"),
         R(Rational(1, n)) * (Sum(1, t, P) + Sum(t + 1, n, A)));
  });
  w.model.objective["W"] = 1;
  return w.model;
}

}  // namespace

std::string Row::Canonical() const {
  std::ostringstream out;
  for (const auto& [name, c] : lhs) out << c << "*" << name << " ";
  out << (sense == qcm::Sense::kEqual ? "= " : "<= ") << rhs;
  return out.str();
}

Model Enumerate(qcm::LpVariant variant, int n, int k) {
  if (variant == qcm::LpVariant::kFRanking) return FRanking(n);
  return Ranking(variant, n, k);
}

Model FromFactory(const qcm::LpModel& model) {
  Model out;
  for (const auto& c : model.constraints()) {
    Row row;
    row.family = c.tag.family;
    for (const auto& t : c.terms) row.lhs[model.variable_name(t.var)] += t.coef;
    row.sense = c.sense;
    row.rhs = c.rhs;
    if (c.sense == qcm::Sense::kGreaterEqual) {
      for (auto& [name, coef] : row.lhs) coef = -coef;
      row.rhs = -row.rhs;
      row.sense = qcm::Sense::kLessEqual;
    }
    out.rows.push_back(std::move(row));
  }
  for (const auto& t : model.objective()) out.objective[model.variable_name(t.var)] += t.coef;
  return out;
}

}  // namespace reference
