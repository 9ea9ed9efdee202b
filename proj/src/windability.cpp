#include "icechain/windability.hpp"

#include <algorithm>
#include <stdexcept>

namespace icechain {

namespace {

// Variable position i (1..4) lives at bit 4-i of the table index.
unsigned bit_of(int position) { return 1u << (4 - position); }

std::vector<int> support_of(unsigned d) {
  std::vector<int> s;
  for (int i = 1; i <= 4; ++i)
    if (d & bit_of(i)) s.push_back(i);
  return s;
}

std::vector<unsigned> block_masks(const PairingPartition& p) {
  std::vector<unsigned> masks;
  for (auto [a, b] : p.pairs) masks.push_back(bit_of(a) | bit_of(b));
  if (p.singleton) masks.push_back(bit_of(*p.singleton));
  return masks;
}

unsigned orbit_rep(unsigned x, const std::vector<unsigned>& blocks) {
  unsigned best = x;
  unsigned count = 1u << blocks.size();
  for (unsigned sub = 0; sub < count; ++sub) {
    unsigned v = x;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (sub & (1u << i)) v ^= blocks[i];
    best = std::min(best, v);
  }
  return best;
}

std::string pairing_label(const PairingPartition& p) {
  std::string s = "{";
  bool first = true;
  for (auto [a, b] : p.pairs) {
    if (!first) s += '|';
    s += "x" + std::to_string(a) + "x" + std::to_string(b);
    first = false;
  }
  if (p.singleton) {
    if (!first) s += '|';
    s += "x" + std::to_string(*p.singleton);
  }
  return s + "}";
}

void enumerate_rec(std::vector<int> remaining, PairingPartition& acc,
                   std::vector<PairingPartition>& out) {
  if (remaining.empty()) {
    out.push_back(acc);
    return;
  }
  int a = remaining.front();
  for (std::size_t i = 1; i < remaining.size(); ++i) {
    PairingPartition next = acc;
    next.pairs.emplace_back(a, remaining[i]);
    std::vector<int> rest;
    for (std::size_t j = 1; j < remaining.size(); ++j)
      if (j != i) rest.push_back(remaining[j]);
    enumerate_rec(std::move(rest), next, out);
  }
}

}  // namespace

std::vector<PairingPartition> enumerate_pairings(const std::vector<int>& support) {
  if (support.size() > 4) throw std::invalid_argument("enumerate_pairings: arity above 4");
  std::vector<int> s = support;
  std::sort(s.begin(), s.end());
  std::vector<PairingPartition> out;
  if (s.size() % 2 == 0) {
    PairingPartition acc;
    enumerate_rec(s, acc, out);
  } else {
    // Odd support: exactly one singleton; choose it, pair the rest.
    for (std::size_t k = 0; k < s.size(); ++k) {
      PairingPartition acc;
      acc.singleton = s[k];
      std::vector<int> rest;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != k) rest.push_back(s[j]);
      std::vector<PairingPartition> sub;
      enumerate_rec(std::move(rest), acc, sub);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  return out;
}

int WindabilitySystem::var_of(unsigned x, unsigned y, int pairing) const {
  unsigned d = x ^ y;
  const PairingPartition& p = pairings_by_d.at(d).at(pairing);
  unsigned rep = orbit_rep(x, block_masks(p));
  auto it = var_index.find({d, pairing, rep});
  if (it == var_index.end()) throw std::logic_error("windability: unknown variable class");
  return it->second;
}

WindabilitySystem build_system(const ConstraintFunction4& f) {
  WindabilitySystem sys;
  sys.pairings_by_d.resize(16);
  for (unsigned d = 0; d < 16; ++d) sys.pairings_by_d[d] = enumerate_pairings(support_of(d));

  for (unsigned d = 0; d < 16; ++d) {
    for (int m = 0; m < static_cast<int>(sys.pairings_by_d[d].size()); ++m) {
      auto blocks = block_masks(sys.pairings_by_d[d][m]);
      for (unsigned x = 0; x < 16; ++x) {
        unsigned rep = orbit_rep(x, blocks);
        if (rep != x) continue;
        int id = static_cast<int>(sys.variables.size());
        sys.var_index[{d, m, rep}] = id;
        sys.variables.push_back(
            {d, m, rep,
             "B(" + index_to_bits(rep) + "," + index_to_bits(rep ^ d) + ";" +
                 pairing_label(sys.pairings_by_d[d][m]) + ")"});
      }
    }
  }

  for (unsigned x = 0; x < 16; ++x) {
    for (unsigned y = x; y < 16; ++y) {
      WindabilitySystem::Equation eq;
      eq.x = x;
      eq.y = y;
      eq.rhs = f.at(x) * f.at(y);
      unsigned d = x ^ y;
      for (int m = 0; m < static_cast<int>(sys.pairings_by_d[d].size()); ++m)
        eq.vars.push_back(sys.var_of(x, y, m));
      eq.label = "f(" + index_to_bits(x) + ")f(" + index_to_bits(y) + ")";
      sys.equations.push_back(std::move(eq));
    }
  }
  return sys;
}

bool verify_witness(const WindabilitySystem& sys, const std::vector<Rational>& values) {
  for (const Rational& v : values)
    if (v < 0) return false;
  for (const auto& eq : sys.equations) {
    Rational sum(0);
    for (int v : eq.vars) sum += values.at(v);
    if (sum != eq.rhs) return false;
  }
  return true;
}

bool verify_certificate(const WindabilitySystem& sys, const std::vector<Rational>& coeffs) {
  std::vector<Rational> column_sums(sys.variables.size(), Rational(0));
  Rational rhs_sum(0);
  for (std::size_t e = 0; e < sys.equations.size(); ++e) {
    if (coeffs.at(e) == 0) continue;
    for (int v : sys.equations[e].vars) column_sums[v] += coeffs[e];
    rhs_sum += coeffs[e] * sys.equations[e].rhs;
  }
  for (const Rational& c : column_sums)
    if (c > 0) return false;
  return rhs_sum > 0;
}

namespace {

// Phase-1 simplex with Bland's rule, everything in exact rationals.
// Returns feasibility; on success fills `solution` (structural columns),
// otherwise `dual` (one multiplier per row, y^T A <= 0, y^T b > 0).
bool phase_one_simplex(const std::vector<std::vector<Rational>>& A,
                       const std::vector<Rational>& b, std::vector<Rational>& solution,
                       std::vector<Rational>& dual) {
  const int m = static_cast<int>(A.size());
  const int n = m > 0 ? static_cast<int>(A[0].size()) : 0;
  const int cols = n + m;  // structural + artificial

  std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols + 1, Rational(0)));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][cols] = b[i];
    basis[i] = n + i;
  }

  // Objective row: reduced costs of min(sum of artificials); the last
  // entry holds minus the objective value.
  std::vector<Rational> obj(cols + 1, Rational(0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) obj[j] -= T[i][j];
  for (int i = 0; i < m; ++i) obj[cols] -= b[i];

  while (true) {
    int enter = -1;
    for (int j = 0; j < cols; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;

    int leave = -1;
    Rational best_ratio(0);
    for (int i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rational ratio = T[i][cols] / T[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("phase-1 simplex: unbounded objective");

    Rational pivot = T[leave][enter];
    for (auto& v : T[leave]) v /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rational factor = T[i][enter];
      for (int j = 0; j <= cols; ++j) T[i][j] -= factor * T[leave][j];
    }
    if (obj[enter] != 0) {
      Rational factor = obj[enter];
      for (int j = 0; j <= cols; ++j) obj[j] -= factor * T[leave][j];
    }
    basis[leave] = enter;
  }

  Rational objective = -obj[cols];
  if (objective == 0) {
    solution.assign(n, Rational(0));
    for (int i = 0; i < m; ++i)
      if (basis[i] < n) solution[basis[i]] = T[i][cols];
    return true;
  }
  dual.assign(m, Rational(0));
  for (int i = 0; i < m; ++i) dual[i] = 1 - obj[n + i];
  return false;
}

}  // namespace

WindabilityVerdict is_windable(const ConstraintFunction4& f) {
  WindabilityVerdict verdict;
  verdict.system = build_system(f);
  const WindabilitySystem& sys = verdict.system;
  const int nvars = static_cast<int>(sys.variables.size());
  const int neqs = static_cast<int>(sys.equations.size());

  // Presolve: an equation with zero right-hand side pins all of its
  // non-negative variables to zero.
  std::vector<int> forcing_eq(nvars, -1);
  for (int e = 0; e < neqs; ++e) {
    if (sys.equations[e].rhs != 0) continue;
    for (int v : sys.equations[e].vars)
      if (forcing_eq[v] < 0) forcing_eq[v] = e;
  }

  auto finish_infeasible = [&](std::vector<Rational> coeffs) {
    verdict.windable = false;
    verdict.farkas = std::move(coeffs);
    verdict.verified = verify_certificate(sys, verdict.farkas);
    for (int e = 0; e < neqs; ++e)
      if (verdict.farkas[e] != 0)
        verdict.certificate.emplace_back(sys.equations[e].label, verdict.farkas[e]);
    return verdict;
  };

  std::vector<int> positive_eqs;
  for (int e = 0; e < neqs; ++e) {
    const auto& eq = sys.equations[e];
    if (eq.rhs == 0) continue;
    positive_eqs.push_back(e);
    bool any_free = false;
    for (int v : eq.vars)
      if (forcing_eq[v] < 0) any_free = true;
    if (!any_free) {
      // Every variable of a positive product is already pinned to zero;
      // this is the direct contradiction shape.
      std::vector<Rational> coeffs(neqs, Rational(0));
      coeffs[e] = 1;
      for (int v : eq.vars) coeffs[forcing_eq[v]] -= 1;
      return finish_infeasible(std::move(coeffs));
    }
  }

  // Reduced system over free variables occurring in positive equations.
  std::vector<int> col_of(nvars, -1);
  std::vector<int> var_of_col;
  for (int e : positive_eqs)
    for (int v : sys.equations[e].vars)
      if (forcing_eq[v] < 0 && col_of[v] < 0) {
        col_of[v] = static_cast<int>(var_of_col.size());
        var_of_col.push_back(v);
      }

  verdict.witness.assign(nvars, Rational(0));
  if (positive_eqs.empty()) {
    verdict.windable = true;
    verdict.verified = verify_witness(sys, verdict.witness);
    return verdict;
  }

  std::vector<std::vector<Rational>> A(positive_eqs.size(),
                                       std::vector<Rational>(var_of_col.size(), Rational(0)));
  std::vector<Rational> rhs(positive_eqs.size());
  for (std::size_t r = 0; r < positive_eqs.size(); ++r) {
    const auto& eq = sys.equations[positive_eqs[r]];
    rhs[r] = eq.rhs;
    for (int v : eq.vars)
      if (col_of[v] >= 0) A[r][col_of[v]] = 1;
  }

  std::vector<Rational> solution, dual;
  if (phase_one_simplex(A, rhs, solution, dual)) {
    verdict.windable = true;
    for (std::size_t c = 0; c < var_of_col.size(); ++c)
      verdict.witness[var_of_col[c]] = solution[c];
    verdict.verified = verify_witness(sys, verdict.witness);
    return verdict;
  }

  // Lift the reduced-system multipliers back to the full system: pinned
  // variables re-enter positive rows, so cancel them through their
  // forcing equations.
  std::vector<Rational> coeffs(neqs, Rational(0));
  for (std::size_t r = 0; r < positive_eqs.size(); ++r) coeffs[positive_eqs[r]] = dual[r];
  for (int v = 0; v < nvars; ++v) {
    if (forcing_eq[v] < 0) continue;
    Rational needed(0);
    for (std::size_t r = 0; r < positive_eqs.size(); ++r) {
      const auto& eq = sys.equations[positive_eqs[r]];
      if (std::find(eq.vars.begin(), eq.vars.end(), v) != eq.vars.end()) needed += dual[r];
    }
    if (needed > 0) coeffs[forcing_eq[v]] -= needed;
  }
  return finish_infeasible(std::move(coeffs));
}

}  // namespace icechain
