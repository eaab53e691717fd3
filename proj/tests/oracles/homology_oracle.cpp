#include "homology_oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

namespace oracle {

using bvforge::GradedVariable;
using bvforge::VarId;
using bvforge::VarKind;

namespace {

constexpr std::uint64_t kPrimes[] = {2147483629ULL, 2147483587ULL};

using Key = std::vector<VarId>;  // factors with repetition, ascending ids

struct Gen {
  VarId id;
  int af;
  int weight;
  bool odd;
  bool basis;
};

std::uint64_t mod(const mpq_class& q, std::uint64_t p) {
  mpz_class n = q.get_num() % static_cast<unsigned long>(p);
  if (n < 0) n += static_cast<unsigned long>(p);
  mpz_class d = q.get_den() % static_cast<unsigned long>(p);
  std::uint64_t a = n.get_ui(), b = d.get_ui();
  std::uint64_t inv = 1, e = p - 2, base = b;
  while (e) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return a * inv % p;
}

class Oracle {
 public:
  Oracle(const bvforge::KTData& kt) : kt_(kt), u_(*kt.universe) {
    for (VarId id = 0; id < u_.size(); ++id) {
      const auto& v = u_.var(id);
      odd_.push_back(v.is_odd());
    }
    for (VarId id = 0; id < u_.size(); ++id) {
      const auto& v = u_.var(id);
      if (v.kind == VarKind::Parameter) continue;
      bool basis = v.kind == VarKind::Antifield || v.kind == VarKind::Antighost || v.is_odd();
      gens_.push_back({id, v.bidegree().antifield_number, basis ? -1 : 1, v.is_odd(), basis});
    }
    for (auto& g : gens_)
      if (g.basis && g.af == 0) g.weight = 1;
    for (int pass = 0; pass < 64; ++pass) {
      bool changed = false;
      for (auto& g : gens_) {
        if (g.weight >= 0) continue;
        auto img = image(g.id);
        int w = 0;
        bool known = true;
        for (const auto& [key, c] : img) {
          int tw = 0;
          for (VarId f : key) {
            int fw = weight_of(f);
            if (fw < 0) known = false;
            tw += fw;
          }
          w = std::max(w, tw);
        }
        if (!known) continue;
        g.weight = img.empty() ? 1 : w;
        for (const auto& [key, c] : img) {
          int tw = 0;
          for (VarId f : key) tw += weight_of(f);
          if (tw != w) homogeneous_ = false;
        }
        if (g.weight == 0 && !g.odd) homogeneous_ = false;
        changed = true;
      }
      if (!changed) break;
    }
  }

  HomologyCheck run(int k, int bound) {
    HomologyCheck out;
    if (!homogeneous_) {
      out.note = "differential is not homogeneous for the oracle weights";
      return out;
    }
    out.vanishes = true;
    for (int w = 0; w <= bound; ++w) {
      auto top = monomials(k + 1, w), mid = monomials(k, w), low = k >= 1 ? monomials(k - 1, w) : std::vector<Key>{};
      out.chain_dimension += mid.size();
      if (mid.empty()) continue;
      bool ok = false;
      for (std::uint64_t p : kPrimes) {
        std::size_t comps = 0;
        std::size_t r_top = rank(top, mid, p, comps);
        std::size_t r_mid = rank(mid, low, p, comps);
        if (r_top + r_mid == mid.size()) {
          ok = true;
          out.components += comps;
          break;
        }
      }
      if (!ok) {
        out.vanishes = false;
        out.failing_weights.push_back(w);
      }
    }
    return out;
  }

 private:
  int weight_of(VarId id) const {
    for (const auto& g : gens_)
      if (g.id == id) return g.weight;
    return 0;
  }

  // d of a generator, parameters set to 1, as factor lists
  std::map<Key, mpq_class> image(VarId id) const {
    std::map<Key, mpq_class> out;
    auto it = kt_.images.find(u_.var(id));
    if (it == kt_.images.end()) return out;
    for (const auto& t : it->second.terms()) {
      Key key;
      for (const auto& [v, e] : t.mono.factors())
        if (u_.var(v).kind != VarKind::Parameter)
          for (std::uint32_t r = 0; r < e; ++r) key.push_back(v);
      out[key] += t.coef;
    }
    for (auto i = out.begin(); i != out.end();)
      i = i->second == 0 ? out.erase(i) : std::next(i);
    return out;
  }

  std::vector<Key> monomials(int af, int w) {
    std::vector<Key> out;
    Key cur;
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int af_left, int w_left) {
      if (af_left == 0 && w_left == 0) out.push_back(cur);
      if (i == gens_.size()) return;
      for (std::size_t j = i; j < gens_.size(); ++j) {
        const Gen& g = gens_[j];
        if (g.af > af_left || g.weight > w_left || (g.weight == 0 && g.af == 0)) continue;
        if (g.odd && !cur.empty() && cur.back() == g.id) continue;
        cur.push_back(g.id);
        rec(g.odd ? j + 1 : j, af_left - g.af, w_left - g.weight);
        cur.pop_back();
      }
    };
    rec(0, af, w);
    return out;
  }

  // Sorts a factor sequence into ascending ids; returns 0 for a repeated odd
  // factor, otherwise the sign of the odd permutation.
  int normalize(Key& seq) const {
    int sign = 1;
    for (std::size_t i = 1; i < seq.size(); ++i)
      for (std::size_t j = i; j > 0 && seq[j - 1] > seq[j]; --j) {
        if (odd_[seq[j - 1]] && odd_[seq[j]]) sign = -sign;
        std::swap(seq[j - 1], seq[j]);
      }
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (seq[i] == seq[i - 1] && odd_[seq[i]]) return 0;
    return sign;
  }

  std::vector<std::pair<Key, mpq_class>> differential(const Key& m) {
    std::map<Key, mpq_class> acc;
    int prefix_parity = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      auto cache = images_.find(m[i]);
      if (cache == images_.end()) cache = images_.emplace(m[i], image(m[i])).first;
      for (const auto& [term, c] : cache->second) {
        Key seq(m.begin(), m.begin() + i);
        seq.insert(seq.end(), term.begin(), term.end());
        seq.insert(seq.end(), m.begin() + i + 1, m.end());
        int s = normalize(seq);
        if (s == 0) continue;
        acc[seq] += (prefix_parity ? -1 : 1) * s * c;
      }
      prefix_parity ^= odd_[m[i]] ? 1 : 0;
    }
    std::vector<std::pair<Key, mpq_class>> out;
    for (auto& [k, c] : acc)
      if (c != 0) out.emplace_back(k, c);
    return out;
  }

  std::size_t rank(const std::vector<Key>& src, const std::vector<Key>& tgt, std::uint64_t p, std::size_t& comps) {
    if (src.empty() || tgt.empty()) return 0;
    std::map<Key, std::uint32_t> row;
    for (std::uint32_t i = 0; i < tgt.size(); ++i) row[tgt[i]] = i;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> cols(src.size());
    std::vector<std::uint32_t> parent(tgt.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t j = 0; j < src.size(); ++j) {
      for (const auto& [k, c] : differential(src[j])) {
        auto it = row.find(k);
        if (it == row.end()) throw std::logic_error("oracle: differential leaves the chain space");
        std::uint64_t v = mod(c, p);
        if (v) cols[j].emplace_back(it->second, v);
      }
      std::sort(cols[j].begin(), cols[j].end());
      for (std::size_t q = 1; q < cols[j].size(); ++q) parent[find(cols[j][q].first)] = find(cols[j][0].first);
    }
    std::map<std::uint32_t, std::vector<std::size_t>> blocks;
    for (std::size_t j = 0; j < src.size(); ++j)
      if (!cols[j].empty()) blocks[find(cols[j][0].first)].push_back(j);
    comps += blocks.size();
    std::size_t r = 0;
    for (const auto& [root, members] : blocks) {
      std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint64_t>>> pivots;
      for (std::size_t j : members) {
        auto v = cols[j];
        while (!v.empty()) {
          auto it = pivots.find(v.front().first);
          if (it == pivots.end()) break;
          std::uint64_t f = v.front().second;
          std::vector<std::pair<std::uint32_t, std::uint64_t>> next;
          std::size_t a = 0, b = 0;
          const auto& pv = it->second;
          while (a < v.size() || b < pv.size()) {
            if (b == pv.size() || (a < v.size() && v[a].first < pv[b].first)) {
              next.push_back(v[a++]);
            } else {
              std::uint64_t sub = pv[b].second * f % p;
              std::uint64_t val = (a < v.size() && v[a].first == pv[b].first) ? v[a++].second : 0;
              val = (val + p - sub) % p;
              if (val) next.emplace_back(pv[b].first, val);
              ++b;
            }
          }
          v.swap(next);
        }
        if (v.empty()) continue;
        std::uint64_t inv = 1, e = p - 2, base = v.front().second;
        while (e) {
          if (e & 1) inv = inv * base % p;
          base = base * base % p;
          e >>= 1;
        }
        for (auto& [c, x] : v) x = x * inv % p;
        pivots.emplace(v.front().first, std::move(v));
        ++r;
      }
    }
    return r;
  }

  const bvforge::KTData& kt_;
  const bvforge::Universe& u_;
  std::vector<bool> odd_;
  std::vector<Gen> gens_;
  bool homogeneous_ = true;
  std::map<VarId, std::map<Key, mpq_class>> images_;
};

}  // namespace

HomologyCheck kt_homology_vanishes(const bvforge::KTData& kt, int k, int weight_bound) {
  return Oracle(kt).run(k, weight_bound);
}

}  // namespace oracle
