#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "bvforge/homology.hpp"
#include "bvforge/variational.hpp"

namespace bvforge {

struct AntighostGenerator {
  int level = 0;
  int index = 0;
  Poly image;  // d_KT of the order-zero antighost
  int intrinsic_parity = 0;
  int effective_order = 0;  // jet order its image occupies
  int weight = 0;           // internal degree of the generator

  std::string name() const { return ghost_name(level, index); }
  GradedVariable variable(int base_dim, MultiIndex jet = {}) const;
};

struct LevelCertificate {
  int level = 0;
  int degree_bound = 0;
  int rounds = 0;  // homology computations at this level
  std::size_t pieces = 0;
  std::size_t chain_dimension = 0;
  bool vanishes = false;  // homology at -level empty up to degree_bound
};

/// The Koszul-Tate package. Antifields x*_{i,alpha} and antighost jets
/// exist up to the jet window; d_KT is stored on every generator.
struct KTData {
  LocalAction action;
  int jet_window = 0;
  int degree_bound = 0;
  std::vector<Poly> euler_lagrange;
  UniversePtr universe;
  std::map<GradedVariable, Poly, CanonicalLess> images;
  std::map<GradedVariable, int, CanonicalLess> weights;
  std::map<GradedVariable, int, CanonicalLess> effective_orders;
  std::vector<std::vector<AntighostGenerator>> levels;  // levels[k-1] = level k
  std::vector<LevelCertificate> certificates;
  int top_level = 0;      // highest level with generators
  int terminated_at = 0;  // first level whose homology vanished, 0 if none

  bool strongly_regular() const { return terminated_at > 0; }
  std::vector<GradedVariable> generators() const;  // antifields and antighosts with jets
  /// Re-expresses every stored polynomial in `u` and adopts it.
  void adopt(const UniversePtr& u);
};

struct NoetherIdentity {
  Poly representative;                   // antifield-linear cycle
  std::vector<GradedVariable> basis;     // antifields, in module order
  ModuleVector coefficients;             // one coefficient per basis antifield
  int degree = 0;
};

/// Level-0 package: antifields and d_KT(x*_{i,alpha}) = D_alpha EL_i.
KTData koszul_tate_base(const LocalAction& s, int jet_window, int degree_bound);

/// Odd derivation extending the stored generator values. Throws for ghosts.
Poly apply_d_kt(const KTData& kt, const Poly& e);

/// Chain complex of the current KT algebra around position -k, as free
/// modules over the even field ring; basis monomials are listed per position.
struct KTSlice {
  ChainComplex complex;
  std::map<int, std::vector<Monomial>> basis;
};
KTSlice kt_slice(const KTData& kt, int k, int basis_weight_bound);

/// Nontrivial H^1 classes: syzygies of the prolonged EL system modulo the
/// Koszul ones, as antifield-linear cycles.
std::vector<NoetherIdentity> noether_identities(const LocalAction& s, int order_bound, int degree_bound);

/// Adjoins antighosts at `level` until the homology at -level vanishes up to
/// degree_bound. Returns the new generators (empty if none were needed).
std::vector<AntighostGenerator> tate_extend(KTData& kt, int level, int degree_bound);

class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs Tate's construction up to max_level, stopping at the first level
/// needing no generators. Leaves terminated_at = 0 when max_level is reached.
KTData build_koszul_tate(const LocalAction& s, int max_level, int order_bound, int degree_bound);

}  // namespace bvforge
