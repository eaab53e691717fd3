#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "bvforge/koszul_tate.hpp"

namespace bvforge {

enum class BracketMode { Finite, Local };

/// KT universe plus one ghost per antighost. Ghost jets run up to the jet
/// window; d_KT values are kept for antifields and antighosts.
struct BVUniverse {
  UniversePtr universe;
  int jet_window = 0;
  std::vector<GradedVariable> ghosts;  // order-zero ghosts, by level then index
  std::vector<Poly> ghost_coefficients;  // d_KT of the matching antighost
  std::map<GradedVariable, Poly, CanonicalLess> images;

  BracketMode mode() const { return universe->finite_mode() ? BracketMode::Finite : BracketMode::Local; }
};

BVUniverse assemble_bv(const LocalAction& s, const KTData& kt);

/// Odd antibracket. Finite mode uses partial derivatives over conjugate
/// pairs; local mode uses variational derivatives and returns the
/// divergence-reduced representative.
Poly antibracket(const Poly& f, const Poly& g, BracketMode mode);
Poly antibracket(const Poly& f, const Poly& g);

/// d_KT on the BV universe, with ghosts, fields and constants as cycles.
Poly apply_d_kt(const BVUniverse& bv, const Poly& e);

/// S + sum over antighosts of d_KT(C*) * C.
Poly build_s_kt(const LocalAction& s, const BVUniverse& bv);

struct MasterAction {
  UniversePtr universe;
  BracketMode mode = BracketMode::Finite;
  Poly action;                // S_cm
  std::vector<Poly> pieces;   // pieces[k] = antifield-number-k component
  int order = 0;              // last recursion order processed
  bool terminated = false;    // {S_cm,S_cm} vanished within max_order
  Poly residual;
  std::vector<Poly> witness;  // divergence witness of the raw residual (local mode)
};

class MasterError : public std::runtime_error {
 public:
  MasterError(const std::string& msg, int order) : std::runtime_error(msg), order(order) {}
  int order;
};

MasterAction solve_master(const LocalAction& s, const BVUniverse& bv, int max_order, int degree_bound);

struct MasterCheck {
  Poly residual;
  std::vector<Poly> witness;
  bool holds = false;
};

MasterCheck verify_master(const Poly& s_cm, BracketMode mode);
inline MasterCheck verify_master(const MasterAction& m) { return verify_master(m.action, m.mode); }

}  // namespace bvforge
