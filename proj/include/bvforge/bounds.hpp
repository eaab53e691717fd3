#pragma once

namespace bvforge {

/// Truncation bounds shared by every stage.
struct Bounds {
  int max_jet_order = 4;
  int degree_bound = 6;
  int max_kt_level = 4;
  int max_master_order = 6;
  int prolongation_order = 0;
};

}  // namespace bvforge
