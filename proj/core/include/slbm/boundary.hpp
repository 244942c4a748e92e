#pragma once

#include <array>

#include "slbm/lattice.hpp"
#include "slbm/method.hpp"

namespace slbm {

enum class FaceConditionType {
  Periodic,
  DirichletOnQ,          // moment closure on the post-stream q (IREBM)
  DirichletEquilibrium,  // moment closure on the post-stream f (EEBM/ILFBM)
  BounceBack,            // reflect the outgoing post-collision population
  NeumannOnQ,            // zero-gradient closure against the interior neighbor (IREBM, D2Q5)
};

struct FaceCondition {
  FaceConditionType type = FaceConditionType::Periodic;
  double value = 0.0;      // prescribed theta at the current step (Dirichlet)
  double value_next = 0.0; // prescribed theta at the next step; equal for constant data
};

enum Face : int { XMin = 0, XMax = 1, YMin = 2, YMax = 3 };

/// Per-face boundary conditions. Y faces are ignored for 1D lattices.
/// Periodic conditions must pair up on both faces of an axis.
struct BoundarySpec {
  std::array<FaceCondition, 4> faces{};

  bool axis_periodic(int axis) const {
    return faces[axis == 0 ? XMin : YMin].type == FaceConditionType::Periodic;
  }

  /// Checks pairing, scheme/lattice restrictions and corner consistency;
  /// throws ConfigError with the offending face in the message.
  void validate(const LatticeDescriptor& lattice, Method method) const;
};

/// Values the fill pass needs beyond the spec itself. `moment_is_enthalpy`
/// selects the Dirichlet target for moment closures on f: H(theta_Dir) for
/// the enthalpy-moment scheme (EEBM), theta_Dir otherwise.
struct BoundaryContext {
  double Ste = 0.0;
  double delta = 0.0;
  bool moment_is_enthalpy = false;
};

// Per-node fill operations. All of them identify the populations to fill as
// the NaN slots left by streaming over an open axis, so they must run on the
// post-stream field. Multi-slot closures split the moment deficit over the
// missing populations proportionally to their lattice weights.

/// Moment closure for a prescribed temperature on the IREBM post-stream q:
/// the filled populations make the node's Newton solve return exactly
/// theta_dir_next.
void apply_dirichlet_on_q(DistributionField& q, int ix, int iy, double theta_dir_now,
                          double theta_dir_next, double Ste, double delta);

/// Reflects the node's own outgoing post-collision populations back into the
/// undefined slots: q_i(x) <- omega_opposite(i)(x). Streaming plus this fill
/// permutes the population multiset, so closed-box totals are conserved
/// exactly.
void apply_bounceback(DistributionField& q, const DistributionField& post_collision, int ix,
                      int iy);

/// Zero-gradient closure on a D2Q5 wall node (not a corner): makes the
/// node's post-step temperature equal its interior neighbor's.
void apply_neumann_on_q_d2q5(DistributionField& q, int ix, int iy);

/// Moment closure on the post-stream f of EEBM/ILFBM: missing populations
/// are set so the zeroth moment equals target_moment.
void apply_dirichlet_equilibrium(DistributionField& f, int ix, int iy, double target_moment);

/// Fills every undefined population on non-periodic faces, honoring the
/// corner rules: bounce-back/Neumann-side populations first, Dirichlet
/// closures last. Must run after interior streaming is complete.
void fill_boundaries(DistributionField& q, const DistributionField& post_collision,
                     const BoundarySpec& bcs, const BoundaryContext& ctx);

} // namespace slbm
