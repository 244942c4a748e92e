#include "slbm/boundary.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "slbm/errors.hpp"
#include "slbm/schemes.hpp"

namespace slbm {

namespace {

const char* face_name(int f) {
  switch (f) {
  case XMin: return "x_min";
  case XMax: return "x_max";
  case YMin: return "y_min";
  case YMax: return "y_max";
  }
  return "?";
}

bool is_dirichlet(FaceConditionType t) {
  return t == FaceConditionType::DirichletOnQ || t == FaceConditionType::DirichletEquilibrium;
}

// Indices of populations left undefined by streaming at this node.
std::vector<int> missing_indices(const DistributionField& q, long node) {
  std::vector<int> out;
  for (int i = 0; i < q.lattice().q; ++i)
    if (std::isnan(q(i, node))) out.push_back(i);
  return out;
}

// Splits (rhs - sum of defined populations) over the NaN slots, weighted by w_i.
void moment_closure(DistributionField& q, long node, double rhs) {
  const auto& lat = q.lattice();
  double known = 0.0;
  double wsum = 0.0;
  for (int i = 0; i < lat.q; ++i) {
    const double v = q(i, node);
    if (std::isnan(v))
      wsum += lat.weights[i];
    else
      known += v;
  }
  if (wsum == 0.0) throw Error("boundary: moment closure on a node with no undefined population");
  const double deficit = rhs - known;
  for (int i = 0; i < lat.q; ++i)
    if (std::isnan(q(i, node))) q(i, node) = deficit * lat.weights[i] / wsum;
}

} // namespace

void BoundarySpec::validate(const LatticeDescriptor& lattice, Method method) const {
  const int nfaces = lattice.dim == 1 ? 2 : 4;
  for (int axis = 0; axis < lattice.dim; ++axis) {
    const auto lo = faces[axis == 0 ? XMin : YMin].type;
    const auto hi = faces[axis == 0 ? XMax : YMax].type;
    if ((lo == FaceConditionType::Periodic) != (hi == FaceConditionType::Periodic))
      throw ConfigError(std::string("boundaries: axis ") + (axis == 0 ? "x" : "y") +
                        " must be periodic on both faces or neither");
  }
  for (int f = 0; f < nfaces; ++f) {
    const auto t = faces[f].type;
    if ((t == FaceConditionType::DirichletOnQ || t == FaceConditionType::NeumannOnQ) &&
        method != Method::IREBM)
      throw ConfigError(std::string("boundaries.") + face_name(f) +
                        ": condition on q requires the IREBM scheme");
    if (t == FaceConditionType::DirichletEquilibrium && method == Method::IREBM)
      throw ConfigError(std::string("boundaries.") + face_name(f) +
                        ": equilibrium Dirichlet is for EEBM/ILFBM; use the q closure with IREBM");
    if (t == FaceConditionType::NeumannOnQ && lattice.kind != LatticeKind::D2Q5)
      throw ConfigError(std::string("boundaries.") + face_name(f) +
                        ": the zero-gradient q closure is only defined on d2q5");
  }
  if (lattice.dim == 2 && !axis_periodic(0) && !axis_periodic(1)) {
    for (int fx : {XMin, XMax}) {
      for (int fy : {YMin, YMax}) {
        if (is_dirichlet(faces[fx].type) && is_dirichlet(faces[fy].type) &&
            (faces[fx].value != faces[fy].value || faces[fx].value_next != faces[fy].value_next))
          throw ConfigError(std::string("boundaries: conflicting Dirichlet values at the ") +
                            face_name(fx) + "/" + face_name(fy) + " corner");
      }
    }
  }
}

void apply_dirichlet_on_q(DistributionField& q, int ix, int iy, double theta_dir_now,
                          double theta_dir_next, double Ste, double delta) {
  const double rhs = theta_dir_next +
                     (phi_delta(theta_dir_now, delta) - phi_delta(theta_dir_next, delta)) / Ste;
  moment_closure(q, q.node_index(ix, iy), rhs);
}

void apply_dirichlet_equilibrium(DistributionField& f, int ix, int iy, double target_moment) {
  moment_closure(f, f.node_index(ix, iy), target_moment);
}

void apply_bounceback(DistributionField& q, const DistributionField& post_collision, int ix,
                      int iy) {
  const long node = q.node_index(ix, iy);
  const auto& lat = q.lattice();
  for (int i = 0; i < lat.q; ++i)
    if (std::isnan(q(i, node))) q(i, node) = post_collision(lat.opposite[i], node);
}

void apply_neumann_on_q_d2q5(DistributionField& q, int ix, int iy) {
  if (q.lattice().kind != LatticeKind::D2Q5)
    throw Error("apply_neumann_on_q_d2q5: requires a d2q5 field");
  const auto& lat = q.lattice();
  const long node = q.node_index(ix, iy);
  const auto missing = missing_indices(q, node);
  if (missing.size() != 1)
    throw Error("apply_neumann_on_q_d2q5: expected exactly one undefined population, got " +
                std::to_string(missing.size()) + " (corner nodes use bounce-back)");
  const int i_x = missing[0];
  const int nbx = ix + lat.velocities[i_x][0];
  const int nby = iy + lat.velocities[i_x][1];
  if (nbx < 0 || nbx >= q.nx() || nby < 0 || nby >= q.ny())
    throw Error("apply_neumann_on_q_d2q5: interior neighbor lies outside the lattice");
  const long nb = q.node_index(nbx, nby);
  double sum_nb = 0.0;
  for (int i = 0; i < lat.q; ++i) sum_nb += q(i, nb);
  if (std::isnan(sum_nb))
    throw Error("apply_neumann_on_q_d2q5: neighbor populations are not fully defined");
  double sum_known = 0.0;
  for (int i = 0; i < lat.q; ++i)
    if (i != i_x) sum_known += q(i, node);
  q(i_x, node) = sum_nb - sum_known;
}

namespace {

struct NodeFaces {
  int count = 0;
  int face[2] = {-1, -1};
};

void fill_node(DistributionField& q, const DistributionField& omega, const BoundarySpec& bcs,
               const BoundaryContext& ctx, int ix, int iy, const NodeFaces& nf) {
  const auto& lat = q.lattice();
  const long node = q.node_index(ix, iy);

  auto dirichlet_fill = [&](const FaceCondition& c) {
    if (c.type == FaceConditionType::DirichletOnQ) {
      apply_dirichlet_on_q(q, ix, iy, c.value, c.value_next, ctx.Ste, ctx.delta);
    } else {
      const double target = ctx.moment_is_enthalpy
                                ? enthalpy_from_temperature(c.value_next, ctx.Ste)
                                : c.value_next;
      apply_dirichlet_equilibrium(q, ix, iy, target);
    }
  };

  if (nf.count == 1) {
    const FaceCondition& c = bcs.faces[nf.face[0]];
    switch (c.type) {
    case FaceConditionType::BounceBack: apply_bounceback(q, omega, ix, iy); break;
    case FaceConditionType::NeumannOnQ: apply_neumann_on_q_d2q5(q, ix, iy); break;
    case FaceConditionType::DirichletOnQ:
    case FaceConditionType::DirichletEquilibrium: dirichlet_fill(c); break;
    case FaceConditionType::Periodic: break;
    }
    return;
  }

  // Corner. Reflective populations (bounce-back / Neumann side) are filled
  // first, then any Dirichlet closure takes the remaining deficit.
  const FaceCondition& ca = bcs.faces[nf.face[0]];
  const FaceCondition& cb = bcs.faces[nf.face[1]];
  const bool a_dir = is_dirichlet(ca.type);
  const bool b_dir = is_dirichlet(cb.type);

  if (!a_dir && !b_dir) {
    apply_bounceback(q, omega, ix, iy);
    return;
  }
  if (a_dir && b_dir) {
    dirichlet_fill(ca); // values validated equal across the corner
    return;
  }

  const int neumann_face = a_dir ? nf.face[1] : nf.face[0];
  const int neumann_axis = neumann_face <= XMax ? 0 : 1;
  for (int i = 0; i < lat.q; ++i) {
    if (!std::isnan(q(i, node))) continue;
    const int sx = ix - lat.velocities[i][0];
    const int sy = iy - lat.velocities[i][1];
    const bool violates_neumann_axis = neumann_axis == 0 ? (sx < 0 || sx >= q.nx())
                                                         : (sy < 0 || sy >= q.ny());
    if (violates_neumann_axis) q(i, node) = omega(lat.opposite[i], node);
  }
  dirichlet_fill(a_dir ? ca : cb);
}

} // namespace

void fill_boundaries(DistributionField& q, const DistributionField& post_collision,
                     const BoundarySpec& bcs, const BoundaryContext& ctx) {
  const auto& lat = q.lattice();
  const int nx = q.nx();
  const int ny = q.ny();
  const bool x_open = !bcs.axis_periodic(0);
  const bool y_open = lat.dim == 2 && !bcs.axis_periodic(1);

  auto faces_at = [&](int ix, int iy) {
    NodeFaces nf;
    if (x_open && ix == 0) nf.face[nf.count++] = XMin;
    if (x_open && ix == nx - 1) nf.face[nf.count++] = XMax;
    if (y_open && iy == 0) nf.face[nf.count++] = YMin;
    if (y_open && iy == ny - 1) nf.face[nf.count++] = YMax;
    return nf;
  };

  if (x_open) {
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix : {0, nx - 1}) {
        fill_node(q, post_collision, bcs, ctx, ix, iy, faces_at(ix, iy));
      }
    }
  }
  if (y_open) {
    for (int ix = 0; ix < nx; ++ix) {
      if (x_open && (ix == 0 || ix == nx - 1)) continue; // corners handled above
      for (int iy : {0, ny - 1}) {
        fill_node(q, post_collision, bcs, ctx, ix, iy, faces_at(ix, iy));
      }
    }
  }
}

} // namespace slbm
