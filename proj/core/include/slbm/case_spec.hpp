#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slbm/boundary.hpp"
#include "slbm/lattice.hpp"
#include "slbm/method.hpp"

namespace slbm {

enum class InitialKind { StefanExact, Uniform };

/// Parse-level boundary request; resolved to a concrete population closure
/// per scheme when the run is assembled (dirichlet -> q closure for IREBM,
/// equilibrium closure otherwise; neumann -> q closure on d2q5 IREBM,
/// bounce-back otherwise). The explicit spellings force one flavor.
struct FaceSpec {
  enum class Kind {
    Dirichlet,
    DirichletOnQ,
    DirichletEquilibrium,
    Neumann,
    NeumannOnQ,
    BounceBack,
    Periodic,
  };
  Kind kind = Kind::Periodic;
  double value = 0.0;
};

struct OutputSpec {
  std::string dir = ".";
  std::string interface_trace;   // CSV filenames; empty disables the output
  std::string final_profile;
  std::string diagonal_profile;
  std::string isolines;
  std::string conservation_trace;
  std::vector<double> isoline_levels;
  std::vector<double> snapshot_times; // nondimensional; diagonal/isolines written per snapshot
  long sample_every = 0;              // trace cadence in steps; 0 picks ~500 samples per run
};

/// Complete description of one benchmark run: grid, scheme, boundary data,
/// initial condition, end time and requested outputs.
struct CaseSpec {
  // [case]
  int dimension = 1;
  LatticeKind lattice = LatticeKind::D1Q3;
  int n = 0;          // nodes per axis
  double side = 1.0;  // nondimensional domain side length
  double ste = 0.0;
  double t_end = 0.0;
  InitialKind initial = InitialKind::Uniform;
  double theta_init = 0.0; // uniform initial temperature
  double theta0 = 0.0;     // far-field solid temperature of the similarity solution
  double x_front0 = 0.0;   // initial front position for the similarity initial condition

  // [scheme]
  Method method = Method::IREBM;
  double tau = 0.0; // exactly one of tau/dt must be set (> 0)
  double dt = 0.0;
  double delta = 0.0;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  double inner_tol = 1e-8;
  int inner_max_iter = 100;

  // [boundaries]
  std::array<FaceSpec, 4> boundaries{}; // indexed by Face

  // [output]
  OutputSpec output;

  double dx() const { return side / (n - 1); }
  double resolved_dt() const; // from dt or tau
  double resolved_tau() const;

  void validate() const; // throws ConfigError with the offending key path
};

/// Parses the flat key/value document with [case], [scheme], [boundaries]
/// and [output] sections. Unknown keys, missing required keys and invariant
/// violations throw ConfigError naming the key.
CaseSpec parse_case(const std::string& text);

/// Canonical document for a spec; parse_case(serialize_case(s)) reproduces s.
std::string serialize_case(const CaseSpec& spec);

/// Applies "key=value" or "section.key=value" onto an existing spec.
void apply_override(CaseSpec& spec, const std::string& assignment);

/// Built-in benchmark definitions: "stefan1d" (melting bar, similarity
/// initial data) and "freeze2d" (quarter cavity, uniform liquid suddenly
/// cooled at two walls). Throws ConfigError for unknown names.
CaseSpec preset(std::string_view name);
bool is_preset(std::string_view name);

/// FNV-1a hash of the canonical serialization; stamped into output files so
/// results can be traced back to their exact configuration.
std::uint64_t case_hash(const CaseSpec& spec);

std::string_view to_string(InitialKind k);
std::string_view to_string(FaceSpec::Kind k);

} // namespace slbm
