#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "smr/model.hpp"
#include "smr/source.hpp"

namespace smr {

enum class ReductionKind {
  psmi,
  pad_forbidden,
  pad_forced,
  exactmm_forced,
  e3sat,
  vc_sr,
  indset_maxforced,
  w2sat_sr,
  vc_sr_deg3,
};

std::string to_string(ReductionKind kind);
ReductionKind parse_reduction_kind(const std::string& text);

struct ReductionOptions {
  // Drop the "rest" blocks that complete the lists.
  bool truncate_rest = false;
};

enum class PadMode { forbidden, forced };

// A constructed target. Gadget vertices carry role names (instance.roles())
// that the verifier uses to assemble witnesses.
struct Reduction {
  ReductionKind kind = ReductionKind::psmi;
  Instance instance;
  RestrictionSet restrictions;
  int k = 0;  // K for psmi and exactmm, C for padding
  PadMode mode = PadMode::forbidden;
  ReductionOptions options;
};

Reduction reduce_psmi(const Instance& src, int k, const ReductionOptions& options = {});

Reduction pad_with_garbage(const Instance& src, int c, PadMode mode,
                           const ReductionOptions& options = {});

// src must be bipartite with one side of degree 2 and the other of degree 3;
// degree-2 vertices form the men's side. Requires 0 <= k <= min side sizes.
Reduction reduce_exactmm_forced(const Graph& src, int k);

Reduction reduce_e3sat(const CnfFormula& f);

// The 24-cycle variable gadget with its 20 pendant forbidden edges and no
// clause wiring, for isolated checks. Roles as in reduce_e3sat, variable 1.
Reduction e3sat_variable_gadget();

Reduction reduce_vc_sr(const Graph& g, PadMode mode, const ReductionOptions& options = {});
Reduction reduce_indset_maxforced(const Graph& g, const ReductionOptions& options = {});
Reduction reduce_w2sat_sr(const CnfFormula& f, const ReductionOptions& options = {});
Reduction reduce_vc_sr_deg3(const Graph& g);

enum class SourceKind {
  vertex_cover,
  independent_set,
  exact_maximal_matching,
  psmi,
  e3sat22,
  w2sat,
};

struct SourceProblem {
  SourceKind kind = SourceKind::vertex_cover;
  std::variant<Graph, CnfFormula, Instance> payload;
  int k = 0;
};

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus status);

struct VerifyOptions {
  // Largest target (in agents) handed to the exact target-side oracles.
  int max_target_agents = 80;
};

struct ReductionReport {
  Reduction target;
  CheckStatus forward_check = CheckStatus::skipped;
  CheckStatus equivalence_check = CheckStatus::skipped;
  std::vector<std::string> details;
};

// Throws InvalidArgument when the source kind does not fit the construction.
ReductionReport verify_reduction(const SourceProblem& src, const Reduction& constructed,
                                 const VerifyOptions& options = {});

}  // namespace smr
