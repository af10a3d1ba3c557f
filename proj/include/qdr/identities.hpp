#pragma once

#include <string>
#include <vector>

#include "qdr/engine.hpp"

namespace qdr {

struct IdentityResult {
  std::string name;
  int checked = 0;
  int failures = 0;
  std::string witness;  // first failure
};

struct SuiteOptions {
  int max_degree = 4;  // total degree of the tested basis elements
  TruncationPolicy policy{2, 1};
  int cup_triples = 200;
  int cup_pairs = 100;
  unsigned seed = 1;
  int structure_levels = 3;  // validate_structure up to this level; -1 skips it
  int jobs = 1;
};

struct SuiteReport {
  std::string model;
  std::vector<IdentityResult> results;
  bool ok() const;
  const IdentityResult* first_failure() const;
};

// Differential identities on every sector basis element of total degree
// <= max_degree, plus randomized cup-product laws.
SuiteReport run_identity_suite(const ModelPtr& m, const SuiteOptions& opt = {});
// Only the differential identities (no cup sampling, no structure checks).
SuiteReport run_differential_identities(const ModelPtr& m, const SuiteOptions& opt = {});
SuiteReport run_cup_laws(const ModelPtr& m, const SuiteOptions& opt = {});

struct MutationOutcome {
  std::string flag;
  std::string model;
  bool detected = false;
  std::string identity;  // first failing identity
  std::string witness;
};

// Flips each sign convention in turn and reports whether the suite notices.
std::vector<MutationOutcome> mutation_sensitivity(const SuiteOptions& opt = {});

}  // namespace qdr
