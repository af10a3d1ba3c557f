#pragma once

#include <array>
#include <string>
#include <vector>

#include "qdr/grading.hpp"
#include "qdr/sparse.hpp"

namespace qdr {

// Cochain complex with a basis per degree 0..top and a filtration index per
// basis element (the differential never lowers it).
struct GradedComplex {
  int top = -1;
  std::vector<int> dims;
  std::vector<std::vector<int>> filtration;
  std::vector<SparseMatrix> d;  // d[t]: degree t -> t+1, t = 0..top-1
};

// Cohomology in degrees 0..up_to (< top). Throws ComplexViolation if d^2 != 0.
std::vector<int> complex_cohomology(const GradedComplex& c, int up_to);

struct PageEntry {
  int m = 0, n = 0;  // filtration index and complementary degree
  int dim = 0;
  int d_rank = 0;  // rank of d_r leaving this spot
};

struct SpectralPages {
  std::vector<std::vector<PageEntry>> pages;  // pages[r-1] = E_r
  std::vector<PageEntry> e_infinity;
  int r_infinity = 0;
};

SpectralPages filtered_pages(const GradedComplex& c, int up_to, int r_max);

struct EngineOptions {
  TruncationPolicy policy;
  int jobs = 1;
  bool check_stability = true;
};

// One sector of the total complex with its bases and differential matrices.
struct TruncatedComplex {
  ModelPtr model;
  int D = 0;
  SectorKey sector;
  std::vector<std::vector<BasisElement>> basis;        // per total degree 0..D+1
  std::vector<std::vector<std::array<int, 3>>> grade;  // (p, k, n) per basis element
  GradedComplex complex;                               // filtration m = p + k
};

TruncatedComplex assemble_sector(const ModelPtr& m, int D, const SectorKey& s, const TruncationPolicy& pol);
KElement basis_element(const ModelPtr& m, const std::array<int, 3>& grade, const BasisElement& b);

struct SectorResult {
  SectorKey sector;
  std::vector<int> dims;
  bool box_stable = true;
  size_t basis_size = 0;
};

struct CohomologyReport {
  std::vector<int> dims;
  std::vector<SectorResult> sectors;
  bool stabilized = true;
  std::vector<std::string> notes;
};

CohomologyReport total_cohomology(const ModelPtr& m, int D, const EngineOptions& opt = {});
// Simplicial de Rham double complex of ambient forms, differential
// Cech + (-1)^n d; independent of the quotient construction.
CohomologyReport oracle_total(const ModelPtr& m, int D, const EngineOptions& opt = {});
// Level-0 invariant complex with phi + d; torus or finite groups only.
CohomologyReport cartan_total(const ModelPtr& m, int D, const EngineOptions& opt = {});

struct PagesReport {
  SpectralPages pages;
  bool stabilized = true;
  std::vector<std::string> notes;
};

// Filtration by m = p + k of the total complex, summed over sectors.
PagesReport spectral_pages(const ModelPtr& m, int D, int r_max, const EngineOptions& opt = {});
// The (phi, cech) double complex at fixed p, filtered by k.
PagesReport fixed_p_pages(const ModelPtr& m, int D, int p, int r_max, const EngineOptions& opt = {});

}  // namespace qdr
