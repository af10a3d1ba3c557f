#pragma once

#include <vector>

#include "qdr/laurent.hpp"
#include "qdr/model.hpp"
#include "qdr/poly_matrix.hpp"

namespace qdr {

// Derivation dual to the coframe element of variable `var`: d/dx or x d/dx.
LaurentPoly frame_derivative(const LaurentPoly& f, int var, CoframeKind kind);

// For a map X -> Y with pullback h: O(Y) -> O(X), J[x][y] is the coefficient of
// beta_x in h^*(beta_y).
PolyMatrix coframe_jacobian(const RingHom& h, const std::vector<CoframeKind>& src,
                            const std::vector<CoframeKind>& tgt);

// Lie bracket of vector fields given by components in the coframe-dual basis.
std::vector<LaurentPoly> bracket(const std::vector<LaurentPoly>& v, const std::vector<LaurentPoly>& w,
                                 const std::vector<CoframeKind>& kinds);

}  // namespace qdr
