#include "qdr/simplicial_util.hpp"

#include "qdr/error.hpp"

namespace qdr {

LaurentPoly frame_derivative(const LaurentPoly& f, int var, CoframeKind kind) {
  return kind == CoframeKind::log ? f.euler(var) : f.partial(var);
}

PolyMatrix coframe_jacobian(const RingHom& h, const std::vector<CoframeKind>& src,
                            const std::vector<CoframeKind>& tgt) {
  const RingPtr& rs = h.target();
  if (static_cast<int>(src.size()) != rs->size() || static_cast<int>(tgt.size()) != h.source()->size())
    throw StructuralError("coframe kinds do not match rings");
  PolyMatrix j(rs, rs->size(), h.source()->size());
  for (int y = 0; y < h.source()->size(); ++y) {
    const LaurentPoly& img = h.images()[static_cast<size_t>(y)];
    LaurentPoly inv;
    if (tgt[static_cast<size_t>(y)] == CoframeKind::log) inv = img.inverse_monomial();
    for (int x = 0; x < rs->size(); ++x) {
      LaurentPoly d = frame_derivative(img, x, src[static_cast<size_t>(x)]);
      if (d.is_zero()) continue;
      j.at(x, y) = tgt[static_cast<size_t>(y)] == CoframeKind::log ? d * inv : d;
    }
  }
  return j;
}

std::vector<LaurentPoly> bracket(const std::vector<LaurentPoly>& v, const std::vector<LaurentPoly>& w,
                                 const std::vector<CoframeKind>& kinds) {
  const size_t n = kinds.size();
  if (v.size() != n || w.size() != n) throw StructuralError("vector field size mismatch");
  auto apply = [&](const std::vector<LaurentPoly>& field, const LaurentPoly& f) {
    LaurentPoly out(f.ring());
    for (size_t y = 0; y < n; ++y)
      if (!field[y].is_zero()) out += field[y] * frame_derivative(f, static_cast<int>(y), kinds[y]);
    return out;
  };
  std::vector<LaurentPoly> out;
  out.reserve(n);
  for (size_t x = 0; x < n; ++x) out.push_back(apply(v, w[x]) - apply(w, v[x]));
  return out;
}

}  // namespace qdr
