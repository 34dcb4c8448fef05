#ifndef GSCBEAM_GSC_HPP
#define GSCBEAM_GSC_HPP

#include "gscbeam/types.hpp"

namespace gscbeam {

// Sidelobe-canceler weight split: a fixed quiescent branch v*a0 minus an
// adaptive branch B*w that lives in the orthogonal complement of a0.
struct GscWeights {
  double v = 1.0;
  CVec quiescent;  // v * a0
  CVec adaptive;   // w, length M-1
};

GscWeights make_gsc_weights(double v, const CVec& a0, const CVec& adaptive);

// M x (M-1) matrix with orthonormal columns spanning the complement of a0,
// built from a column-pivoted QR of the projector I - a0 a0^H. Deterministic
// for a given a0.
CMat blocking_matrix(const CVec& a0);

// Alternative complement basis from a plain Householder QR of a0. Spans the
// same subspace with different coordinates; used to confirm that results do
// not depend on the basis choice.
CMat blocking_matrix_householder(const CVec& a0);

// v*a0 - B*w
CVec effective_weight(const GscWeights& weights, const CMat& blocking);

// y = w_eff^H r
cplx gsc_output(const CVec& w_eff, const CVec& r);

}  // namespace gscbeam

#endif
