#include "gscbeam/gsc.hpp"

#include <stdexcept>

namespace gscbeam {

GscWeights make_gsc_weights(double v, const CVec& a0, const CVec& adaptive) {
  GscWeights w;
  w.v = v;
  w.quiescent = v * a0;
  w.adaptive = adaptive;
  return w;
}

CMat blocking_matrix(const CVec& a0) {
  const Eigen::Index m = a0.size();
  if (m < 2) throw std::invalid_argument("blocking_matrix: need at least 2 sensors");
  if (a0.norm() < 1e-12) throw std::invalid_argument("blocking_matrix: zero steering vector");
  const CMat projector = CMat::Identity(m, m) - a0 * a0.adjoint();
  Eigen::ColPivHouseholderQR<CMat> qr(projector);
  // projector has rank m-1; its range is exactly the complement of a0
  return qr.householderQ() * CMat::Identity(m, m - 1);
}

CMat blocking_matrix_householder(const CVec& a0) {
  const Eigen::Index m = a0.size();
  if (m < 2) throw std::invalid_argument("blocking_matrix: need at least 2 sensors");
  if (a0.norm() < 1e-12) throw std::invalid_argument("blocking_matrix: zero steering vector");
  CMat col(m, 1);
  col.col(0) = a0;
  Eigen::HouseholderQR<CMat> qr(col);
  const CMat q = qr.householderQ() * CMat::Identity(m, m);
  return q.rightCols(m - 1);
}

CVec effective_weight(const GscWeights& weights, const CMat& blocking) {
  if (blocking.rows() != weights.quiescent.size() || blocking.cols() != weights.adaptive.size())
    throw std::invalid_argument("effective_weight: dimension mismatch");
  return weights.quiescent - blocking * weights.adaptive;
}

cplx gsc_output(const CVec& w_eff, const CVec& r) {
  if (w_eff.size() != r.size()) throw std::invalid_argument("gsc_output: dimension mismatch");
  return w_eff.dot(r);
}

}  // namespace gscbeam
