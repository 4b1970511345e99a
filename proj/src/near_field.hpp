#pragma once

// Local correction for the singular and nearly singular part of a boundary
// sum around a node z. Node-skipping alone leaves an O(h) error that varies
// from node to node; the correction removes it.
//
// Around z the density (minus its value at z) is replaced by a least-squares
// polynomial P in local chart coordinates. With a smooth cutoff chi supported
// in the disc of radius A,
//
//   int K f  ~  sum'_i w_i K_i f_i  +  int chi K P  -  sum'_i w_i chi_i K_i P_i,
//
// where the middle integral uses a polar rule centred at z (the polar
// Jacobian cancels the 1/rho singularity). The first and last sums differ only
// by terms that are smooth or small.

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cliffbie/geometry.hpp"
#include "cliffbie/operators.hpp"

namespace cliffbie::detail {

class NearField {
 public:
  struct Patch {
    std::vector<std::size_t> nodes;          // nodes with chi > 0, centre excluded
    std::vector<double> node_weight;         // w_i chi_i
    std::vector<std::array<double, 3>> point;
    std::vector<std::array<double, 3>> normal;
    std::vector<double> weight;              // polar weight * chi * jacobian
    Eigen::MatrixXd basis;                   // monomials at the patch nodes
    std::vector<Eigen::Index> fit_rows;      // nodes used by the fit, nearest first
    Eigen::VectorXd fit_weight;
    Eigen::HouseholderQR<Eigen::MatrixXd> fit;
  };

  NearField(const SurfaceMesh& mesh, const NearFieldRule& rule);

  double radius() const { return radius_; }
  Patch patch(std::size_t centre) const;

  /// Least-squares model of the columns of `values` (one row per patch node,
  /// holding f_i - f(z)). Fills the model at the polar points and at the
  /// patch nodes.
  void model(const Patch& p, const Eigen::MatrixXd& values, Eigen::MatrixXd& at_points,
             Eigen::MatrixXd& at_nodes) const;

  static double cutoff(double t);

 private:
  const SurfaceMesh* mesh_;
  NearFieldRule rule_;
  double radius_;
  double reach_factor_;  // chart distance < A implies ambient distance < reach_factor * A
  std::vector<std::array<int, 2>> exponents_;
  std::vector<std::array<double, 2>> polar_;  // unit disc
  std::vector<double> polar_weight_;
  Eigen::MatrixXd polar_basis_;

  void monomials(double s, double t, double* row) const;
};

}  // namespace cliffbie::detail
