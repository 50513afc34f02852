#pragma once

#include <span>

#include "qtherm/models.hpp"

namespace qtherm {

enum class PriorFamily { complex_q, quat_q, real_q, class_q, kmb_q };

/// The prior family over the Bloch ball paired with a Gibbs family via u = 1 - beta.
struct PriorKind {
  PriorFamily family;
  double u;

  /// Rejects u >= 1 (not normalisable).
  PriorKind(PriorFamily f, double u_value);
  static PriorKind for_gibbs(Model model, double beta);

  Model model() const;
  double beta() const { return 1.0 - u; }
};

/// Number of angular coordinates: complex 2 (theta, phi), quaternionic 4
/// (theta1, theta2, theta3, phi), real 1 (phi), classical 0, KMB 2.
int angle_count(PriorFamily family);
/// Integral of the angular Jacobian: 4 pi, 8 pi^2/3, 2 pi, 1, 4 pi.
double angular_mass(PriorFamily family);

/// Density at (r, angles) including its Jacobian (e.g. r^2 sin theta), so it
/// integrates to 1 against dr d(angles). Polar angles in [0, pi], the last
/// angle phi in [0, 2 pi).
double prior_density(const PriorKind& kind, double r, std::span<const double> angles);

/// Density of E = -ln(1 - r^2) induced by kind with the angles integrated out,
/// using dr/dE = e^-E / (2 r). Equals pdf(kind.model(), beta, E) with
/// beta = 1 - u; beta must match kind.
double transform_to_gibbs(const PriorKind& kind, double E, double beta);

/// Complex prior as a density in Cartesian (x, y, z) inside the unit ball.
double complex_cartesian_density(double u, double x, double y, double z);
/// Complex prior in X = x^2, Y = y^2, Z = z^2: the Dirichlet(1/2, 1/2, 1/2, 1-u)
/// density on X + Y + Z < 1.
double complex_dirichlet_density(double u, double X, double Y, double Z);

}  // namespace qtherm
