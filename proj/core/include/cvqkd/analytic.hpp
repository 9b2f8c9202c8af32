#pragma once

// Closed-form conclusive probabilities, bit error rates, resend mixtures and
// outcome densities for the four-state phase-coding protocol with homodyne
// post-selection, with and without an intercept-resend eavesdropper.
//
// All mixtures are conditioned on Alice sending |alpha> and Bob measuring the
// matching quadrature; the other three signal states follow by rotation.

#include "cvqkd/model.hpp"

namespace cvqkd::analytic {

// (2/sqrt(pi)) * integral_x^inf e^{-t^2} dt, relative error <= 1e-12 on |x| <= 10.
double erfc(double x);

struct BerResult {
  double conclusive_prob = 0.0;
  double ber = 0.0;
};

// Post-selection probability and BER for a single coherent state of the given
// mean photon number at Bob's detector, thresholded at x0.
double conclusive_prob_coherent(double received_intensity, double x0);
BerResult ber_coherent(double received_intensity, double x0);

// No eavesdropper: Bob receives |+-sqrt(eta mu_a)>.
double conclusive_prob_absence(const ProtocolParams& params);
// Throws NoConclusiveEvents when the conclusive probability underflows to 0.
BerResult ber_absence(const ProtocolParams& params);

// Single-photon-detection attack. Eve sits at Alice's output, so mu_a is the
// unattenuated intensity.
ResendMixture spda_mixture(double mu_a, const EveDetector& detector);

// Simultaneous-measurement attack. P+, P- and P_perp are one-dimensional
// Gauss-Kronrod integrals of erfc against a Gaussian (absolute tolerance
// 1e-9); P_perp is integrated independently and the sum is checked against 1.
// Throws NumericalError if the quadrature does not converge.
ResendMixture sma_mixture(double mu_a);

// Mixture for the given attack; kNone yields ResendMixture::identity().
ResendMixture resend_mixture(double mu_a, const AttackConfig& attack);

double conclusive_prob_presence(const ResendMixture& mix, double mu_e, double x0);
// Throws NoConclusiveEvents when the conclusive probability is 0.
BerResult ber_presence(const ResendMixture& mix, double mu_e, double x0);

// Density of Bob's outcome in the frame where Alice sent |alpha>.
double outcome_density_absence(const ProtocolParams& params, Basis basis, double x);
double outcome_density_presence(const ResendMixture& mix, double mu_e, Basis basis, double x);

// Closed-form probability mass of the same densities on [lo, hi].
double outcome_mass_absence(const ProtocolParams& params, Basis basis, double lo, double hi);
double outcome_mass_presence(const ResendMixture& mix, double mu_e, Basis basis, double lo,
                             double hi);

}  // namespace cvqkd::analytic
