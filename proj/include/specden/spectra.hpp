#pragma once

#include <cstdint>
#include <utility>

#include "specden/measure.hpp"

namespace specden {

// Spectral density of a cycle of odd length ell: atoms cos(2*pi*k/ell) with
// mass 2/ell for 0 < k < ell/2, plus 1 with mass 1/ell. Disjoint unions of
// equal cycles share this density.
SpectralMeasure cycle_spectrum(int ell);

// Spectral density of an even cycle of length two_ell: atoms cos(2*pi*k/two_ell)
// with mass 2/two_ell for 0 < k < two_ell/2, plus +-1 each with mass 1/two_ell.
SpectralMeasure cycle_spectrum_even(int two_ell);

// Closed-form spectra of the moment-lower-bound pair: 2n ell-cycles (G1) or
// n 2ell-cycles (G2), ring weight 1/4, uniform overlay on the 2nl cycle
// vertices, plus 2nl unit self-loop vertices. Ring spectrum halved with its
// top eigenvalue dropped; eigenvalue 1 carries mass (2nl+1)/(4nl).
std::pair<SpectralMeasure, SpectralMeasure> mom_instance_spectrum(int ell, int64_t n);

// Same without the isolated block: 2nl atoms, single eigenvalue 1 of mass 1/(2nl).
std::pair<SpectralMeasure, SpectralMeasure> rw_instance_spectrum(int ell, int64_t n);

// Spectra of the two unweighted cycle mixtures: G1 mixes alpha*n cycles of
// length 2*ell with 2*(1-alpha)*n cycles of length ell; G2 swaps the roles.
std::pair<SpectralMeasure, SpectralMeasure> mixture_spectrum(int ell, double alpha, int64_t n);

}  // namespace specden
