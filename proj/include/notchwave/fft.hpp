#pragma once

#include "notchwave/types.hpp"

namespace notchwave {

// Discrete Fourier transforms, FFTW-backed, any length.
//
// Sign convention used throughout this project: the spectral coefficient of
// a sequence c at grid frequency f_k = k/n is
//
//   coef[k] = (1/sqrt(n)) * sum_m c(m) * exp(+j*2*pi*k*m/n)
//
// i.e. the inner product of c with the unit-norm steering vector whose
// elements are exp(-j*2*pi*f*m)/sqrt(n). All analysis in this code base
// (band operators, PSDs, spectrograms) uses this one convention so that a
// declared band and its measured notch land on the same bins.

// unnormalized, exp(-j 2 pi k m / n)
ComplexSequence fft_forward(const ComplexSequence& x);
// unnormalized, exp(+j 2 pi k m / n)
ComplexSequence fft_backward(const ComplexSequence& x);

// coef[k] = p_{k/n}^H x  (unitary analysis)
ComplexSequence spectrum_analysis(const ComplexSequence& x);
// x = sum_k coef[k] p_{k/n}  (unitary synthesis, inverse of the above)
ComplexSequence spectrum_synthesis(const ComplexSequence& coef);

}  // namespace notchwave
