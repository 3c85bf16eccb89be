#pragma once

#include <cstddef>
#include <cstdint>

#include "gofdm/types.hpp"

namespace gofdm {

// Two transform conventions coexist on purpose:
//  - signals use the unitary pair (1/sqrt(n) both ways), so norms are
//    preserved and noise variance is the same in both domains;
//  - the channel response uses the plain forward sum H[k] = sum h[m] e^{-j2пkm/n}
//    (no scaling), so Y[k] = H[k] X[k] + W[k] holds with unit-power symbols.

// Unitary inverse DFT: samples[m] = (1/sqrt(n)) * sum_k bins[k] e^{+j2pi km/n}.
TimeBlock idft_unitary(const FreqBlock& bins);

// Unitary forward DFT, exact inverse of idft_unitary.
FreqBlock dft_unitary(const TimeBlock& samples);

// Unscaled forward sum over a full-length (zero-padded) tap vector.
FreqBlock channel_freq_response(const TimeBlock& h_taps);

// Complex multiply-add count of one length-n transform (mixed-radix
// Cooley-Tukey butterflies). Used by complexity instrumentation.
std::uint64_t transform_work_ops(std::size_t n);

// Cyclic-prefix insertion/removal. add_cp prepends the last n_cp samples.
Cvec add_cp(const TimeBlock& t, std::size_t n_cp);
TimeBlock remove_cp(const Cvec& extended, std::size_t n_cp);

// y[m] = sum_l h[l] x[(m-l) mod n]; requires |h_taps| <= |x|.
TimeBlock circular_convolve(const TimeBlock& x, const Cvec& h_taps);

// Plain linear convolution, output length |x| + |h| - 1.
Cvec linear_convolve(const Cvec& x, const Cvec& h_taps);

}  // namespace gofdm
