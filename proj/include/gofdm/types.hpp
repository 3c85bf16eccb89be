#pragma once

#include <complex>
#include <vector>

namespace gofdm {

using cd = std::complex<double>;
using Cvec = std::vector<cd>;

// Length-n baseband sample block (time domain).
using TimeBlock = Cvec;
// Length-n per-subcarrier block (frequency domain).
using FreqBlock = Cvec;

inline double energy(const Cvec& v) {
    double e = 0.0;
    for (const cd& x : v) e += std::norm(x);
    return e;
}

}  // namespace gofdm
