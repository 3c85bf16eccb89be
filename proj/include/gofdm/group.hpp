#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gofdm/types.hpp"

namespace gofdm {

// Cyclic subgroup H = <d> of Z_n together with its annihilator H_perp = <n/d>.
// H models a periodic set of nulled subcarriers; H_perp is the admissible
// delay-domain tap support under Fourier duality.
struct SubgroupSpec {
    int n = 0;
    int d = 0;
    std::vector<int> elements_h;       // {0, d, 2d, ...} mod n, size n/d
    std::vector<int> elements_h_perp;  // {0, n/d, 2n/d, ...} mod n, size d
};

// All divisors of n in strictly increasing order.
std::vector<int> divisors(int n);

// Builds <d> and <n/d>. Throws std::invalid_argument if d does not divide n.
SubgroupSpec subgroup(int n, int d);

// Character-side annihilator by exhaustive integer test:
// { k in Z_n : k*h == 0 (mod n) for all h in elements }.
// Pure integer arithmetic; serves as the oracle for subgroup().
std::vector<int> annihilator_bruteforce(int n, const std::vector<int>& elements);
std::vector<int> annihilator_bruteforce(const SubgroupSpec& spec);

// Orthogonal projection onto vectors supported on elements_h_perp:
// keeps h[m] for m in H_perp, zeroes everything else.
Cvec project(const Cvec& h, const SubgroupSpec& spec);

// Fraction of |h|^2 energy lying on H_perp. Scale invariant.
// Throws on length mismatch or an all-zero input.
double energy_ratio(const Cvec& h, const SubgroupSpec& spec);

// Energy ratios of one vector across every candidate divisor of n.
// ratios is nondecreasing along the divisor-divisibility partial order.
struct EnergyProfile {
    std::vector<int> divisors;
    std::vector<double> ratios;
    double e_total = 0.0;
};

EnergyProfile compute_energy_profile(const Cvec& h);

// One pass of the divisor scan: candidates in increasing numeric order,
// stopping at the first d with ratio strictly above 1 - epsilon (d = n always
// passes for epsilon > 0, so the scan terminates with a defined divisor).
// `ops` counts elements touched, for complexity instrumentation.
struct DivisorScan {
    int chosen_d = 0;
    std::vector<std::pair<int, double>> trace;  // (d, R_d) visited, increasing d
    double e_total = 0.0;
    std::uint64_t ops = 0;
};

// Precondition: h has positive energy.
DivisorScan scan_divisors(const Cvec& h, double epsilon);

// Smallest-d subgroup whose annihilator captures more than (1 - epsilon) of
// the energy of h. Throws on zero-energy input.
SubgroupSpec minimal_subgroup(const Cvec& h, double epsilon);

}  // namespace gofdm
