#pragma once
#include <cstdint>
#include <gmpxx.h>

namespace pft {

// Number of monotone lattice paths from height n to first reaching 0 in
// exactly t steps, i.e. the ballot number (n/t) * C(t, (t+n)/2) * t ... kept
// exact: returns C(t, (t+n)/2) * n / t as an integer (0 when t < n or
// t - n odd).
mpz_class walk_paths(int n, int t);

// First-passage weight of absorption at step t for a chain started at n with
// per-step probabilities: 1/4 stay-and-finish, 1/2 down, 1/4 up.  This is the
// probability that a teleportation cascade started with block size n fails
// exactly at round t.
double walk_absorption_term(int n, int t);

// Overall success probability 1 - sum_t absorption(t); the tail beyond the
// truncation point is certified below 1e-9.
double walk_success(int n);

// Direct Monte-Carlo estimate of the same probability.
double walk_success_mc(int n, long long trials, uint64_t seed,
                       int workers = 1);

}  // namespace pft
