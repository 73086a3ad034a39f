#pragma once

#include "gcsync/types.hpp"

namespace gcsync {

enum class Alphabet { binary, qpsk, qam16 };

// A complementary sequence pair: the aperiodic autocorrelations of a and b
// sum to 2*L*E at lag 0 and to zero at every other lag, E being the mean
// per-element energy of the pair.
struct GolayPair {
    cvec a;
    cvec b;
    Alphabet alphabet = Alphabet::binary;

    std::size_t length() const { return a.size(); }
};

struct ComplementarityReport {
    double peak = 0.0;           // lag-0 sum, equals 2*L*E
    double max_sidelobe = 0.0;   // max |sum| over lags != 0
    bool pass = false;           // sidelobe <= 1e-9 * peak
};

// Sum of the two aperiodic autocorrelations at every lag in [0, L).
ComplementarityReport verify_complementary(const GolayPair& p);

// Fixed bipolar length-26 pair, found by exhaustive search and validated by
// verify_complementary.
GolayPair golay_seed_26();

// Concatenation recursion (A||B, A||-B); doubles the length, preserves
// complementarity.
GolayPair golay_double(const GolayPair& p);

// Lift bipolar elements onto the QPSK diagonal: +1 -> (1+i)/sqrt(2),
// -1 -> -(1+i)/sqrt(2). A global unit-modulus rotation, so every
// correlation sum is preserved exactly.
GolayPair to_qpsk(const GolayPair& p);

// Conjugate-time-reversal companion (a2, b2) = (conj(reverse(b)),
// -conj(reverse(a))). For any complementary p the companion is itself
// complementary and, crucially, the cross-correlation sums of (p, companion)
// cancel identically, which makes the 16-QAM superposition below work.
GolayPair golay_companion(const GolayPair& p);

// Weighted superposition s = (2*p1 + p2)/sqrt(5) landing on the
// unit-mean-energy 16-QAM grid. Throws if the result fails the
// complementarity check, which gates the (p1, p2) pairing.
GolayPair to_16qam(const GolayPair& p1, const GolayPair& p2);

// The frozen length-416 16-QAM training pair: seed 26 -> QPSK -> four
// doublings -> superposition with the conjugate-time-reversal companion.
const GolayPair& training_pair_416();

}  // namespace gcsync
