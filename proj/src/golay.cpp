#include "gcsync/golay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gcsync/errors.hpp"

namespace gcsync {

namespace {

// Aperiodic autocorrelation sum_m s(m) s*(m+j) at lag j >= 0.
cplx acorr(const cvec& s, std::size_t j) {
    cplx acc{0.0, 0.0};
    for (std::size_t m = 0; m + j < s.size(); ++m) {
        acc += s[m] * std::conj(s[m + j]);
    }
    return acc;
}

}  // namespace

ComplementarityReport verify_complementary(const GolayPair& p) {
    if (p.a.size() != p.b.size()) {
        throw invalid_input_error("verify_complementary: length mismatch");
    }
    ComplementarityReport rep;
    if (p.a.empty()) return rep;
    rep.peak = std::abs(acorr(p.a, 0) + acorr(p.b, 0));
    for (std::size_t j = 1; j < p.a.size(); ++j) {
        rep.max_sidelobe =
            std::max(rep.max_sidelobe, std::abs(acorr(p.a, j) + acorr(p.b, j)));
    }
    rep.pass = rep.peak > 0.0 && rep.max_sidelobe <= 1e-9 * rep.peak;
    return rep;
}

GolayPair golay_seed_26() {
    static const int a[26] = {1, 1, 1, 1,  -1, 1,  1,  -1, -1, 1, -1, 1, -1,
                              1, -1, -1, 1, -1, 1,  1,  1,  -1, -1, 1, 1, 1};
    static const int b[26] = {1, 1, 1,  -1, -1, 1,  1,  1,  -1, 1, -1, -1, -1,
                              -1, -1, 1, -1, 1,  1,  -1, -1, 1, -1, -1, -1, -1};
    GolayPair p;
    p.alphabet = Alphabet::binary;
    p.a.reserve(26);
    p.b.reserve(26);
    for (int v : a) p.a.emplace_back(static_cast<double>(v), 0.0);
    for (int v : b) p.b.emplace_back(static_cast<double>(v), 0.0);
    return p;
}

GolayPair golay_double(const GolayPair& p) {
    if (!verify_complementary(p).pass) {
        throw invalid_input_error("golay_double: input pair is not complementary");
    }
    GolayPair out;
    out.alphabet = p.alphabet;
    const std::size_t L = p.length();
    out.a.reserve(2 * L);
    out.b.reserve(2 * L);
    out.a.insert(out.a.end(), p.a.begin(), p.a.end());
    out.a.insert(out.a.end(), p.b.begin(), p.b.end());
    out.b.insert(out.b.end(), p.a.begin(), p.a.end());
    for (const cplx& v : p.b) out.b.push_back(-v);
    return out;
}

GolayPair to_qpsk(const GolayPair& p) {
    if (p.alphabet != Alphabet::binary) {
        throw invalid_input_error("to_qpsk: expected a binary pair");
    }
    const cplx q{1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2};
    GolayPair out;
    out.alphabet = Alphabet::qpsk;
    out.a.reserve(p.a.size());
    out.b.reserve(p.b.size());
    for (const cplx& v : p.a) out.a.push_back(v * q);
    for (const cplx& v : p.b) out.b.push_back(v * q);
    return out;
}

GolayPair golay_companion(const GolayPair& p) {
    GolayPair out;
    out.alphabet = p.alphabet;
    const std::size_t L = p.length();
    out.a.resize(L);
    out.b.resize(L);
    for (std::size_t m = 0; m < L; ++m) {
        out.a[m] = std::conj(p.b[L - 1 - m]);
        out.b[m] = -std::conj(p.a[L - 1 - m]);
    }
    return out;
}

GolayPair to_16qam(const GolayPair& p1, const GolayPair& p2) {
    if (p1.a.size() != p1.b.size() || p2.a.size() != p2.b.size() ||
        p1.a.size() != p2.a.size()) {
        throw invalid_input_error("to_16qam: length mismatch");
    }
    const double s = 1.0 / std::sqrt(5.0);
    GolayPair out;
    out.alphabet = Alphabet::qam16;
    const std::size_t L = p1.length();
    out.a.resize(L);
    out.b.resize(L);
    for (std::size_t m = 0; m < L; ++m) {
        out.a[m] = (2.0 * p1.a[m] + p2.a[m]) * s;
        out.b[m] = (2.0 * p1.b[m] + p2.b[m]) * s;
    }
    if (!verify_complementary(out).pass) {
        throw invalid_input_error(
            "to_16qam: superposition fails the complementarity check");
    }
    return out;
}

const GolayPair& training_pair_416() {
    static const GolayPair frozen = [] {
        GolayPair p = to_qpsk(golay_seed_26());
        for (int i = 0; i < 4; ++i) p = golay_double(p);
        return to_16qam(p, golay_companion(p));
    }();
    return frozen;
}

}  // namespace gcsync
