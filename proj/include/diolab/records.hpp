#pragma once

#include <vector>

#include "diolab/orbit.hpp"

namespace dio {

struct RecordEntry {
    mpz_class t;
    Real delta;  // ||t x + y||
};

// Best inhomogeneous approximation times of the orbit m -> ||m x + y||
// scanned over start <= m <= scan_bound. A time is a record iff its
// distance is strictly smaller than at every earlier time in the window;
// the first time is vacuously a record. If a record distance is exactly
// zero the scan stops early (nothing can follow a zero).
struct RecordSequence {
    TorusVector x, y;
    mpz_class start;       // first scanned time (1 for the classical scan)
    mpz_class scan_bound;  // N
    std::vector<RecordEntry> entries;
    bool hit_zero = false;

    // index of the last record with t <= n, or -1
    long last_record_before(const mpz_class& n) const;
};

RecordSequence scan_records(const TorusVector& x, const TorusVector& y,
                            const mpz_class& N, const mpz_class& start = 1,
                            const PrecisionContext& ctx = {});

// Deterministic block-parallel variant; value-identical to the sequential
// scan (per-block minima are computed in parallel, records merged
// sequentially). Exact-rational inputs only.
RecordSequence scan_records_parallel(const TorusVector& x, const TorusVector& y,
                                     const mpz_class& N, int jobs,
                                     const PrecisionContext& ctx = {});

// min_{ell <= m <= n} ||m x + y||, exact or a certified enclosure.
Real window_min(const TorusVector& x, const TorusVector& y, const mpz_class& ell,
                const mpz_class& n, const PrecisionContext& ctx = {});

// Brute-force min over 1 <= n <= B of n * ||n x||^d, with the minimizing n
// of the upper bound. Used as the bad-approximability constant c of the
// bad-return gap.
struct HomogeneousMin {
    Real value;
    mpz_class argmin;
};
HomogeneousMin min_homogeneous(const TorusVector& x, const mpz_class& B, int d,
                               const PrecisionContext& ctx = {});

}  // namespace dio
