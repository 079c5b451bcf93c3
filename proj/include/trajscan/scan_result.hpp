#pragma once

#include <array>
#include <cstddef>

#include "trajscan/discrepancy.hpp"

namespace trajscan {

struct ScanResult {
    Shape shape = Rect{};
    RegionStats stats;
    bool found = false;         // false: empty candidate set ("no region")
    std::size_t candidates = 0; // shapes evaluated
};

/// Lexicographic key used to break exact Phi ties deterministically.
std::array<double, 4> shape_key(const Shape& shape);

/// Strict preference: larger Phi, then the smaller shape key.
bool better(const ScanResult& a, const ScanResult& b);

/// Folds `candidate` into `best` using `better`; also accumulates candidate counts.
void merge_into(ScanResult& best, const ScanResult& candidate);

/// Worker count used by the scanners (0 = hardware concurrency).
void set_thread_count(unsigned threads);
unsigned thread_count();

}  // namespace trajscan
