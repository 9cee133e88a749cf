#pragma once

#include <psel/types.hpp>

#include <span>

namespace psel {

// All metrics take a ranking as candidate ids in rank order (position 1 first) and
// the ground-truth dependencies. Every one throws MetricError(EmptyDeps) on empty deps.

/// |deps ∩ top-n| / |deps|
double cover_at(std::span<const ConstantId> ranking, const ConstantSet& deps, std::size_t n = 100);

/// |deps ∩ top-n| / min(n, |ranking|); 0 for an empty ranking.
double precision_at(std::span<const ConstantId> ranking, const ConstantSet& deps, std::size_t n = 100);

/// Smallest n with deps ⊆ top-n, or cutoff + 1 when some dependency is not ranked.
std::size_t full_recall(std::span<const ConstantId> ranking, const ConstantSet& deps, std::size_t cutoff = 1024);

/// Mean 1-based position of the dependencies; unranked ones count as cutoff + 1.
double avg_rank(std::span<const ConstantId> ranking, const ConstantSet& deps, std::size_t cutoff = 1024);

/// Fraction of (used, unused) pairs in which the used premise comes first in the
/// complete order over the candidate pool. Used premises are deps present in the order.
/// Throws MetricError(DegenerateClasses) if either class is empty.
double auc(std::span<const ConstantId> full_order, const ConstantSet& deps);

} // namespace psel
