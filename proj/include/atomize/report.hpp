#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace atomize {

struct BackboneResult {
    std::vector<int> core; // sorted ascending
    std::vector<int> dead; // sorted ascending
};

enum class AtomicSetKind { core, dead, regular };

inline const char* to_string(AtomicSetKind kind) {
    switch (kind) {
    case AtomicSetKind::core: return "core";
    case AtomicSetKind::dead: return "dead";
    case AtomicSetKind::regular: return "regular";
    }
    return "?";
}

struct AtomicSet {
    AtomicSetKind kind = AtomicSetKind::regular;
    std::vector<int> members; // sorted ascending, size >= 2

    friend bool operator==(const AtomicSet&, const AtomicSet&) = default;
};

struct GntStats {
    std::uint64_t sat_calls = 0;
    std::uint64_t pivots = 0;
    /// Sum over pivots of |C \ decided| for the confined candidate set C.
    std::uint64_t candidate_sum = 0;
    std::uint64_t pair_tests = 0;
    std::uint64_t pruned_by_refutation = 0;
    std::uint64_t pruned_by_confinement = 0;
};

/// Atomic sets of a formula: the core and dead sets (reported as sets only
/// when they have >= 2 members) plus the regular sets, sorted by minimum
/// member. Regular sets are pairwise disjoint and disjoint from the backbone.
struct AtomicSetReport {
    std::vector<AtomicSet> sets;
    BackboneResult backbone;
    GntStats stats;

    int set_count() const { return static_cast<int>(sets.size()); }
    int variables_in_sets() const {
        int total = 0;
        for (const auto& s : sets) total += static_cast<int>(s.members.size());
        return total;
    }
    int max_set_size() const {
        int best = 0;
        for (const auto& s : sets) best = std::max(best, static_cast<int>(s.members.size()));
        return best;
    }
};

/// Structural equality of two reports: same backbone, same sets as a
/// set-of-sets. Stats are ignored.
inline bool same_partition(const AtomicSetReport& a, const AtomicSetReport& b) {
    return a.backbone.core == b.backbone.core && a.backbone.dead == b.backbone.dead &&
           a.sets == b.sets;
}

/// Assembles a report from its parts: sorts member lists, attaches the core
/// and dead sets when they qualify (size >= 2) and orders everything by
/// minimum member.
inline AtomicSetReport make_report(BackboneResult backbone, std::vector<std::vector<int>> regular_sets,
                                   GntStats stats = {}) {
    AtomicSetReport report;
    std::sort(backbone.core.begin(), backbone.core.end());
    std::sort(backbone.dead.begin(), backbone.dead.end());
    if (backbone.core.size() >= 2)
        report.sets.push_back({AtomicSetKind::core, backbone.core});
    if (backbone.dead.size() >= 2)
        report.sets.push_back({AtomicSetKind::dead, backbone.dead});
    for (auto& members : regular_sets) {
        std::sort(members.begin(), members.end());
        report.sets.push_back({AtomicSetKind::regular, std::move(members)});
    }
    std::sort(report.sets.begin(), report.sets.end(), [](const AtomicSet& x, const AtomicSet& y) {
        return x.members.front() < y.members.front();
    });
    report.backbone = std::move(backbone);
    report.stats = stats;
    return report;
}

} // namespace atomize
