#pragma once
// Acyclicity tables: one bit per configuration of a model cell's boundary,
// set iff the configuration is closed and carries trivial reduced homology.
// Thinning consults these instead of running a homology computation per cell.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "thincc/cell_model.hpp"
#include "thincc/errors.hpp"

namespace thincc {

// Answers "is this configuration acyclic?" in O(1)-ish time. Non-closed
// configurations always answer false. Implementations are safe for
// concurrent queries.
class AcyclicityOracle {
public:
    virtual ~AcyclicityOracle() = default;
    virtual ModelKind kind() const = 0;
    virtual bool operator()(ConfigMask mask) const = 0;
};

struct TableMeta {
    uint32_t format_version = 1;
    std::string generator_fingerprint;  // algorithm tag, not an input to equality
    bool closed_only = true;            // bits for non-closed configurations are 0
};

// Fully materialized bit array of length 2^n indexed by canonical_index.
class AcyclicityTable final : public AcyclicityOracle {
public:
    explicit AcyclicityTable(ModelKind kind);  // all bits zero

    ModelKind kind() const override { return kind_; }
    bool operator()(ConfigMask mask) const override { return test(mask); }

    bool test(ConfigMask mask) const {
        return words_[mask >> 6] >> (mask & 63) & 1;
    }
    bool test(const Configuration& c) const;
    void set(ConfigMask mask, bool value);

    uint64_t bit_count() const { return uint64_t{1} << boundary_element_count(kind_); }
    uint64_t set_bit_count() const;
    const std::vector<uint64_t>& words() const { return words_; }

    TableMeta meta;

private:
    ModelKind kind_;
    std::vector<uint64_t> words_;
};

// Invokes fn once per closed configuration (the empty one included), in a
// fixed deterministic order.
void enumerate_closed_configs(ModelKind kind,
                              const std::function<void(ConfigMask)>& fn);

// Builds the full table by enumerating closed configurations and computing
// each one's homology. Identical output for any jobs >= 1. Simplex4 is
// refused unless allow_large is set (its bit array alone is 128 MiB); the
// lazy oracle is the default answer at that size.
AcyclicityTable generate_table(ModelKind kind, int jobs = 1, bool allow_large = false);

// Memoizing fallback oracle: computes homology on first sight of an index,
// then caches. Insertions are idempotent and internally synchronized.
class LazyAcyclicityOracle final : public AcyclicityOracle {
public:
    explicit LazyAcyclicityOracle(ModelKind kind) : kind_(kind) {}

    ModelKind kind() const override { return kind_; }
    bool operator()(ConfigMask mask) const override;

    uint64_t memo_size() const;

private:
    ModelKind kind_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<ConfigMask, bool> memo_;
};

// On-disk layout: "ACYC", u32 version, u8 kind tag, u8 element count, the
// bit array packed LSB-first, then a 64-bit FNV-1a checksum of everything
// before it. Little-endian throughout.
void save_table(const AcyclicityTable& table, const std::filesystem::path& path);

// Validates magic, version, kind, length, and checksum; throws
// CorruptTableError naming the offending field.
AcyclicityTable load_table(const std::filesystem::path& path);

// Counts closed configurations that a cheaper invariant would wrongly call
// acyclic: Euler characteristic alone, and Euler plus connectedness.
struct EulerReport {
    ModelKind kind{};
    uint64_t closed_count = 0;
    uint64_t acyclic_count = 0;
    uint64_t euler_only_false_positives = 0;
    uint64_t euler_plus_connected_false_positives = 0;
};

EulerReport analyze_euler_claims(ModelKind kind);

// Certifies that every acyclic closed configuration collapses to a point
// through free-face removals (depth-first with backtracking).
struct CollapseReport {
    ModelKind kind{};
    uint64_t audited = 0;
    std::vector<ConfigMask> failures;  // candidates where no collapse was found

    bool all_collapsible() const { return failures.empty(); }
};

CollapseReport audit_collapsibility(ModelKind kind);

} // namespace thincc
