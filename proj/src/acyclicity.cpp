#include "thincc/acyclicity.hpp"

#include <atomic>
#include <bit>
#include <fstream>
#include <thread>
#include <unordered_set>

#include "thincc/homology.hpp"

namespace thincc {

namespace {

uint64_t fnv1a(const uint8_t* data, size_t len) {
    uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 1099511628211ull;
    }
    return h;
}

constexpr char kMagic[4] = {'A', 'C', 'Y', 'C'};
constexpr uint32_t kFormatVersion = 1;

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint32_t get_u32(const uint8_t* p) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t{p[i]} << (8 * i);
    return v;
}

uint64_t get_u64(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t{p[i]} << (8 * i);
    return v;
}

} // namespace

AcyclicityTable::AcyclicityTable(ModelKind kind)
    : kind_(kind), words_((bit_count() + 63) / 64, 0) {}

bool AcyclicityTable::test(const Configuration& c) const {
    if (c.kind != kind_)
        throw KindMismatchError(std::string("table for ") + kind_name(kind_) +
                                " queried with a " + kind_name(c.kind) + " configuration");
    return test(c.mask);
}

void AcyclicityTable::set(ConfigMask mask, bool value) {
    const uint64_t bit = uint64_t{1} << (mask & 63);
    if (value)
        words_[mask >> 6] |= bit;
    else
        words_[mask >> 6] &= ~bit;
}

uint64_t AcyclicityTable::set_bit_count() const {
    uint64_t n = 0;
    for (uint64_t w : words_) n += static_cast<uint64_t>(std::popcount(w));
    return n;
}

void enumerate_closed_configs(ModelKind kind, const std::function<void(ConfigMask)>& fn) {
    const ModelCell& m = ModelCell::get(kind);
    const int n = m.element_count();
    // Every face of an element has a smaller ordinal, so each downward-closed
    // set is reached exactly once by inserting its elements in ascending
    // ordinal order; prefixes of that order are themselves closed.
    std::function<void(ConfigMask, int)> rec = [&](ConfigMask mask, int next) {
        fn(mask);
        for (int l = next; l <= n; ++l) {
            const ConfigMask faces = m.element(l).immediate_face_mask;
            if ((faces & ~mask) == 0) rec(mask | (ConfigMask{1} << (l - 1)), l + 1);
        }
    };
    rec(0, 1);
}

AcyclicityTable generate_table(ModelKind kind, int jobs, bool allow_large) {
    if (kind == ModelKind::Simplex4 && !allow_large)
        throw UsageError("eager table generation for simp4 allocates a 2^30-bit array; "
                         "rerun with --eager to confirm, or use the lazy oracle");

    AcyclicityTable table(kind);
    table.meta.generator_fingerprint = "closed-enum/snf/1";

    std::vector<ConfigMask> closed;
    enumerate_closed_configs(kind, [&](ConfigMask m) { closed.push_back(m); });

    std::vector<uint8_t> verdict(closed.size(), 0);
    const auto worker_count = static_cast<unsigned>(std::max(jobs, 1));
    if (worker_count <= 1) {
        for (size_t i = 0; i < closed.size(); ++i)
            verdict[i] = is_acyclic(Configuration(kind, closed[i])) ? 1 : 0;
    } else {
        std::atomic<size_t> cursor{0};
        auto run = [&] {
            for (;;) {
                const size_t begin = cursor.fetch_add(64);
                if (begin >= closed.size()) return;
                const size_t end = std::min(begin + 64, closed.size());
                for (size_t i = begin; i < end; ++i)
                    verdict[i] = is_acyclic(Configuration(kind, closed[i])) ? 1 : 0;
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < worker_count; ++t) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }

    for (size_t i = 0; i < closed.size(); ++i)
        if (verdict[i]) table.set(closed[i], true);
    return table;
}

bool LazyAcyclicityOracle::operator()(ConfigMask mask) const {
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    }
    const ModelCell& m = ModelCell::get(kind_);
    const bool v = m.is_closed(mask) && is_acyclic(Configuration(kind_, mask));
    std::lock_guard lock(mutex_);
    return memo_.emplace(mask, v).first->second;
}

uint64_t LazyAcyclicityOracle::memo_size() const {
    std::lock_guard lock(mutex_);
    return memo_.size();
}

void save_table(const AcyclicityTable& table, const std::filesystem::path& path) {
    std::vector<uint8_t> buf;
    const uint64_t bits = table.bit_count();
    buf.reserve(10 + bits / 8 + 8);
    buf.insert(buf.end(), kMagic, kMagic + 4);
    put_u32(buf, kFormatVersion);
    buf.push_back(static_cast<uint8_t>(table.kind()));
    buf.push_back(static_cast<uint8_t>(boundary_element_count(table.kind())));
    for (uint64_t i = 0; i < bits / 8; ++i)
        buf.push_back(static_cast<uint8_t>(table.words()[i / 8] >> (8 * (i % 8))));

    const uint64_t sum = fnv1a(buf.data(), buf.size());
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<uint8_t>(sum >> (8 * i)));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out)
        throw UsageError("cannot write table file: " + path.string());
}

AcyclicityTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot open table file: " + path.string());
    std::vector<uint8_t> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (buf.size() < 18)
        throw CorruptTableError("length", "file shorter than the fixed header");
    if (!std::equal(kMagic, kMagic + 4, buf.begin()))
        throw CorruptTableError("magic", "not an acyclicity table file");
    if (get_u32(buf.data() + 4) != kFormatVersion)
        throw CorruptTableError("version",
                                "unsupported format version " + std::to_string(get_u32(buf.data() + 4)));
    const uint8_t kind_tag = buf[8];
    if (kind_tag > static_cast<uint8_t>(ModelKind::Cube3))
        throw CorruptTableError("kind", "unknown model kind tag " + std::to_string(kind_tag));
    const auto kind = static_cast<ModelKind>(kind_tag);
    if (buf[9] != boundary_element_count(kind))
        throw CorruptTableError("element count",
                                "header says " + std::to_string(buf[9]) + " elements, " +
                                    kind_name(kind) + " has " +
                                    std::to_string(boundary_element_count(kind)));

    const uint64_t payload = (uint64_t{1} << boundary_element_count(kind)) / 8;
    if (buf.size() != 10 + payload + 8)
        throw CorruptTableError("length", "expected " + std::to_string(10 + payload + 8) +
                                              " bytes, found " + std::to_string(buf.size()));
    const uint64_t stored = get_u64(buf.data() + 10 + payload);
    const uint64_t computed = fnv1a(buf.data(), 10 + payload);
    if (stored != computed)
        throw CorruptTableError("checksum", "table payload does not match its checksum");

    AcyclicityTable table(kind);
    for (uint64_t i = 0; i < payload; ++i) {
        const uint8_t byte = buf[10 + i];
        for (int b = 0; b < 8; ++b)
            if (byte >> b & 1) table.set(static_cast<ConfigMask>(i * 8 + b), true);
    }
    table.meta.generator_fingerprint = "loaded";
    return table;
}

EulerReport analyze_euler_claims(ModelKind kind) {
    EulerReport rep;
    rep.kind = kind;
    const ModelCell& m = ModelCell::get(kind);
    enumerate_closed_configs(kind, [&](ConfigMask mask) {
        ++rep.closed_count;
        if (mask == 0) return;
        int chi = 0;
        for (ConfigMask s = mask; s; s &= s - 1)
            chi += m.element(std::countr_zero(s) + 1).dim % 2 == 0 ? 1 : -1;
        const HomologySummary h = configuration_homology(Configuration(kind, mask));
        if (h.acyclic()) {
            ++rep.acyclic_count;
            return;
        }
        if (chi != 1) return;
        ++rep.euler_only_false_positives;
        if (h.betti[0] == 1) ++rep.euler_plus_connected_false_positives;
    });
    return rep;
}

CollapseReport audit_collapsibility(ModelKind kind) {
    if (kind == ModelKind::Simplex4)
        throw UsageError("collapsibility audit is supported for tri, tet, pixel, voxel");

    const ModelCell& m = ModelCell::get(kind);
    const int n = m.element_count();

    // elements having l as an immediate face
    std::vector<ConfigMask> cofaces(static_cast<size_t>(n) + 1, 0);
    for (int l = 1; l <= n; ++l)
        for (const auto& [f, s] : m.element(l).boundary)
            cofaces[static_cast<size_t>(f)] |= ConfigMask{1} << (l - 1);

    std::unordered_set<ConfigMask> dead_ends;
    std::function<bool(ConfigMask)> collapses = [&](ConfigMask s) -> bool {
        if (std::popcount(s) == 1)
            return m.element(std::countr_zero(s) + 1).dim == 0;
        if (dead_ends.contains(s)) return false;
        for (ConfigMask cm = s; cm; cm &= cm - 1) {
            const int c = std::countr_zero(cm) + 1;
            if (m.element(c).dim == 0) continue;
            for (const auto& [f, sign] : m.element(c).boundary) {
                const ConfigMask fbit = ConfigMask{1} << (f - 1);
                if (!(s & fbit)) continue;
                if (std::popcount(cofaces[static_cast<size_t>(f)] & s) != 1) continue;
                if (collapses(s & ~fbit & ~(ConfigMask{1} << (c - 1)))) return true;
            }
        }
        dead_ends.insert(s);
        return false;
    };

    CollapseReport rep;
    rep.kind = kind;
    enumerate_closed_configs(kind, [&](ConfigMask mask) {
        if (mask == 0 || !is_acyclic(Configuration(kind, mask))) return;
        ++rep.audited;
        if (!collapses(mask)) rep.failures.push_back(mask);
    });
    return rep;
}

} // namespace thincc
