#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fib/braid.hpp"
#include "fib/circuit.hpp"
#include "fib/errors.hpp"
#include "fib/exact.hpp"

namespace fib {

/// Phase-normalized representative of an exact unitary: k is reduced into
/// {0,1} with w^s U[u,v,k] = U[u w^s, v w^s, k+2s], and of the two residual
/// representatives +-(u,v) the one with the lexicographically larger u is
/// kept. Distinct keys correspond to distinct unitaries up to global phase.
struct CanonicalKey {
    ZOmega u;
    ZOmega v;
    int k = 0;

    friend bool operator<(const CanonicalKey& a, const CanonicalKey& b) {
        if (a.k != b.k) return a.k < b.k;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    }
    friend bool operator==(const CanonicalKey& a, const CanonicalKey& b) {
        return a.k == b.k && a.u == b.u && a.v == b.v;
    }
};

inline CanonicalKey canonical_key(const ExactUnitary& m) {
    int k0 = m.k % 2;
    int s = (((k0 - m.k) / 2) % 5 + 5) % 5;
    ExactUnitary r = apply_phase(m, s);
    assert(r.k % 10 == k0);
    assert(!r.u.is_zero());
    ZOmega nu = -r.u;
    if (r.u < nu) return {nu, -r.v, k0};
    return {r.u, r.v, k0};
}

/// Reconstructs the representative unitary of a key (keys are themselves
/// valid exact unitaries).
inline ExactUnitary key_unitary(const CanonicalKey& key) { return {key.u, key.v, key.k}; }

/// Gate codes used for compact word storage.
enum : std::uint8_t { kGateS1 = 0, kGateS1Inv = 1, kGateS2 = 2, kGateS2Inv = 3 };

inline BraidWord gates_to_braid(const std::vector<std::uint8_t>& gates) {
    BraidWord w;
    for (std::uint8_t g : gates) w.push_back({g < 2 ? 1 : 2, g % 2 == 0 ? 1 : -1});
    return normalize_braid(w);
}

struct OracleEntry {
    std::uint16_t depth = 0;
    std::vector<std::uint8_t> gates;  // one optimal word, single-gate codes
};

/// Database of all unitaries reachable with at most max_depth sigma gates,
/// keyed by canonical form, together with the per-depth census.
struct OracleDB {
    int max_depth = 0;
    std::vector<std::uint64_t> census;  // census[n] = keys first reached at depth n
    std::map<CanonicalKey, OracleEntry> entries;
};

inline constexpr int kOracleDepthBudget = 16;

/// Breadth-first closure over {s1, s1^-1, s2, s2^-1} in exact arithmetic.
/// Deterministic: each level is merged in sorted key order and ties between
/// equal-depth words keep the lexicographically smallest gate string.
inline OracleDB build_database(int max_depth) {
    if (max_depth < 0 || max_depth > kOracleDepthBudget) throw BudgetExceeded();
    OracleDB db;
    db.max_depth = max_depth;
    const ExactUnitary gens[4] = {exact_sigma1(), exact_sigma1_inv(), exact_sigma2(),
                                  exact_sigma2_inv()};
    std::map<CanonicalKey, std::pair<ExactUnitary, std::vector<std::uint8_t>>> level;
    level.emplace(canonical_key(ExactUnitary::identity()),
                  std::make_pair(ExactUnitary::identity(), std::vector<std::uint8_t>{}));
    db.entries[canonical_key(ExactUnitary::identity())] = {0, {}};
    db.census.push_back(1);
    for (int depth = 1; depth <= max_depth; ++depth) {
        std::map<CanonicalKey, std::pair<ExactUnitary, std::vector<std::uint8_t>>> next;
        for (const auto& [key, state] : level) {
            for (std::uint8_t g = 0; g < 4; ++g) {
                ExactUnitary m = exact_mul(state.first, gens[g]);
                CanonicalKey k = canonical_key(m);
                if (db.entries.count(k)) continue;
                std::vector<std::uint8_t> word = state.second;
                word.push_back(g);
                auto [it, inserted] = next.emplace(k, std::make_pair(m, word));
                if (!inserted && word < it->second.second) it->second.second = word;
            }
        }
        for (const auto& [key, state] : next)
            db.entries[key] = {static_cast<std::uint16_t>(depth), state.second};
        db.census.push_back(next.size());
        level = std::move(next);
    }
    return db;
}

/// Optimal word for the exact unitary, if it is within the database depth.
inline std::optional<BraidWord> lookup(const ExactUnitary& m, const OracleDB& db) {
    auto it = db.entries.find(canonical_key(m));
    if (it == db.entries.end()) return std::nullopt;
    return gates_to_braid(it->second.gates);
}

/// Scans the whole database for the entry closest to the target.
/// Ties prefer the shorter word, then the lexicographically smaller one.
inline std::pair<BraidWord, BigFloat> best_approximation(const Matrix2& target, const OracleDB& db) {
    long prec = target.precision();
    bool have = false;
    BigFloat best_d(prec);
    const OracleEntry* best = nullptr;
    for (const auto& [key, entry] : db.entries) {
        BigFloat d = distance(evaluate_exact(key_unitary(key), prec), target);
        bool better = !have || d < best_d ||
                      (d == best_d && (entry.gates.size() < best->gates.size() ||
                                       (entry.gates.size() == best->gates.size() &&
                                        entry.gates < best->gates)));
        if (better) {
            have = true;
            best_d = d;
            best = &entry;
        }
    }
    return {gates_to_braid(best->gates), best_d};
}

namespace detail {

inline void write_u64(std::ostream& os, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(buf, 8);
}

inline std::uint64_t read_u64(std::istream& is) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), 8);
    if (!is) throw Error("oracle file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

inline void write_coeff(std::ostream& os, const Integer& z) {
    if (!z.fits_slong_p()) throw Error("oracle coefficient out of range");
    write_u64(os, static_cast<std::uint64_t>(static_cast<std::int64_t>(z.get_si())));
}

inline Integer read_coeff(std::istream& is) {
    return Integer(static_cast<long>(static_cast<std::int64_t>(read_u64(is))));
}

}  // namespace detail

inline constexpr char kOracleMagic[6] = {'F', 'I', 'B', 'D', 'B', '1'};

inline void save_database(const OracleDB& db, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    os.write(kOracleMagic, 6);
    detail::write_u64(os, static_cast<std::uint64_t>(db.max_depth));
    detail::write_u64(os, db.census.size());
    for (std::uint64_t c : db.census) detail::write_u64(os, c);
    detail::write_u64(os, db.entries.size());
    for (const auto& [key, entry] : db.entries) {
        for (int i = 0; i < 4; ++i) detail::write_coeff(os, key.u.coeff(i));
        for (int i = 0; i < 4; ++i) detail::write_coeff(os, key.v.coeff(i));
        detail::write_u64(os, static_cast<std::uint64_t>(key.k));
        detail::write_u64(os, entry.depth);
        detail::write_u64(os, entry.gates.size());
        os.write(reinterpret_cast<const char*>(entry.gates.data()),
                 static_cast<std::streamsize>(entry.gates.size()));
    }
    if (!os) throw Error("write failed for '" + path + "'");
}

inline OracleDB load_database(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open '" + path + "'");
    char magic[6];
    is.read(magic, 6);
    if (!is || !std::equal(magic, magic + 6, kOracleMagic)) throw Error("bad oracle file magic");
    OracleDB db;
    db.max_depth = static_cast<int>(detail::read_u64(is));
    std::uint64_t ncensus = detail::read_u64(is);
    for (std::uint64_t i = 0; i < ncensus; ++i) db.census.push_back(detail::read_u64(is));
    std::uint64_t n = detail::read_u64(is);
    for (std::uint64_t i = 0; i < n; ++i) {
        CanonicalKey key;
        Integer cu[4], cv[4];
        for (auto& c : cu) c = detail::read_coeff(is);
        for (auto& c : cv) c = detail::read_coeff(is);
        key.u = ZOmega(cu[0], cu[1], cu[2], cu[3]);
        key.v = ZOmega(cv[0], cv[1], cv[2], cv[3]);
        key.k = static_cast<int>(detail::read_u64(is));
        OracleEntry entry;
        entry.depth = static_cast<std::uint16_t>(detail::read_u64(is));
        std::uint64_t len = detail::read_u64(is);
        entry.gates.resize(len);
        is.read(reinterpret_cast<char*>(entry.gates.data()), static_cast<std::streamsize>(len));
        if (!is) throw Error("oracle file truncated");
        db.entries.emplace(key, std::move(entry));
    }
    return db;
}

/// Shortens a braid word without changing its unitary (up to global phase):
/// always merges runs; with a database, replaces gate windows of up to the
/// database depth by stored optimal words when strictly shorter.
inline BraidWord peephole_optimize(const BraidWord& input, const OracleDB* db = nullptr) {
    BraidWord w = normalize_braid(input);
    if (!db) return w;
    bool changed = true;
    while (changed) {
        changed = false;
        // flatten to single gates so windows are measured in sigma count
        std::vector<std::uint8_t> flat;
        for (const BraidItem& item : w)
            for (int i = 0; i < std::abs(item.exp); ++i)
                flat.push_back(static_cast<std::uint8_t>((item.gen == 1 ? 0 : 2) + (item.exp < 0)));
        const ExactUnitary gens[4] = {exact_sigma1(), exact_sigma1_inv(), exact_sigma2(),
                                      exact_sigma2_inv()};
        for (std::size_t start = 0; start < flat.size() && !changed; ++start) {
            ExactUnitary acc = ExactUnitary::identity();
            std::size_t limit = std::min(flat.size(), start + static_cast<std::size_t>(db->max_depth) + 2);
            for (std::size_t end = start; end < limit; ++end) {
                acc = exact_mul(acc, gens[flat[end]]);
                std::size_t window = end - start + 1;
                if (window < 2) continue;
                auto it = db->entries.find(canonical_key(acc));
                if (it == db->entries.end() || it->second.gates.size() >= window) continue;
                std::vector<std::uint8_t> next(flat.begin(),
                                               flat.begin() + static_cast<std::ptrdiff_t>(start));
                next.insert(next.end(), it->second.gates.begin(), it->second.gates.end());
                next.insert(next.end(), flat.begin() + static_cast<std::ptrdiff_t>(end) + 1, flat.end());
                BraidWord candidate = gates_to_braid(next);
                if (sigma_count(candidate) < sigma_count(w)) {
                    w = candidate;
                    changed = true;
                    break;
                }
            }
        }
    }
    return w;
}

}  // namespace fib
