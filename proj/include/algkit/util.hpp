#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace algkit {

// Disjoint-set forest with path halving; used for all coend quotients.
class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t size() const { return parent_.size(); }

    std::size_t add() {
        parent_.push_back(parent_.size());
        return parent_.size() - 1;
    }

    std::size_t find(std::size_t x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);  // keep the smaller index as root
        parent_[a] = b;
    }

    // Maps each element to a dense class id; class ids are ordered by the
    // smallest raw index they contain, so the numbering is deterministic.
    std::vector<std::size_t> classes(std::size_t* count = nullptr) const {
        std::vector<std::size_t> cls(parent_.size(), SIZE_MAX);
        std::size_t next = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            std::size_t r = find(i);
            if (cls[r] == SIZE_MAX) cls[r] = next++;
            cls[i] = cls[r];
        }
        if (count) *count = next;
        return cls;
    }

private:
    mutable std::vector<std::size_t> parent_;
};

// Odometer over a mixed-radix tuple. Calls fn for every tuple in
// lexicographic order; radices[i] == 0 means there is nothing to iterate.
inline bool for_each_tuple(const std::vector<std::size_t>& radices,
                           const std::function<bool(const std::vector<std::size_t>&)>& fn) {
    for (std::size_t r : radices)
        if (r == 0) return true;
    std::vector<std::size_t> tup(radices.size(), 0);
    while (true) {
        if (!fn(tup)) return false;
        std::size_t i = tup.size();
        while (i > 0) {
            --i;
            if (++tup[i] < radices[i]) break;
            tup[i] = 0;
            if (i == 0) return true;
        }
        if (radices.empty()) return true;
    }
}

// All functions {0..m-1} -> {0..n-1} as image vectors, lexicographic.
inline std::vector<std::vector<int>> all_functions(int m, int n) {
    std::vector<std::vector<int>> out;
    if (m == 0) {
        out.push_back({});
        return out;
    }
    if (n == 0) return out;
    std::vector<int> img(m, 0);
    while (true) {
        out.push_back(img);
        int i = m;
        while (i > 0) {
            --i;
            if (++img[i] < n) break;
            img[i] = 0;
            if (i == 0) return out;
        }
    }
}

// All permutations of {0..n-1}, lexicographic.
inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline bool is_permutation_vec(const std::vector<int>& img) {
    std::vector<bool> seen(img.size(), false);
    for (int v : img) {
        if (v < 0 || static_cast<std::size_t>(v) >= img.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

// Deterministic xorshift generator; all randomized suites seed through this.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        std::uint64_t x = state_;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        state_ = x;
        return x;
    }

    // Uniform-ish draw in [0, n); n must be positive.
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

private:
    std::uint64_t state_;
};

// FNV-1a over a byte string; used for input digests in reports.
inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct SearchSpaceTooLarge : std::runtime_error {
    explicit SearchSpaceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

// The arity window is too small to materialize the requested construction.
struct WindowTooSmall : std::runtime_error {
    explicit WindowTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// An operation's precondition fails; the message carries a witness.
struct PreconditionFailure : std::runtime_error {
    explicit PreconditionFailure(const std::string& what) : std::runtime_error(what) {}
};

// Global enumeration cap, overridable via the ALGKIT_MAX_SEARCH environment
// variable (read once by the CLI; library users set it directly).
inline std::size_t& max_search_cap() {
    static std::size_t cap = 20000000;
    return cap;
}

}  // namespace algkit
