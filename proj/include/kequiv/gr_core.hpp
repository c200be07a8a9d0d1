#pragma once

// Index combinatorics for the Grassmannian Gr_k(C^n): {0,1}-strings of length
// n with k ones, partitions in the k x (n-k) rectangle, skew shapes, and the
// Manhattan statistic used by the weight formulas.
//
// Bit convention (anchored on the worked examples): read the boundary path of
// the partition from the NE corner of the rectangle toward the SW corner,
// writing 0 for each west step and 1 for each south step.  So the identity
// class (empty partition) is 0^{n-k} 1^k and the point class (full rectangle)
// is 1^k 0^{n-k}.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "laurent.hpp"

namespace kequiv {

struct Partition;

struct GrIndex {
    int n = 0;
    int k = 0;
    std::vector<int> bits;  // length n, entries 0/1, exactly k ones

    GrIndex() = default;
    GrIndex(int n_, int k_, std::vector<int> bits_) : n(n_), k(k_), bits(std::move(bits_)) {
        validate();
    }

    static GrIndex from_string(int n, int k, const std::string& s) {
        if ((int)s.size() != n) fail("GrIndex: bit string length != n");
        std::vector<int> b(n);
        for (int i = 0; i < n; ++i) {
            if (s[i] == '0') b[i] = 0;
            else if (s[i] == '1') b[i] = 1;
            else fail("GrIndex: bit string must contain only 0/1");
        }
        return GrIndex(n, k, std::move(b));
    }

    void validate() const {
        if (n < 0 || k < 0 || k > n) fail("GrIndex: invalid (n, k)");
        if ((int)bits.size() != n) fail("GrIndex: bit count != n");
        int ones = 0;
        for (int b : bits) {
            if (b != 0 && b != 1) fail("GrIndex: bits must be 0/1");
            ones += b;
        }
        if (ones != k) fail("GrIndex: expected exactly k ones");
    }

    std::string to_string() const {
        std::string s;
        s.reserve(n);
        for (int b : bits) s += char('0' + b);
        return s;
    }

    bool operator==(const GrIndex& o) const { return n == o.n && k == o.k && bits == o.bits; }
    bool operator!=(const GrIndex& o) const { return !(*this == o); }
    bool operator<(const GrIndex& o) const {
        if (n != o.n) return n < o.n;
        if (k != o.k) return k < o.k;
        return bits < o.bits;
    }
};

struct Partition {
    int n = 0;
    int k = 0;
    std::vector<int> parts;  // padded to exactly k parts, weakly decreasing

    Partition() = default;
    Partition(int n_, int k_, std::vector<int> parts_) : n(n_), k(k_), parts(std::move(parts_)) {
        parts.resize(k, 0);
        validate();
    }

    void validate() const {
        if ((int)parts.size() != k) fail("Partition: expected k parts");
        for (int i = 0; i < k; ++i) {
            if (parts[i] < 0 || parts[i] > n - k) fail("Partition: part outside rectangle");
            if (i + 1 < k && parts[i] < parts[i + 1]) fail("Partition: parts not weakly decreasing");
        }
    }

    int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

    // number of parts >= c, i.e. the conjugate partition value at column c
    int conjugate_at(int c) const {
        int r = 0;
        for (int p : parts)
            if (p >= c) ++r;
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < k; ++i) {
            if (i) s += ",";
            s += std::to_string(parts[i]);
        }
        return s.empty() ? "-" : s;
    }

    bool operator==(const Partition& o) const { return n == o.n && k == o.k && parts == o.parts; }
    bool operator!=(const Partition& o) const { return !(*this == o); }
    bool operator<(const Partition& o) const {
        if (size() != o.size()) return size() < o.size();
        return parts < o.parts;
    }
};

inline Partition bits_to_partition(const GrIndex& idx) {
    idx.validate();
    std::vector<int> parts;
    parts.reserve(idx.k);
    int zeros_after = 0;
    for (int i = idx.n - 1; i >= 0; --i) {
        if (idx.bits[i] == 1) parts.push_back(zeros_after);
        else ++zeros_after;
    }
    std::reverse(parts.begin(), parts.end());
    return Partition(idx.n, idx.k, std::move(parts));
}

inline GrIndex partition_to_bits(const Partition& p) {
    p.validate();
    std::vector<int> bits;
    bits.reserve(p.n);
    int prev = p.n - p.k;
    for (int i = 0; i < p.k; ++i) {
        for (int z = 0; z < prev - p.parts[i]; ++z) bits.push_back(0);
        bits.push_back(1);
        prev = p.parts[i];
    }
    for (int z = 0; z < prev; ++z) bits.push_back(0);
    return GrIndex(p.n, p.k, std::move(bits));
}

inline bool contains(const Partition& outer, const Partition& inner) {
    if (outer.k != inner.k) fail("contains: mismatched k");
    for (int i = 0; i < outer.k; ++i)
        if (outer.parts[i] < inner.parts[i]) return false;
    return true;
}

// Box (row, col), 1-indexed from the top-left of the k x (n-k) rectangle.
struct BoxPos {
    int row = 0;
    int col = 0;
    BoxPos() = default;
    BoxPos(int r, int c) : row(r), col(c) {}
    bool operator==(const BoxPos& o) const { return row == o.row && col == o.col; }
    bool operator<(const BoxPos& o) const { return row != o.row ? row < o.row : col < o.col; }
};

// Lattice distance from the SW corner of the rectangle to the NW corner of
// the box: (c - 1) horizontal steps plus (k - r + 1) vertical steps.
inline int manhattan(const BoxPos& x, int n, int k) {
    if (x.row < 1 || x.row > k || x.col < 1 || x.col > n - k) fail("manhattan: box outside rectangle");
    return k - x.row + x.col;
}

struct SkewShape {
    Partition outer;  // nu
    Partition inner;  // lambda

    SkewShape() = default;
    SkewShape(Partition outer_, Partition inner_) : outer(std::move(outer_)), inner(std::move(inner_)) {
        if (outer.n != inner.n || outer.k != inner.k) fail("SkewShape: mismatched rectangle");
        if (!contains(outer, inner)) fail("SkewShape: inner not contained in outer");
    }

    bool has_cell(int r, int c) const {
        return r >= 1 && r <= outer.k && c > inner.parts[r - 1] && c <= outer.parts[r - 1];
    }

    std::vector<BoxPos> cells() const {
        std::vector<BoxPos> out;
        for (int r = 1; r <= outer.k; ++r)
            for (int c = inner.parts[r - 1] + 1; c <= outer.parts[r - 1]; ++c)
                out.emplace_back(r, c);
        return out;
    }

    int cell_count() const { return outer.size() - inner.size(); }
};

// All Schubert indices of Gr_k(C^n) in a canonical order (by partition size,
// then bit string).
inline std::vector<GrIndex> all_indices(int n, int k) {
    std::vector<GrIndex> out;
    std::vector<int> bits(n, 0);
    std::fill(bits.begin(), bits.begin() + k, 1);
    std::sort(bits.begin(), bits.end());
    do {
        out.emplace_back(n, k, bits);
    } while (std::next_permutation(bits.begin(), bits.end()));
    std::sort(out.begin(), out.end(), [](const GrIndex& a, const GrIndex& b) {
        Partition pa = bits_to_partition(a), pb = bits_to_partition(b);
        if (pa.size() != pb.size()) return pa.size() < pb.size();
        return a.bits < b.bits;
    });
    return out;
}

inline GrIndex identity_index(int n, int k) {
    return partition_to_bits(Partition(n, k, std::vector<int>(k, 0)));
}

}  // namespace kequiv
