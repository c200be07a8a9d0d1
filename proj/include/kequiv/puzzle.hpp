#pragma once

// The puzzle engine: the side-n triangle, the piece catalog (triangles, grey
// rhombi, the equivariant diamond, and the two gashed KV pieces), exhaustive
// enumeration of fillings by backtracking, and puzzle weights.
//
// Geometry.  Rows t = 1..n from the top; row t holds t upward cells U(t,j)
// (j = 1..t) and t-1 downward cells D(t,j) (j = 1..t-1).  Edges come in three
// directions and are shared between at most two cells:
//
//   H(t,j)  horizontal: bottom of U(t,j) = top of D(t+1,j); H(n,j) is the
//           nu-boundary.
//   S(t,j)  "/": west of U(t,j) = east of D(t,j-1); S(t,1) is the
//           lambda-boundary edge of row t.
//   B(t,j)  "\": east of U(t,j) = west of D(t,j); B(t,t) is the mu-boundary.
//
// Boundary reading: lambda_m = S(n+1-m, 1) (up the left side), mu_m = B(m,m)
// (down the right side), nu_j = H(n,j) (left to right).
//
// Every edge keeps one label per side (side 0 faces the up cell, side 1 the
// down cell or the boundary).  A normal edge must agree on both sides; a
// gashed edge carries the two distinct labels declared by the KV piece that
// owns the gash, and two gashes may not land on the same edge.  Each KV piece
// declares two gashes: one on an edge of its own cell, one on a remote edge
// one row below (the figures draw the latter as the dangling tail):
//
//   Yellow at D(t,j):  top 1, west\ 1, gash on its east/ (own side 1, far 0),
//                      remote gash on S(t+1,j+1) (west side 0, east side 1).
//                      May only be placed with the equivariant piece attached
//                      on its left, i.e. a diamond at [U(t,j), D(t+1,j)].
//   Purple at D(t,j):  top 0, east/ 0, gash on its west\ (far side 1, own 0),
//                      remote gash on B(t+1,j+1) (west side 0, east side 1).
//                      In original mode it needs the nonlocal condition on the
//                      horizontal edges to its right; in modified mode it may
//                      only appear in the two combination shapes (with the
//                      diamond, or with a grey rhombus over a black triangle).

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gr_core.hpp"
#include "laurent.hpp"

namespace kequiv {

enum class PieceKind : std::uint8_t {
    WhiteUp,
    WhiteDown,
    BlackUp,
    BlackDown,
    GreyH,     // [U(t,j), D(t,j)], glued on \: horizontals 1, slashes 0
    GreyV,     // [U(t,j), D(t+1,j)], glued on -: NW/ 1, SE/ 1, backslashes 0
    GreyD,     // [D(t,j), U(t,j+1)], glued on /: backslashes 1, horizontals 0
    Diamond,   // [U(t,j), D(t+1,j)]: NW/ 0, NE\ 1, SW\ 1, SE/ 0; not rotatable
    Yellow,    // D(t,j); fifth KV piece
    Purple,    // D(t,j); sixth KV piece
};

inline const char* piece_name(PieceKind k) {
    switch (k) {
        case PieceKind::WhiteUp: return "white_up";
        case PieceKind::WhiteDown: return "white_down";
        case PieceKind::BlackUp: return "black_up";
        case PieceKind::BlackDown: return "black_down";
        case PieceKind::GreyH: return "grey_h";
        case PieceKind::GreyV: return "grey_v";
        case PieceKind::GreyD: return "grey_d";
        case PieceKind::Diamond: return "equivariant";
        case PieceKind::Yellow: return "yellow";
        case PieceKind::Purple: return "purple";
    }
    return "?";
}

enum class PuzzleMode { Modified, Original };

// Reading of the original rule's nonlocal clause "the edges to its right are
// a (possibly empty) series of horizontal 0's followed by a 1".  Prefix: the
// completed horizontal edges right of the purple start 0...0 1 (anything may
// follow).  Exact: they are 0...0 1 with nothing after the 1.  Both readings
// reproduce the six puzzles of the worked instance; Prefix is the default.
enum class OriginalPurpleRule { ZerosThenOnePrefix, ZerosThenOneExact };

struct CellRef {
    int t = 0;
    int j = 0;
    bool up = true;
    CellRef() = default;
    CellRef(int t_, int j_, bool up_) : t(t_), j(j_), up(up_) {}
    bool operator==(const CellRef& o) const { return t == o.t && j == o.j && up == o.up; }
    bool operator<(const CellRef& o) const {
        if (t != o.t) return t < o.t;
        if (j != o.j) return j < o.j;
        return up && !o.up;  // U(t,j) precedes D(t,j)
    }
};

struct EdgeRef {
    char dir = 'H';  // 'H', 'S' or 'B'
    int t = 0;
    int j = 0;
    EdgeRef() = default;
    EdgeRef(char d, int t_, int j_) : dir(d), t(t_), j(j_) {}
    bool operator==(const EdgeRef& o) const { return dir == o.dir && t == o.t && j == o.j; }
    bool operator<(const EdgeRef& o) const {
        if (dir != o.dir) return dir < o.dir;
        if (t != o.t) return t < o.t;
        return j < o.j;
    }
};

struct Placement {
    PieceKind kind;
    int t = 0;  // anchor (the scan-first cell covered)
    int j = 0;

    Placement() : kind(PieceKind::WhiteUp) {}
    Placement(PieceKind k, int t_, int j_) : kind(k), t(t_), j(j_) {}

    bool operator==(const Placement& o) const { return kind == o.kind && t == o.t && j == o.j; }
    bool operator<(const Placement& o) const {
        if (t != o.t) return t < o.t;
        if (j != o.j) return j < o.j;
        return (int)kind < (int)o.kind;
    }

    std::vector<CellRef> cells() const {
        switch (kind) {
            case PieceKind::WhiteUp:
            case PieceKind::BlackUp:
                return {CellRef(t, j, true)};
            case PieceKind::WhiteDown:
            case PieceKind::BlackDown:
            case PieceKind::Yellow:
            case PieceKind::Purple:
                return {CellRef(t, j, false)};
            case PieceKind::GreyH:
                return {CellRef(t, j, true), CellRef(t, j, false)};
            case PieceKind::GreyV:
            case PieceKind::Diamond:
                return {CellRef(t, j, true), CellRef(t + 1, j, false)};
            case PieceKind::GreyD:
                return {CellRef(t, j, false), CellRef(t, j + 1, true)};
        }
        return {};
    }
};

struct SideClaim {
    EdgeRef edge;
    int side;   // 0 = up-cell side, 1 = down-cell/boundary side
    int label;  // 0 or 1
};

struct GashClaim {
    EdgeRef edge;
    int label_side0;
    int label_side1;
};

// Side-label and gash claims for one placement.
inline void piece_claims(const Placement& p, std::vector<SideClaim>& sides,
                         std::vector<GashClaim>& gashes) {
    sides.clear();
    gashes.clear();
    const int t = p.t, j = p.j;
    auto H = [](int t_, int j_) { return EdgeRef('H', t_, j_); };
    auto S = [](int t_, int j_) { return EdgeRef('S', t_, j_); };
    auto B = [](int t_, int j_) { return EdgeRef('B', t_, j_); };
    switch (p.kind) {
        case PieceKind::WhiteUp:
        case PieceKind::BlackUp: {
            int v = p.kind == PieceKind::BlackUp ? 1 : 0;
            sides = {{H(t, j), 0, v}, {S(t, j), 0, v}, {B(t, j), 0, v}};
            break;
        }
        case PieceKind::WhiteDown:
        case PieceKind::BlackDown: {
            int v = p.kind == PieceKind::BlackDown ? 1 : 0;
            sides = {{H(t - 1, j), 1, v}, {B(t, j), 1, v}, {S(t, j + 1), 1, v}};
            break;
        }
        case PieceKind::GreyH:
            sides = {{H(t, j), 0, 1}, {S(t, j), 0, 0}, {H(t - 1, j), 1, 1}, {S(t, j + 1), 1, 0}};
            break;
        case PieceKind::GreyV:
            sides = {{S(t, j), 0, 1}, {B(t, j), 0, 0}, {B(t + 1, j), 1, 0}, {S(t + 1, j + 1), 1, 1}};
            break;
        case PieceKind::GreyD:
            sides = {{B(t, j), 1, 1}, {H(t - 1, j), 1, 0}, {H(t, j + 1), 0, 0}, {B(t, j + 1), 0, 1}};
            break;
        case PieceKind::Diamond:
            sides = {{S(t, j), 0, 0}, {B(t, j), 0, 1}, {B(t + 1, j), 1, 1}, {S(t + 1, j + 1), 1, 0}};
            break;
        case PieceKind::Yellow:
            sides = {{H(t - 1, j), 1, 1}, {B(t, j), 1, 1}};
            gashes = {{S(t, j + 1), 0, 1},       // own east edge: far 0, own 1
                      {S(t + 1, j + 1), 1, 0}};  // remote tail: east side 1, west side 0
            break;
        case PieceKind::Purple:
            sides = {{H(t - 1, j), 1, 0}, {S(t, j + 1), 1, 0}};
            gashes = {{B(t, j), 1, 0},           // own west edge: far 1, own 0
                      {B(t + 1, j + 1), 0, 1}};  // remote tail: west side 0, east side 1
            break;
    }
}

class PuzzleGrid {
public:
    explicit PuzzleGrid(int n) : n_(n) {
        if (n < 0) fail("PuzzleGrid: negative n");
        cell_base_.assign(n + 1, 0);
        int off = 0;
        for (int t = 1; t <= n; ++t) {
            cell_base_[t] = off;
            off += 2 * t - 1;  // t up cells + (t-1) down cells
        }
        cell_count_ = off;
        off = 0;
        for (char d : {'H', 'S', 'B'}) {
            for (int t = 1; t <= n; ++t) {
                edge_base_[edge_dir_index(d)].push_back(off);
                off += t;
            }
        }
        edge_count_ = off;
    }

    int n() const { return n_; }
    int cell_count() const { return cell_count_; }
    int edge_count() const { return edge_count_; }

    bool cell_valid(const CellRef& c) const {
        if (c.t < 1 || c.t > n_) return false;
        if (c.up) return c.j >= 1 && c.j <= c.t;
        return c.j >= 1 && c.j <= c.t - 1;
    }

    int cell_id(const CellRef& c) const {
        // scan order within a row: U(t,1), D(t,1), U(t,2), ..., U(t,t)
        return cell_base_[c.t] + 2 * (c.j - 1) + (c.up ? 0 : 1);
    }

    CellRef cell_from_id(int id) const {
        int t = 1;
        while (t < n_ && cell_base_[t + 1] <= id) ++t;
        int r = id - cell_base_[t];
        return CellRef(t, r / 2 + 1, r % 2 == 0);
    }

    bool edge_valid(const EdgeRef& e) const {
        return e.t >= 1 && e.t <= n_ && e.j >= 1 && e.j <= e.t;
    }

    int edge_id(const EdgeRef& e) const {
        return edge_base_[edge_dir_index(e.dir)][e.t - 1] + (e.j - 1);
    }

    bool is_boundary(const EdgeRef& e) const {
        if (e.dir == 'H') return e.t == n_;
        if (e.dir == 'S') return e.j == 1;
        return e.j == e.t;  // 'B'
    }

private:
    static int edge_dir_index(char d) { return d == 'H' ? 0 : d == 'S' ? 1 : 2; }

    int n_;
    int cell_count_ = 0;
    int edge_count_ = 0;
    std::vector<int> cell_base_;
    std::array<std::vector<int>, 3> edge_base_;
};

struct Puzzle {
    int n = 0;
    GrIndex lambda, mu, nu;
    PuzzleMode mode = PuzzleMode::Modified;
    std::vector<Placement> placements;  // sorted by anchor: canonical identity

    bool operator==(const Puzzle& o) const { return placements == o.placements && n == o.n; }
    bool operator<(const Puzzle& o) const { return placements < o.placements; }

    int kv_count() const {
        int c = 0;
        for (const auto& p : placements)
            c += p.kind == PieceKind::Yellow || p.kind == PieceKind::Purple;
        return c;
    }

    std::vector<Placement> diamonds() const {
        std::vector<Placement> out;
        for (const auto& p : placements)
            if (p.kind == PieceKind::Diamond) out.push_back(p);
        return out;
    }

    // placement covering a given cell, or nullptr
    const Placement* piece_at(const CellRef& c) const {
        for (const auto& p : placements)
            for (const auto& pc : p.cells())
                if (pc == c) return &p;
        return nullptr;
    }
};

// The nu-boundary segment hit by the SE diagonal from the diamond's center,
// counted from the right, and likewise for the SW antidiagonal.  The diamond
// is anchored at its top cell U(t,j).
inline std::pair<int, int> equivariant_indices(const Puzzle& P, const Placement& diamond) {
    if (diamond.kind != PieceKind::Diamond) fail("equivariant_indices: not a diamond");
    int t = diamond.t, j = diamond.j;
    // SE diagonal: each row down shifts the position one to the right.
    int a_from_left = j + (P.n - t);
    int a = P.n - a_from_left + 1;
    // SW antidiagonal: the position index is preserved going down.
    int b_from_left = j;
    int b = P.n - b_from_left + 1;
    return {a, b};
}

inline LaurentPoly puzzle_weight(const Puzzle& P) {
    LaurentPoly w = LaurentPoly::constant(P.n, (P.kv_count() % 2 == 0) ? 1 : -1);
    for (const auto& d : P.diamonds()) {
        auto [a, b] = equivariant_indices(P, d);
        w *= EquivFactor(a, b).to_poly(P.n);
    }
    return w;
}

namespace detail {

struct EdgeState {
    std::int8_t side[2] = {-1, -1};
    bool gashed = false;
};

class PuzzleFiller {
public:
    PuzzleFiller(const GrIndex& lambda, const GrIndex& mu, const GrIndex& nu, PuzzleMode mode,
                 OriginalPurpleRule variant)
        : grid_(lambda.n), lambda_(lambda), mu_(mu), nu_(nu), mode_(mode), variant_(variant) {
        if (mu.n != lambda.n || nu.n != lambda.n || mu.k != lambda.k || nu.k != lambda.k)
            fail("enumerate_puzzles: boundary indices disagree on (n, k)");
        n_ = lambda.n;
        edges_.assign(grid_.edge_count(), EdgeState{});
        cover_.assign(grid_.cell_count(), -1);
        // Boundary labels on side 1.
        for (int m = 1; m <= n_; ++m) {
            set_boundary(EdgeRef('S', n_ + 1 - m, 1), lambda.bits[m - 1]);
            set_boundary(EdgeRef('B', m, m), mu.bits[m - 1]);
            set_boundary(EdgeRef('H', n_, m), nu.bits[m - 1]);
        }
    }

    std::vector<Puzzle> run() {
        out_.clear();
        search(0);
        std::sort(out_.begin(), out_.end());
        return out_;
    }

private:
    void set_boundary(const EdgeRef& e, int v) { edges_[grid_.edge_id(e)].side[1] = (std::int8_t)v; }

    struct TrailEntry {
        int edge_id;
        int side;        // 0/1, or -1 for a gash mark
        std::int8_t old; // previous label (side entries) / unused
    };

    bool claim_side(const EdgeRef& e, int side, int label, std::vector<TrailEntry>& trail) {
        if (!grid_.edge_valid(e)) return label == 0;  // edges off the triangle: only 0 flows out
        EdgeState& st = edges_[grid_.edge_id(e)];
        if (st.side[side] >= 0) return st.side[side] == label;
        trail.push_back({grid_.edge_id(e), side, st.side[side]});
        st.side[side] = (std::int8_t)label;
        if (!st.gashed && st.side[0] >= 0 && st.side[1] >= 0 && st.side[0] != st.side[1]) return false;
        return true;
    }

    bool claim_gash(const EdgeRef& e, int v0, int v1, std::vector<TrailEntry>& trail) {
        if (!grid_.edge_valid(e) || grid_.is_boundary(e)) return false;
        EdgeState& st = edges_[grid_.edge_id(e)];
        if (st.gashed) return false;  // two gashes may not be overlaid
        if (st.side[0] >= 0 && st.side[0] != v0) return false;
        if (st.side[1] >= 0 && st.side[1] != v1) return false;
        trail.push_back({grid_.edge_id(e), -1, 0});
        st.gashed = true;
        if (st.side[0] < 0) {
            trail.push_back({grid_.edge_id(e), 0, st.side[0]});
            st.side[0] = (std::int8_t)v0;
        }
        if (st.side[1] < 0) {
            trail.push_back({grid_.edge_id(e), 1, st.side[1]});
            st.side[1] = (std::int8_t)v1;
        }
        return true;
    }

    void unwind(const std::vector<TrailEntry>& trail) {
        for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
            EdgeState& st = edges_[it->edge_id];
            if (it->side < 0) st.gashed = false;
            else st.side[it->side] = it->old;
        }
    }

    bool placeable_cells(const Placement& p) const {
        for (const auto& c : p.cells()) {
            if (!grid_.cell_valid(c)) return false;
            if (cover_[grid_.cell_id(c)] >= 0) return false;
        }
        return true;
    }

    // Original rule: scan the fixed horizontal edges strictly right of the
    // purple on its top line; they must read 0...0 1.
    bool original_purple_ok(int t, int j) const {
        for (int jj = j + 1; jj <= t - 1; ++jj) {
            std::int8_t v = edges_[grid_.edge_id(EdgeRef('H', t - 1, jj))].side[0];
            if (v < 0) return false;  // row above is always complete here
            if (v == 1)
                return variant_ == OriginalPurpleRule::ZerosThenOnePrefix || jj == t - 1;
            // v == 0: keep scanning
        }
        return false;  // ran out of edges without meeting a 1
    }

    bool anchored_diamond_at(int t, int j) const {
        CellRef c(t, j, true);
        if (!grid_.cell_valid(c)) return false;
        int pi = cover_[grid_.cell_id(c)];
        if (pi < 0) return false;
        const Placement& p = placed_[pi];
        return p.kind == PieceKind::Diamond && p.t == t && p.j == j;
    }

    bool placement_precondition(const Placement& p) const {
        if (p.kind == PieceKind::Yellow) return anchored_diamond_at(p.t, p.j);
        if (p.kind == PieceKind::Purple) {
            if (mode_ == PuzzleMode::Original) return original_purple_ok(p.t, p.j);
            return true;  // modified: combination shape checked at completion
        }
        return true;
    }

    bool modified_purple_shapes_ok() const {
        if (mode_ != PuzzleMode::Modified) return true;
        for (const auto& p : placed_) {
            if (p.kind != PieceKind::Purple) continue;
            int t = p.t, j = p.j;
            bool pg = anchored_piece_is(t, j + 1, PieceKind::Diamond);
            bool pgb = anchored_piece_is(t, j + 1, PieceKind::GreyH) &&
                       anchored_piece_is_down(t + 1, j + 1, PieceKind::BlackDown);
            if (!pg && !pgb) return false;
        }
        return true;
    }

    bool anchored_piece_is(int t, int j, PieceKind k) const {
        CellRef c(t, j, true);
        if (!grid_.cell_valid(c)) return false;
        int pi = cover_[grid_.cell_id(c)];
        return pi >= 0 && placed_[pi].kind == k && placed_[pi].t == t && placed_[pi].j == j;
    }

    bool anchored_piece_is_down(int t, int j, PieceKind k) const {
        CellRef c(t, j, false);
        if (!grid_.cell_valid(c)) return false;
        int pi = cover_[grid_.cell_id(c)];
        return pi >= 0 && placed_[pi].kind == k && placed_[pi].t == t && placed_[pi].j == j;
    }

    void candidates(const CellRef& c, std::vector<PieceKind>& out) const {
        out.clear();
        if (c.up) {
            out = {PieceKind::WhiteUp, PieceKind::BlackUp};
            if (c.j <= c.t - 1) out.push_back(PieceKind::GreyH);
            if (c.t < n_) {
                out.push_back(PieceKind::GreyV);
                out.push_back(PieceKind::Diamond);
            }
        } else {
            out = {PieceKind::WhiteDown, PieceKind::BlackDown, PieceKind::GreyD};
            if (c.t < n_) {
                out.push_back(PieceKind::Yellow);
                out.push_back(PieceKind::Purple);
            }
        }
    }

    void search(int from_cell) {
        int cell = from_cell;
        while (cell < grid_.cell_count() && cover_[cell] >= 0) ++cell;
        if (cell == grid_.cell_count()) {
            if (!modified_purple_shapes_ok()) return;
            Puzzle P;
            P.n = n_;
            P.lambda = lambda_;
            P.mu = mu_;
            P.nu = nu_;
            P.mode = mode_;
            P.placements = placed_;
            std::sort(P.placements.begin(), P.placements.end());
            out_.push_back(std::move(P));
            return;
        }
        CellRef c = grid_.cell_from_id(cell);
        std::vector<PieceKind> kinds;
        candidates(c, kinds);
        std::vector<SideClaim> sides;
        std::vector<GashClaim> gashes;
        std::vector<TrailEntry> trail;
        for (PieceKind k : kinds) {
            Placement p(k, c.t, c.j);
            if (!placeable_cells(p)) continue;
            if (!placement_precondition(p)) continue;
            piece_claims(p, sides, gashes);
            trail.clear();
            bool ok = true;
            for (const auto& sc : sides)
                if (!claim_side(sc.edge, sc.side, sc.label, trail)) { ok = false; break; }
            if (ok)
                for (const auto& gc : gashes)
                    if (!claim_gash(gc.edge, gc.label_side0, gc.label_side1, trail)) { ok = false; break; }
            if (ok) {
                int idx = (int)placed_.size();
                placed_.push_back(p);
                for (const auto& cc : p.cells()) cover_[grid_.cell_id(cc)] = idx;
                search(cell + 1);
                for (const auto& cc : p.cells()) cover_[grid_.cell_id(cc)] = -1;
                placed_.pop_back();
            }
            unwind(trail);
        }
    }

    PuzzleGrid grid_;
    GrIndex lambda_, mu_, nu_;
    PuzzleMode mode_;
    OriginalPurpleRule variant_;
    int n_;
    std::vector<EdgeState> edges_;
    std::vector<int> cover_;
    std::vector<Placement> placed_;
    std::vector<Puzzle> out_;
};

}  // namespace detail

// Independent post-hoc checker: rebuilds all edge labels from the placement
// list and verifies exact cover, label agreement, gash rules, boundary words
// and the mode-specific KV placement rules.  Throws on the first violation.
inline void validate_puzzle(const Puzzle& P,
                            OriginalPurpleRule variant = OriginalPurpleRule::ZerosThenOnePrefix) {
    PuzzleGrid grid(P.n);
    std::vector<int> cover(grid.cell_count(), -1);
    for (int i = 0; i < (int)P.placements.size(); ++i) {
        for (const auto& c : P.placements[i].cells()) {
            if (!grid.cell_valid(c)) fail("validate: placement outside the triangle");
            int id = grid.cell_id(c);
            if (cover[id] >= 0) fail("validate: overlapping placements");
            cover[id] = i;
        }
    }
    for (int id = 0; id < grid.cell_count(); ++id)
        if (cover[id] < 0) fail("validate: uncovered cell");

    struct SideVal {
        int v[2] = {-1, -1};
        int gash = 0;
    };
    std::vector<SideVal> edges(grid.edge_count());
    auto put = [&](const EdgeRef& e, int side, int label) {
        if (!grid.edge_valid(e)) {
            if (label != 0) fail("validate: nonzero label leaves the triangle");
            return;
        }
        int& slot = edges[grid.edge_id(e)].v[side];
        if (slot >= 0 && slot != label) fail("validate: conflicting side labels");
        slot = label;
    };
    std::vector<SideClaim> sides;
    std::vector<GashClaim> gashes;
    for (const auto& p : P.placements) {
        piece_claims(p, sides, gashes);
        for (const auto& sc : sides) put(sc.edge, sc.side, sc.label);
        for (const auto& gc : gashes) {
            if (!grid.edge_valid(gc.edge) || grid.is_boundary(gc.edge))
                fail("validate: gash off the board or on the boundary");
            SideVal& sv = edges[grid.edge_id(gc.edge)];
            if (++sv.gash > 1) fail("validate: two gashes overlaid");
            put(gc.edge, 0, gc.label_side0);
            put(gc.edge, 1, gc.label_side1);
        }
    }
    // Boundary words.
    for (int m = 1; m <= P.n; ++m) {
        put(EdgeRef('S', P.n + 1 - m, 1), 1, P.lambda.bits[m - 1]);
        put(EdgeRef('B', m, m), 1, P.mu.bits[m - 1]);
        put(EdgeRef('H', P.n, m), 1, P.nu.bits[m - 1]);
    }
    // Non-gashed edges agree across sides wherever both sides carry a label.
    for (char d : {'H', 'S', 'B'}) {
        for (int t = 1; t <= P.n; ++t) {
            for (int j = 1; j <= t; ++j) {
                const SideVal& sv = edges[grid.edge_id(EdgeRef(d, t, j))];
                if (sv.gash == 0 && sv.v[0] >= 0 && sv.v[1] >= 0 && sv.v[0] != sv.v[1])
                    fail("validate: adjacent pieces disagree on an edge label");
            }
        }
    }
    // KV placement rules.
    auto anchored = [&](int t, int j, bool up, PieceKind k) {
        CellRef c(t, j, up);
        if (!grid.cell_valid(c)) return false;
        const Placement& p = P.placements[cover[grid.cell_id(c)]];
        return p.kind == k && p.t == t && p.j == j;
    };
    for (const auto& p : P.placements) {
        if (p.kind == PieceKind::Yellow) {
            if (!anchored(p.t, p.j, true, PieceKind::Diamond))
                fail("validate: yellow piece without the equivariant piece on its left");
        }
        if (p.kind == PieceKind::Purple) {
            if (P.mode == PuzzleMode::Modified) {
                bool pg = anchored(p.t, p.j + 1, true, PieceKind::Diamond);
                bool pgb = anchored(p.t, p.j + 1, true, PieceKind::GreyH) &&
                           anchored(p.t + 1, p.j + 1, false, PieceKind::BlackDown);
                if (!pg && !pgb) fail("validate: purple outside the combination pieces");
            } else {
                bool seen_one = false;
                int jj = p.j + 1;
                for (; jj <= p.t - 1; ++jj) {
                    int v = edges[grid.edge_id(EdgeRef('H', p.t - 1, jj))].v[0];
                    if (v == 1) { seen_one = true; break; }
                    if (v != 0) fail("validate: nonlocal scan hit an unlabeled edge");
                }
                if (!seen_one) fail("validate: purple fails the nonlocal condition");
                if (variant == OriginalPurpleRule::ZerosThenOneExact && jj != p.t - 1)
                    fail("validate: purple fails the exact nonlocal condition");
            }
        }
    }
}

inline std::vector<Puzzle> enumerate_puzzles(
    const GrIndex& lambda, const GrIndex& mu, const GrIndex& nu, PuzzleMode mode,
    OriginalPurpleRule variant = OriginalPurpleRule::ZerosThenOnePrefix) {
    detail::PuzzleFiller filler(lambda, mu, nu, mode, variant);
    auto out = filler.run();
    for (const auto& P : out) validate_puzzle(P, variant);
    return out;
}

inline LaurentPoly puzzle_sum(const GrIndex& lambda, const GrIndex& mu, const GrIndex& nu,
                              PuzzleMode mode,
                              OriginalPurpleRule variant = OriginalPurpleRule::ZerosThenOnePrefix) {
    LaurentPoly s(lambda.n);
    for (const auto& P : enumerate_puzzles(lambda, mu, nu, mode, variant)) s += puzzle_weight(P);
    return s;
}

}  // namespace kequiv
