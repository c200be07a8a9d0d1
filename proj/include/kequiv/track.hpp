#pragma once

// Tracks and the weight-preserving bijection between modified KV-puzzles and
// starred genomic tableaux.
//
// Track i runs from the i-th 1 on the nu-boundary to the i-th 1 on the
// mu-boundary through the 1-carrying pieces.  Letters of the flow alphabet,
// with the cell consuming the entry edge and the exit edge:
//
//   A1 grey H-rhombus [U(t,j),D(t,j)]     in H(t,j)    out H(t-1,j)
//   A2 black up-triangle U(t,j)           in H(t,j)    out B(t,j)
//   A3 grey D-rhombus [D(t,j),U(t,j+1)]   in B(t,j)    out B(t,j+1)
//   A4 diamond [U(t-1,j),D(t,j)]          in B(t,j)    out B(t-1,j)
//   A5 purple D(t,j) + diamond            in B(t,j)    out B(t,j+1)
//   A6 black down-triangle D(t,j)         in B(t,j)    out H(t-1,j)
//   A7 diamond [U(t-1,j),D(t,j)] + yellow in B(t,j)    out H(t-2,j)
//   A8 purple + grey H + black down       in B(t,j)    out H(t-1,j+1)
//   A9 purple + diamond + yellow          in B(t,j)    out H(t-1,j+1)
//
// Each letter at entry cell (t,j) sits on the diagonal slot s = t - j; label
// columns in the tableau follow from the slot: unstarred letters place in
// column s + r - k of the current row r, starred/repeat startrow letters in
// column (s-1) + r - k of the next row.
//
// The left/right boundary words L_i and R_i are read off the track per
// letter; per-letter contributions are constants of the letter type, so both
// strings come straight from the word plus the entry position.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "genomic.hpp"
#include "gr_core.hpp"
#include "puzzle.hpp"

namespace kequiv {

enum class TrackLetter : int { A1 = 1, A2, A3, A4, A5, A6, A7, A8, A9 };

inline const char* letter_name(TrackLetter l) {
    static const char* names[] = {"", "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9"};
    return names[(int)l];
}

inline bool is_startrow(TrackLetter l) {
    return l == TrackLetter::A6 || l == TrackLetter::A7 || l == TrackLetter::A8 ||
           l == TrackLetter::A9;
}

struct TrackStep {
    TrackLetter letter;
    int t = 0;  // entry cell (t, j): U(t,j) for A1/A2, D(t,j) otherwise
    int j = 0;
    int slot() const { return t - j; }
};

struct Track {
    int index = 0;    // i, 1-based
    int n = 0;
    int entry = 0;    // position (from the left) of the i-th 1 on nu
    int exit = 0;     // position (from the top) of the i-th 1 on mu
    std::vector<TrackStep> steps;

    std::string word() const {
        std::string s;
        for (const auto& st : steps) {
            if (!s.empty()) s += ".";
            s += letter_name(st.letter);
        }
        return s;
    }
};

struct BoundarySeq {
    std::vector<int> bits;
    std::string to_string() const {
        std::string s;
        for (int b : bits) s += char('0' + b);
        return s;
    }
    bool operator==(const BoundarySeq& o) const { return bits == o.bits; }
};

// ---------------------------------------------------------------------------
// Track extraction from a puzzle

namespace detail {

struct CoverMap {
    const Puzzle* P;
    PuzzleGrid grid;
    std::vector<int> cover;

    explicit CoverMap(const Puzzle& p) : P(&p), grid(p.n), cover(grid.cell_count(), -1) {
        for (int i = 0; i < (int)p.placements.size(); ++i)
            for (const auto& c : p.placements[i].cells()) cover[grid.cell_id(c)] = i;
    }

    const Placement* at(int t, int j, bool up) const {
        CellRef c(t, j, up);
        if (!grid.cell_valid(c)) return nullptr;
        int i = cover[grid.cell_id(c)];
        return i < 0 ? nullptr : &P->placements[i];
    }
};

}  // namespace detail

inline std::vector<int> ones_positions(const GrIndex& g) {
    std::vector<int> out;
    for (int i = 0; i < g.n; ++i)
        if (g.bits[i]) out.push_back(i + 1);
    return out;
}

inline std::vector<Track> extract_tracks(const Puzzle& P) {
    detail::CoverMap cm(P);
    auto nu_ones = ones_positions(P.nu);
    auto mu_ones = ones_positions(P.mu);
    std::vector<Track> tracks;
    for (int i = 1; i <= P.lambda.k; ++i) {
        Track tr;
        tr.index = i;
        tr.n = P.n;
        tr.entry = nu_ones[i - 1];
        tr.exit = mu_ones[i - 1];
        char dir = 'H';
        int t = P.n, j = tr.entry;
        while (true) {
            if (dir == 'B' && t == j) break;  // reached the mu-boundary
            if (dir == 'H') {
                const Placement* p = cm.at(t, j, true);
                if (!p) fail("extract_tracks: flow leaves the board");
                if (p->kind == PieceKind::GreyH && p->t == t && p->j == j) {
                    tr.steps.push_back({TrackLetter::A1, t, j});
                    dir = 'H'; t = t - 1;
                } else if (p->kind == PieceKind::BlackUp) {
                    tr.steps.push_back({TrackLetter::A2, t, j});
                    dir = 'B';
                } else {
                    fail("extract_tracks: flow break at a horizontal edge");
                }
            } else {
                const Placement* p = cm.at(t, j, false);
                if (!p) fail("extract_tracks: flow leaves the board");
                if (p->kind == PieceKind::GreyD && p->t == t && p->j == j) {
                    tr.steps.push_back({TrackLetter::A3, t, j});
                    j = j + 1;
                } else if (p->kind == PieceKind::Diamond) {
                    // entry through the diamond's SW edge; D(t,j) is its lower cell
                    const Placement* yellow = cm.at(t - 1, j, false);
                    if (yellow && yellow->kind == PieceKind::Yellow) {
                        tr.steps.push_back({TrackLetter::A7, t, j});
                        dir = 'H'; t = t - 2;
                    } else {
                        tr.steps.push_back({TrackLetter::A4, t, j});
                        t = t - 1;
                    }
                } else if (p->kind == PieceKind::Purple) {
                    const Placement* right = cm.at(t, j + 1, true);
                    if (right && right->kind == PieceKind::Diamond && right->t == t && right->j == j + 1) {
                        const Placement* yellow = cm.at(t, j + 1, false);
                        if (yellow && yellow->kind == PieceKind::Yellow) {
                            tr.steps.push_back({TrackLetter::A9, t, j});
                            dir = 'H'; t = t - 1; j = j + 1;
                        } else {
                            tr.steps.push_back({TrackLetter::A5, t, j});
                            j = j + 1;
                        }
                    } else if (right && right->kind == PieceKind::GreyH && right->t == t && right->j == j + 1) {
                        tr.steps.push_back({TrackLetter::A8, t, j});
                        dir = 'H'; t = t - 1; j = j + 1;
                    } else {
                        fail("extract_tracks: purple without a combination body");
                    }
                } else if (p->kind == PieceKind::BlackDown) {
                    tr.steps.push_back({TrackLetter::A6, t, j});
                    dir = 'H'; t = t - 1;
                } else {
                    fail("extract_tracks: flow break at a backslash edge");
                }
            }
            if (t < 1) fail("extract_tracks: flow ran off the top");
        }
        if (t != tr.exit) fail("extract_tracks: track ends at the wrong mu position");
        tracks.push_back(std::move(tr));
    }
    return tracks;
}

// ---------------------------------------------------------------------------
// Grammar: boxes [edges startrow boxes]* edges,
// boxes = A1* A2, edges = {A3,A4,A5}*, startrow = A6|A7|A8|A9.

struct TrackParse {
    struct Segment {
        enum Kind { Boxes, Edges, Startrow } kind;
        std::size_t begin, end;  // [begin, end) into the word
    };
    bool ok = false;
    std::size_t error_pos = 0;
    std::vector<Segment> segments;
};

inline TrackParse parse_track(const std::vector<TrackLetter>& word) {
    TrackParse out;
    std::size_t i = 0;
    auto boxes = [&]() -> bool {
        std::size_t start = i;
        while (i < word.size() && word[i] == TrackLetter::A1) ++i;
        if (i == word.size() || word[i] != TrackLetter::A2) return false;
        ++i;
        out.segments.push_back({TrackParse::Segment::Boxes, start, i});
        return true;
    };
    auto edges = [&]() {
        std::size_t start = i;
        while (i < word.size() && (word[i] == TrackLetter::A3 || word[i] == TrackLetter::A4 ||
                                   word[i] == TrackLetter::A5))
            ++i;
        out.segments.push_back({TrackParse::Segment::Edges, start, i});
    };
    if (!boxes()) {
        out.error_pos = i;
        return out;
    }
    edges();
    while (i < word.size()) {
        if (!is_startrow(word[i])) {
            out.error_pos = i;
            return out;
        }
        out.segments.push_back({TrackParse::Segment::Startrow, i, i + 1});
        ++i;
        if (!boxes()) {
            out.error_pos = i;
            return out;
        }
        edges();
    }
    out.ok = true;
    return out;
}

// ---------------------------------------------------------------------------
// Left and right boundary sequences.

inline BoundarySeq left_sequence(const Track& tr, const GrIndex& nu) {
    BoundarySeq s;
    for (int m = 1; m < tr.entry; ++m) s.bits.push_back(nu.bits[m - 1]);
    for (const auto& st : tr.steps) {
        switch (st.letter) {
            case TrackLetter::A1: s.bits.push_back(0); break;
            case TrackLetter::A2: s.bits.push_back(1); break;
            case TrackLetter::A3: s.bits.push_back(0); break;
            case TrackLetter::A4: s.bits.push_back(0); break;
            case TrackLetter::A5: s.bits.push_back(0); break;
            case TrackLetter::A6: break;
            case TrackLetter::A7: s.bits.push_back(0); break;
            case TrackLetter::A8: s.bits.push_back(0); break;
            case TrackLetter::A9: s.bits.push_back(0); break;
        }
    }
    if ((int)s.bits.size() != tr.n) fail("left_sequence: wrong length");
    return s;
}

inline BoundarySeq right_sequence(const Track& tr, const GrIndex& nu) {
    BoundarySeq s;
    for (int m = 1; m <= tr.entry; ++m) s.bits.push_back(nu.bits[m - 1]);
    for (const auto& st : tr.steps) {
        switch (st.letter) {
            case TrackLetter::A1: s.bits.push_back(0); break;
            case TrackLetter::A2: break;
            case TrackLetter::A3: s.bits.push_back(0); break;
            case TrackLetter::A4: s.bits.push_back(0); break;
            case TrackLetter::A5: s.bits.push_back(0); break;
            case TrackLetter::A6: s.bits.push_back(1); break;
            case TrackLetter::A7:
                s.bits.push_back(0);
                s.bits.push_back(1);
                break;
            case TrackLetter::A8:
                s.bits.push_back(1);
                s.bits.push_back(0);
                break;
            case TrackLetter::A9:
                s.bits.push_back(0);
                s.bits.push_back(1);
                break;
        }
    }
    if ((int)s.bits.size() != tr.n) fail("right_sequence: wrong length");
    return s;
}

// ---------------------------------------------------------------------------
// NWrays.

struct NWRay {
    std::vector<Placement> rhombi;  // GreyV links, SE to NW
    EdgeRef terminus;               // a '/' edge
    bool at_lambda_boundary = false;
    Placement startrow_piece;       // valid when !at_lambda_boundary
};

// The NWray of the black up-triangle at U(t,j): the maximal stack of GreyV
// rhombi northwest of its west edge, ending at the lambda-boundary or at the
// receiving edge of a startrow piece (the black down-triangle's east edge, or
// the yellow's remote-gash edge).
inline NWRay nwray(const Puzzle& P, int t, int j) {
    detail::CoverMap cm(P);
    NWRay ray;
    while (true) {
        ray.terminus = EdgeRef('S', t, j);
        if (j == 1) {
            ray.at_lambda_boundary = true;
            return ray;
        }
        const Placement* west = cm.at(t, j - 1, false);
        if (west && west->kind == PieceKind::BlackDown) {
            ray.startrow_piece = *west;
            return ray;
        }
        const Placement* yellow = cm.at(t - 1, j - 1, false);
        if (yellow && yellow->kind == PieceKind::Yellow) {
            ray.startrow_piece = *yellow;
            return ray;
        }
        const Placement* v = cm.at(t - 1, j - 1, true);
        if (!(v && v->kind == PieceKind::GreyV && v->t == t - 1 && v->j == j - 1))
            fail("nwray: broken ray");
        ray.rhombi.push_back(*v);
        --t;
        --j;
    }
}

// ---------------------------------------------------------------------------
// phi: modified KV-puzzle -> starred genomic tableau.

inline GenomicTableau phi(const Puzzle& P) {
    Partition lam = bits_to_partition(P.lambda);
    Partition mu = bits_to_partition(P.mu);
    Partition nu = bits_to_partition(P.nu);
    const int k = P.lambda.k;
    GenomicTableau T;
    T.n = P.n;
    T.k = k;
    T.lambda = lam;
    T.nu = nu;
    for (const auto& tr : extract_tracks(P)) {
        const int i = tr.index;
        int r = i;
        int gene = mu.parts[i - 1] + 1;  // next-smaller-gene counter
        for (const auto& st : tr.steps) {
            const int s = st.slot();
            switch (st.letter) {
                case TrackLetter::A1:
                    T.box[BoxPos(r, s + r - k)] = GeneLabel(i, --gene);
                    break;
                case TrackLetter::A2:
                case TrackLetter::A3:
                    break;
                case TrackLetter::A4:
                    T.edge[BoxPos(r, s + r - k)].push_back(GeneLabel(i, --gene));
                    break;
                case TrackLetter::A5:
                    T.edge[BoxPos(r, s + r - k)].push_back(GeneLabel(i, gene));
                    break;
                case TrackLetter::A6:
                    ++r;
                    break;
                case TrackLetter::A7:
                    ++r;
                    T.box[BoxPos(r, s - 1 + r - k)] = GeneLabel(i, --gene, true);
                    break;
                case TrackLetter::A8:
                    ++r;
                    T.box[BoxPos(r, s - 1 + r - k)] = GeneLabel(i, gene);
                    break;
                case TrackLetter::A9:
                    ++r;
                    T.box[BoxPos(r, s - 1 + r - k)] = GeneLabel(i, gene, true);
                    break;
            }
        }
        if (mu.parts[i - 1] > 0 && gene != 1)
            fail("phi: track " + std::to_string(i) + " placed the wrong number of genes");
    }
    // keep each edge set sorted by family (they are appended per track i)
    for (auto& [pos, labs] : T.edge) std::sort(labs.begin(), labs.end());
    return T;
}

// ---------------------------------------------------------------------------
// psi: starred genomic tableau -> modified KV-puzzle.

namespace detail {

struct SigmaLetter {
    TrackLetter letter;
    GeneLabel label;   // meaningful for label-placing letters
    bool has_label = false;
};

// Build sigma_i from the tableau by walking diagonal slots from the entry
// slot down to 1.  The black-triangle slots are forced by the profile
// nu^{(i-1)} (the 1s of L_i); the letters in between are read off the labels.
inline std::vector<SigmaLetter> build_sigma(const GenomicTableau& T, const Partition& mu,
                                            const std::vector<int>& profile_bits, int i,
                                            int entry_pos) {
    const int n = T.n, k = T.k;
    std::vector<int> ones;  // 1-positions of L_i
    for (int m = 1; m <= n; ++m)
        if (profile_bits[m - 1]) ones.push_back(m);
    if ((int)ones.size() != k) fail("psi: profile has the wrong number of 1s");

    const int rows = k - i + 1;
    std::vector<int> black_slot(rows);
    for (int j = 0; j < rows; ++j) black_slot[j] = n - ones[i - 1 + j];

    // family-i labels by row
    std::vector<std::vector<std::pair<int, GeneLabel>>> boxes(k + 1), edges(k + 1);
    for (const auto& [pos, lab] : T.box)
        if (lab.family == i) boxes[pos.row].push_back({pos.col, lab});
    for (const auto& [pos, labs] : T.edge)
        for (const auto& lab : labs)
            if (lab.family == i) edges[pos.row].push_back({pos.col, lab});
    for (int r = 1; r <= k; ++r) {
        std::sort(boxes[r].rbegin(), boxes[r].rend());  // right to left
        std::sort(edges[r].rbegin(), edges[r].rend());
        if (r < i && (!boxes[r].empty() || !edges[r].empty()))
            fail("psi: family label above its row");
    }

    std::vector<SigmaLetter> word;
    int cur = n - entry_pos;  // next slot to consume
    int gene = mu.parts[i - 1] + 1;
    auto emit = [&](TrackLetter l, const GeneLabel& g, bool has) {
        word.push_back({l, g, has});
    };
    auto place_new = [&](const GeneLabel& g) {
        if (g.gene != gene - 1) fail("psi: gene sequence breaks the next-smaller rule");
        --gene;
    };
    auto place_repeat = [&](const GeneLabel& g) {
        if (g.gene != gene) fail("psi: repeated gene is not the last used");
    };

    for (int jrow = 0; jrow < rows; ++jrow) {
        const int r = i + jrow;
        // startrow letter into row r (none for the first row)
        std::size_t box_from = 0;
        if (r > i) {
            if (!boxes[r].empty()) {
                const auto& [c, g] = boxes[r][0];
                bool repeat = g.gene == gene;
                if (g.starred || repeat) {
                    TrackLetter l = !g.starred ? TrackLetter::A8
                                               : (repeat ? TrackLetter::A9 : TrackLetter::A7);
                    int w = c + 1 - r + k;  // top slot of the startrow letter
                    if (w != cur) fail("psi: startrow label out of position");
                    if (repeat) place_repeat(g);
                    else place_new(g);
                    emit(l, g, true);
                    cur -= 2;
                    box_from = 1;
                } else {
                    emit(TrackLetter::A6, GeneLabel(), false);
                    cur -= 1;
                }
            } else {
                emit(TrackLetter::A6, GeneLabel(), false);
                cur -= 1;
            }
        }
        // remaining box labels of row r: consecutive new genes
        for (std::size_t q = box_from; q < boxes[r].size(); ++q) {
            const auto& [c, g] = boxes[r][q];
            if (g.starred) fail("psi: starred label is not the row's rightmost");
            if (c - r + k != cur) fail("psi: box label out of position");
            place_new(g);
            emit(TrackLetter::A1, g, true);
            cur -= 1;
        }
        // the black triangle closing the row's boxes
        if (black_slot[jrow] != cur) fail("psi: black-triangle slot mismatch");
        emit(TrackLetter::A2, GeneLabel(), false);
        // Edge letters of row r run down to just above the next row's block.
        // Whether that block opens with A6 or a label-placing startrow, its
        // top slot is col(first box) + 1 - (r+1) + k, or one above the black
        // triangle when the next row has no family-i boxes.
        int stop;  // lowest slot of this edges run
        if (jrow + 1 < rows) {
            const int rn = r + 1;
            int w = boxes[rn].empty() ? black_slot[jrow + 1] + 1
                                      : boxes[rn][0].first + 1 - rn + k;
            stop = w + 1;
        } else {
            stop = 1;
        }
        std::size_t e = 0;
        for (int s = cur; s >= stop; --s) {
            int c = s + r - k;
            if (e < edges[r].size() && edges[r][e].first == c) {
                const GeneLabel& g = edges[r][e].second;
                if (g.gene == gene) {
                    emit(TrackLetter::A5, g, true);
                } else {
                    place_new(g);
                    emit(TrackLetter::A4, g, true);
                }
                ++e;
            } else {
                emit(TrackLetter::A3, GeneLabel(), false);
            }
            cur -= 1;
        }
        if (e != edges[r].size()) fail("psi: edge label outside its row's slot range");
    }
    if (cur != 0) fail("psi: track does not close at the mu-boundary");
    if (mu.parts[i - 1] > 0 && gene != 1) fail("psi: wrong gene count");
    return word;
}

}  // namespace detail

inline Puzzle psi(const GenomicTableau& T, const Partition& mu) {
    const int n = T.n, k = T.k;
    GrIndex lambda = partition_to_bits(T.lambda);
    GrIndex mu_bits = partition_to_bits(Partition(n, k, mu.parts));
    GrIndex nu = partition_to_bits(T.nu);
    PuzzleGrid grid(n);

    std::vector<Placement> placements;
    std::vector<std::pair<int, int>> blacks;  // anchors of BlackUp pieces
    auto nu_ones = ones_positions(nu);

    // cumulative outer shapes nu^{(i)}
    std::vector<Partition> profile(k + 1);
    profile[0] = T.lambda;
    for (int i = 1; i <= k; ++i) {
        std::vector<int> parts = profile[i - 1].parts;
        for (const auto& [pos, lab] : T.box)
            if (lab.family == i) parts[pos.row - 1] = std::max(parts[pos.row - 1], pos.col);
        profile[i] = Partition(n, k, parts);
        if (!contains(profile[i], profile[i - 1])) fail("psi: family shapes do not nest");
    }

    for (int i = 1; i <= k; ++i) {
        auto sigma = detail::build_sigma(T, mu, partition_to_bits(profile[i - 1]).bits, i, nu_ones[i - 1]);
        // attach pieces along the frontier
        char dir = 'H';
        int t = n, j = nu_ones[i - 1];
        for (const auto& sl : sigma) {
            switch (sl.letter) {
                case TrackLetter::A1:
                    placements.emplace_back(PieceKind::GreyH, t, j);
                    t -= 1;
                    break;
                case TrackLetter::A2:
                    placements.emplace_back(PieceKind::BlackUp, t, j);
                    blacks.push_back({t, j});
                    dir = 'B';
                    break;
                case TrackLetter::A3:
                    placements.emplace_back(PieceKind::GreyD, t, j);
                    j += 1;
                    break;
                case TrackLetter::A4:
                    placements.emplace_back(PieceKind::Diamond, t - 1, j);
                    t -= 1;
                    break;
                case TrackLetter::A5:
                    placements.emplace_back(PieceKind::Purple, t, j);
                    placements.emplace_back(PieceKind::Diamond, t, j + 1);
                    j += 1;
                    break;
                case TrackLetter::A6:
                    placements.emplace_back(PieceKind::BlackDown, t, j);
                    dir = 'H';
                    t -= 1;
                    break;
                case TrackLetter::A7:
                    placements.emplace_back(PieceKind::Diamond, t - 1, j);
                    placements.emplace_back(PieceKind::Yellow, t - 1, j);
                    dir = 'H';
                    t -= 2;
                    break;
                case TrackLetter::A8:
                    placements.emplace_back(PieceKind::Purple, t, j);
                    placements.emplace_back(PieceKind::GreyH, t, j + 1);
                    placements.emplace_back(PieceKind::BlackDown, t + 1, j + 1);
                    dir = 'H';
                    t -= 1;
                    j += 1;
                    break;
                case TrackLetter::A9:
                    placements.emplace_back(PieceKind::Purple, t, j);
                    placements.emplace_back(PieceKind::Diamond, t, j + 1);
                    placements.emplace_back(PieceKind::Yellow, t, j + 1);
                    dir = 'H';
                    t -= 1;
                    j += 1;
                    break;
            }
        }
        if (dir != 'B' || t != j) fail("psi: track does not end on the mu-boundary");
        (void)dir;
    }

    // NWrays: stack GreyV northwest of each black up-triangle until the
    // lambda-boundary or a startrow receiving edge.
    std::set<std::pair<int, int>> black_down_anchors, yellow_anchors;
    for (const auto& p : placements) {
        if (p.kind == PieceKind::BlackDown) black_down_anchors.insert({p.t, p.j});
        if (p.kind == PieceKind::Yellow) yellow_anchors.insert({p.t, p.j});
    }
    for (auto [t, j] : blacks) {
        while (j > 1) {
            if (black_down_anchors.count({t, j - 1})) break;       // A6/A8 east edge
            if (yellow_anchors.count({t - 1, j - 1})) break;       // yellow remote gash
            placements.emplace_back(PieceKind::GreyV, t - 1, j - 1);
            --t;
            --j;
        }
    }

    // fill the rest with white triangles
    std::vector<int> cover(grid.cell_count(), 0);
    for (const auto& p : placements)
        for (const auto& c : p.cells()) {
            if (!grid.cell_valid(c)) fail("psi: placement outside the board");
            if (cover[grid.cell_id(c)]++) fail("psi: overlapping placements");
        }
    for (int t = 1; t <= n; ++t) {
        for (int j = 1; j <= t; ++j) {
            if (!cover[grid.cell_id(CellRef(t, j, true))])
                placements.emplace_back(PieceKind::WhiteUp, t, j);
            if (j < t && !cover[grid.cell_id(CellRef(t, j, false))])
                placements.emplace_back(PieceKind::WhiteDown, t, j);
        }
    }

    Puzzle P;
    P.n = n;
    P.lambda = lambda;
    P.mu = mu_bits;
    P.nu = nu;
    P.mode = PuzzleMode::Modified;
    P.placements = std::move(placements);
    std::sort(P.placements.begin(), P.placements.end());
    validate_puzzle(P);
    return P;
}

inline Puzzle psi(const GenomicTableau& T, const GrIndex& mu) {
    return psi(T, bits_to_partition(mu));
}

// ---------------------------------------------------------------------------
// verify_bijection

struct BijectionReport {
    GrIndex lambda, mu, nu;
    int puzzle_count = 0;
    int tableau_count = 0;
    int matched_pairs = 0;
    bool weights_equal = false;
    bool round_trips = false;
    bool ok = false;
    std::vector<std::string> mismatches;
};

inline BijectionReport verify_bijection(const GrIndex& lambda, const GrIndex& mu, const GrIndex& nu) {
    BijectionReport rep;
    rep.lambda = lambda;
    rep.mu = mu;
    rep.nu = nu;
    auto puzzles = enumerate_puzzles(lambda, mu, nu, PuzzleMode::Modified);
    auto tableaux = enumerate_tableaux(lambda, mu, nu);
    rep.puzzle_count = (int)puzzles.size();
    rep.tableau_count = (int)tableaux.size();
    Partition mu_part = bits_to_partition(mu);

    std::map<GenomicTableau, int> tab_index;
    for (int i = 0; i < (int)tableaux.size(); ++i) tab_index[tableaux[i]] = i;

    rep.weights_equal = true;
    rep.round_trips = true;
    std::vector<char> hit(tableaux.size(), 0);
    for (const auto& P : puzzles) {
        GenomicTableau T;
        try {
            T = phi(P);
        } catch (const std::exception& e) {
            rep.mismatches.push_back(std::string("phi failed: ") + e.what());
            rep.round_trips = false;
            continue;
        }
        auto bad = validate(T, mu_part);
        if (!bad.empty()) {
            rep.mismatches.push_back("phi image invalid: " + bad.front());
            rep.round_trips = false;
            continue;
        }
        auto it = tab_index.find(T);
        if (it == tab_index.end()) {
            rep.mismatches.push_back("phi image not in the tableau enumeration");
            continue;
        }
        if (hit[it->second]++) {
            rep.mismatches.push_back("phi not injective");
            continue;
        }
        ++rep.matched_pairs;
        if (puzzle_weight(P) != tableau_weight(T, mu_part)) {
            rep.weights_equal = false;
            rep.mismatches.push_back("weights differ for a matched pair");
        }
        try {
            Puzzle back = psi(T, mu_part);
            if (!(back == P)) {
                rep.round_trips = false;
                rep.mismatches.push_back("psi(phi(P)) != P");
            }
        } catch (const std::exception& e) {
            rep.round_trips = false;
            rep.mismatches.push_back(std::string("psi failed: ") + e.what());
        }
    }
    for (std::size_t i = 0; i < tableaux.size(); ++i) {
        if (!hit[i]) {
            if (rep.puzzle_count == rep.tableau_count)
                rep.mismatches.push_back("tableau missed by phi");
            continue;
        }
    }
    // phi(psi(T)) = T on the tableau side
    for (const auto& T : tableaux) {
        try {
            Puzzle P = psi(T, mu_part);
            if (!(phi(P) == T)) {
                rep.round_trips = false;
                rep.mismatches.push_back("phi(psi(T)) != T");
            }
        } catch (const std::exception& e) {
            rep.round_trips = false;
            rep.mismatches.push_back(std::string("psi failed on a tableau: ") + e.what());
        }
    }
    rep.ok = rep.puzzle_count == rep.tableau_count && rep.matched_pairs == rep.puzzle_count &&
             rep.weights_equal && rep.round_trips && rep.mismatches.empty();
    return rep;
}

}  // namespace kequiv
