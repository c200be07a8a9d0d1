#pragma once

// Edge-labeled genomic tableaux: semistandardness (S.1)-(S.4), the too-high
// condition, ballotness over all gene-representative choices, starrable
// boxes, enumeration of StarBallotGen_mu(nu/lambda), and the weight that sums
// to the structure constant.
//
// A label i_j may sit in a box of nu/lambda or on a horizontal edge weakly
// between the southern border of lambda and the northern border of nu.  In
// box coordinates the labelable edges are the lower edges of boxes (rho, c)
// with lambda'_c <= rho <= nu'_c; note rho = lambda'_c is allowed even when
// the column has no skew boxes at all (such edges do occur in the worked
// examples).

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gr_core.hpp"
#include "laurent.hpp"

namespace kequiv {

struct GeneLabel {
    int family = 0;  // i
    int gene = 0;    // j
    bool starred = false;

    GeneLabel() = default;
    GeneLabel(int f, int g, bool s = false) : family(f), gene(g), starred(s) {}

    bool operator==(const GeneLabel& o) const {
        return family == o.family && gene == o.gene && starred == o.starred;
    }
    bool operator<(const GeneLabel& o) const {
        if (family != o.family) return family < o.family;
        if (gene != o.gene) return gene < o.gene;
        return !starred && o.starred;
    }

    std::string to_string() const {
        std::string s = std::to_string(family) + "_" + std::to_string(gene);
        if (starred) s += "*";
        return s;
    }
};

struct GenomicTableau {
    int n = 0;
    int k = 0;
    Partition lambda;  // inner shape
    Partition nu;      // outer shape
    std::map<BoxPos, GeneLabel> box;                 // one label per skew box
    std::map<BoxPos, std::vector<GeneLabel>> edge;   // labels on the lower edge of box (r,c)

    bool operator==(const GenomicTableau& o) const {
        return n == o.n && k == o.k && lambda == o.lambda && nu == o.nu && box == o.box &&
               edge == o.edge;
    }
    bool operator<(const GenomicTableau& o) const {
        if (box != o.box) return box < o.box;
        return edge < o.edge;
    }

    SkewShape shape() const { return SkewShape(nu, lambda); }

    int label_count() const {
        int c = (int)box.size();
        for (const auto& [pos, labs] : edge) c += (int)labs.size();
        return c;
    }

    int star_count() const {
        int c = 0;
        for (const auto& [pos, lab] : box) c += lab.starred;
        return c;
    }

    // content alpha_i = largest gene of family i present
    std::vector<int> content() const {
        std::vector<int> alpha(k, 0);
        auto see = [&](const GeneLabel& g) {
            if (g.family >= 1 && g.family <= k) alpha[g.family - 1] = std::max(alpha[g.family - 1], g.gene);
        };
        for (const auto& [pos, lab] : box) see(lab);
        for (const auto& [pos, labs] : edge)
            for (const auto& lab : labs) see(lab);
        return alpha;
    }

    std::string to_string() const {
        std::string s;
        for (int r = 1; r <= k; ++r) {
            std::string row;
            for (int c = 1; c <= n - k; ++c) {
                auto bi = box.find(BoxPos(r, c));
                if (bi != box.end()) row += bi->second.to_string();
                else if (c <= lambda.parts[r - 1] && c <= nu.parts[r - 1]) row += ".";
                auto ei = edge.find(BoxPos(r, c));
                if (ei != edge.end()) {
                    row += "{";
                    for (std::size_t q = 0; q < ei->second.size(); ++q) {
                        if (q) row += ",";
                        row += ei->second[q].to_string();
                    }
                    row += "}";
                }
                row += " ";
            }
            while (!row.empty() && row.back() == ' ') row.pop_back();
            s += row;
            if (r < k) s += "\n";
        }
        return s;
    }
};

// Labelable edge positions (r, c): the lower edge of box (r, c).
inline std::vector<BoxPos> labelable_edges(const Partition& lambda, const Partition& nu) {
    std::vector<BoxPos> out;
    for (int r = 1; r <= nu.k; ++r)
        for (int c = 1; c <= nu.n - nu.k; ++c) {
            int lam_c = lambda.conjugate_at(c);
            int nu_c = nu.conjugate_at(c);
            if (r >= std::max(1, lam_c) && r <= nu_c) out.emplace_back(r, c);
        }
    return out;
}

// Starrable: the box holds i_j, sits in a row strictly below row i, and
// i_{j+1} is not the box label immediately to its right.
inline bool starrable(const GenomicTableau& T, const BoxPos& x) {
    auto it = T.box.find(x);
    if (it == T.box.end()) return false;
    const GeneLabel& g = it->second;
    if (x.row <= g.family) return false;
    auto right = T.box.find(BoxPos(x.row, x.col + 1));
    if (right != T.box.end() && right->second.family == g.family &&
        right->second.gene == g.gene + 1)
        return false;
    return true;
}

inline std::vector<BoxPos> starrable_boxes(const GenomicTableau& T) {
    std::vector<BoxPos> out;
    for (const auto& [pos, lab] : T.box)
        if (starrable(T, pos)) out.push_back(pos);
    return out;
}

namespace detail {

// All labels of a column in top-to-bottom order, for (S.2) and the reading
// word: box(1,c), edge(1,c)-labels, box(2,c), edge(2,c)-labels, ...
inline std::vector<std::pair<int, GeneLabel>> column_labels(const GenomicTableau& T, int c) {
    std::vector<std::pair<int, GeneLabel>> out;  // (2*row or 2*row+1 for edge, label)
    for (int r = 1; r <= T.k; ++r) {
        auto bi = T.box.find(BoxPos(r, c));
        if (bi != T.box.end()) out.emplace_back(2 * r, bi->second);
        auto ei = T.edge.find(BoxPos(r, c));
        if (ei != T.edge.end())
            for (const auto& lab : ei->second) out.emplace_back(2 * r + 1, lab);
    }
    return out;
}

}  // namespace detail

// Full validity report; empty means T is a member of StarBallotGen_mu.
inline std::vector<std::string> validate(const GenomicTableau& T, const Partition& mu);

// Ballot: for every choice of one representative per gene, the column reading
// word (columns right to left, top to bottom inside a column, edge sets from
// least to greatest) has every prefix with at least as many i's as (i+1)'s.
inline bool is_ballot(const GenomicTableau& T) {
    // occurrences per gene, in reading order
    struct Occ {
        int order;
        int family;
    };
    std::vector<Occ> word;
    std::map<std::pair<int, int>, std::vector<int>> gene_occ;  // (family, gene) -> word positions
    int ncols = T.n - T.k;
    for (int c = ncols; c >= 1; --c) {
        for (const auto& [vert, lab] : detail::column_labels(T, c)) {
            (void)vert;
            gene_occ[{lab.family, lab.gene}].push_back((int)word.size());
            word.push_back({(int)word.size(), lab.family});
        }
    }
    // iterate over all representative choices
    std::vector<std::vector<int>> occs;
    occs.reserve(gene_occ.size());
    for (auto& [key, v] : gene_occ) occs.push_back(v);
    std::vector<std::size_t> pick(occs.size(), 0);
    while (true) {
        std::vector<char> keep(word.size(), 0);
        for (std::size_t g = 0; g < occs.size(); ++g) keep[occs[g][pick[g]]] = 1;
        std::vector<int> count(T.k + 2, 0);
        bool ok = true;
        for (std::size_t w = 0; w < word.size() && ok; ++w) {
            if (!keep[w]) continue;
            int i = word[w].family;
            ++count[i];
            if (i >= 2 && count[i] > count[i - 1]) ok = false;
        }
        if (!ok) return false;
        std::size_t g = 0;
        for (; g < occs.size(); ++g) {
            if (++pick[g] < occs[g].size()) break;
            pick[g] = 0;
        }
        if (g == occs.size()) break;
    }
    return true;
}

inline std::vector<std::string> validate(const GenomicTableau& T, const Partition& mu) {
    std::vector<std::string> bad;
    auto at = [](const BoxPos& p) {
        return "(" + std::to_string(p.row) + "," + std::to_string(p.col) + ")";
    };
    SkewShape shape(T.nu, T.lambda);
    // every skew box labeled, no labels elsewhere
    for (const auto& cell : shape.cells())
        if (!T.box.count(cell)) bad.push_back("missing box label at " + at(cell));
    for (const auto& [pos, lab] : T.box) {
        if (!shape.has_cell(pos.row, pos.col)) bad.push_back("box label outside nu/lambda at " + at(pos));
        if (lab.family < 1 || lab.gene < 1) bad.push_back("malformed label at " + at(pos));
    }
    auto edge_posns = labelable_edges(T.lambda, T.nu);
    std::set<BoxPos> edge_ok(edge_posns.begin(), edge_posns.end());
    for (const auto& [pos, labs] : T.edge) {
        if (!edge_ok.count(pos)) bad.push_back("edge labels on a non-labelable edge at " + at(pos));
        if (labs.empty()) bad.push_back("empty edge label set stored at " + at(pos));
        for (const auto& lab : labs)
            if (lab.starred) bad.push_back("starred edge label at " + at(pos));
        // (S.3): distinct ignoring subscripts, kept sorted by family
        for (std::size_t q = 1; q < labs.size(); ++q) {
            if (labs[q - 1].family >= labs[q].family)
                bad.push_back("(S.3) repeated family on the edge at " + at(pos));
        }
    }
    // (S.1) box labels strictly increase lexicographically along rows
    for (int r = 1; r <= T.k; ++r) {
        const GeneLabel* prev = nullptr;
        for (int c = 1; c <= T.n - T.k; ++c) {
            auto it = T.box.find(BoxPos(r, c));
            if (it == T.box.end()) continue;
            if (prev) {
                bool lt = prev->family < it->second.family ||
                          (prev->family == it->second.family && prev->gene < it->second.gene);
                if (!lt) bad.push_back("(S.1) violated at " + at(BoxPos(r, c)));
            }
            prev = &it->second;
        }
    }
    // (S.2) strict column increase ignoring subscripts, edges included
    for (int c = 1; c <= T.n - T.k; ++c) {
        auto col = detail::column_labels(T, c);
        for (std::size_t q = 1; q < col.size(); ++q) {
            if (col[q - 1].first == col[q].first) continue;  // same edge: only (S.3) applies
            if (col[q - 1].second.family >= col[q].second.family)
                bad.push_back("(S.2) violated in column " + std::to_string(c));
        }
    }
    // (S.4) if i_j west of i_k then j <= k
    {
        std::map<int, std::vector<std::pair<int, int>>> fam_occ;  // family -> (col, gene)
        for (const auto& [pos, lab] : T.box) fam_occ[lab.family].push_back({pos.col, lab.gene});
        for (const auto& [pos, labs] : T.edge)
            for (const auto& lab : labs) fam_occ[lab.family].push_back({pos.col, lab.gene});
        for (auto& [fam, occ] : fam_occ) {
            for (const auto& [c1, j1] : occ)
                for (const auto& [c2, j2] : occ)
                    if (c1 < c2 && j1 > j2)
                        bad.push_back("(S.4) violated for family " + std::to_string(fam));
        }
    }
    // too high: i_j weakly above the north edge of row i
    for (const auto& [pos, lab] : T.box)
        if (pos.row < lab.family) bad.push_back("too-high box label at " + at(pos));
    for (const auto& [pos, labs] : T.edge)
        for (const auto& lab : labs)
            if (pos.row < lab.family) bad.push_back("too-high edge label at " + at(pos));
    // stars only on starrable boxes
    for (const auto& [pos, lab] : T.box)
        if (lab.starred && !starrable(T, pos)) bad.push_back("star on a non-starrable box at " + at(pos));
    // content equals mu with genes forming initial intervals
    {
        std::set<std::pair<int, int>> genes;
        for (const auto& [pos, lab] : T.box) genes.insert({lab.family, lab.gene});
        for (const auto& [pos, labs] : T.edge)
            for (const auto& lab : labs) genes.insert({lab.family, lab.gene});
        for (int i = 1; i <= T.k; ++i) {
            int want = mu.parts[i - 1];
            for (int j = 1; j <= want; ++j)
                if (!genes.count({i, j}))
                    bad.push_back("content: missing gene " + std::to_string(i) + "_" + std::to_string(j));
            for (const auto& [fi, fj] : genes)
                if (fi == i && fj > want)
                    bad.push_back("content: extra gene " + std::to_string(fi) + "_" + std::to_string(fj));
        }
    }
    if (bad.empty() && !is_ballot(T)) bad.push_back("not ballot");
    return bad;
}

// d-hat = #labels + #stars - |mu|
inline int tableau_sign_exponent(const GenomicTableau& T, const Partition& mu) {
    int d = T.label_count() + T.star_count() - mu.size();
    if (d < 0) fail("tableau weight: negative sign exponent");
    return d;
}

inline LaurentPoly tableau_weight(const GenomicTableau& T, const Partition& mu) {
    const int n = T.n, k = T.k;
    LaurentPoly w = LaurentPoly::constant(n, tableau_sign_exponent(T, mu) % 2 == 0 ? 1 : -1);
    auto denom = [&](const BoxPos& x, const GeneLabel& g) {
        return x.row - g.family + mu.parts[g.family - 1] - g.gene + 1 + manhattan(x, n, k);
    };
    for (const auto& [pos, labs] : T.edge)
        for (const auto& lab : labs) {
            int m = manhattan(pos, n, k);
            w *= EquivFactor(m, denom(pos, lab)).to_poly(n);
        }
    for (const auto& [pos, lab] : T.box) {
        if (!lab.starred) continue;
        int m = manhattan(pos, n, k);
        w *= EquivFactor(m + 1, denom(pos, lab)).to_poly(n);
    }
    return w;
}

namespace detail {

class TableauEnumerator {
public:
    TableauEnumerator(const Partition& lambda, const Partition& mu, const Partition& nu)
        : lambda_(lambda), mu_(mu), nu_(nu), n_(nu.n), k_(nu.k) {
        if (lambda.n != n_ || mu.n != n_ || lambda.k != k_ || mu.k != k_)
            fail("enumerate_tableaux: mismatched rectangles");
    }

    std::vector<GenomicTableau> run() {
        out_.clear();
        if (!contains(nu_, lambda_)) return out_;
        cells_ = SkewShape(nu_, lambda_).cells();
        edges_ = labelable_edges(lambda_, nu_);
        base_.n = n_;
        base_.k = k_;
        base_.lambda = lambda_;
        base_.nu = nu_;
        place_box(0);
        std::sort(out_.begin(), out_.end());
        return out_;
    }

private:
    // candidate genes (i, j) at a given column, honoring (S.4) against all
    // labels placed so far
    bool s4_ok(int family, int gene, int col) const {
        for (const auto& [c, j] : occ_[family - 1]) {
            if (c < col && j > gene) return false;
            if (c > col && j < gene) return false;
        }
        return true;
    }

    void place_box(std::size_t idx) {
        if (idx == cells_.size()) {
            place_edge(0);
            return;
        }
        const BoxPos x = cells_[idx];
        auto left = base_.box.find(BoxPos(x.row, x.col - 1));
        auto above = base_.box.find(BoxPos(x.row - 1, x.col));
        for (int i = 1; i <= k_; ++i) {
            if (x.row < i) break;             // too high
            if (mu_.parts[i - 1] == 0) continue;
            if (above != base_.box.end() && above->second.family >= i) continue;  // (S.2)
            for (int j = 1; j <= mu_.parts[i - 1]; ++j) {
                if (left != base_.box.end()) {
                    const GeneLabel& L = left->second;
                    bool lt = L.family < i || (L.family == i && L.gene < j);
                    if (!lt) continue;  // (S.1)
                }
                if (!s4_ok(i, j, x.col)) continue;
                base_.box[x] = GeneLabel(i, j);
                occ_[i - 1].push_back({x.col, j});
                place_box(idx + 1);
                occ_[i - 1].pop_back();
                base_.box.erase(x);
            }
        }
    }

    void place_edge(std::size_t idx) {
        if (idx == edges_.size()) {
            finish();
            return;
        }
        const BoxPos x = edges_[idx];
        // families strictly between the box above and the box below (S.2)
        int lo = 0, hi = k_ + 1;
        auto above = base_.box.find(x);
        if (above != base_.box.end()) lo = above->second.family;
        auto below = base_.box.find(BoxPos(x.row + 1, x.col));
        if (below != base_.box.end()) hi = below->second.family;
        choose_edge_labels(idx, x, std::max(lo + 1, 1), hi - 1);
    }

    // add an optional label for each admissible family in increasing order
    void choose_edge_labels(std::size_t idx, const BoxPos& x, int fam, int fam_hi) {
        if (fam > fam_hi) {
            place_edge(idx + 1);
            return;
        }
        // skip this family
        choose_edge_labels(idx, x, fam + 1, fam_hi);
        if (x.row < fam) return;  // too high, and families only grow
        if (mu_.parts[fam - 1] == 0) return;
        for (int j = 1; j <= mu_.parts[fam - 1]; ++j) {
            if (!s4_ok(fam, j, x.col)) continue;
            base_.edge[x].push_back(GeneLabel(fam, j));
            occ_[fam - 1].push_back({x.col, j});
            choose_edge_labels(idx, x, fam + 1, fam_hi);
            occ_[fam - 1].pop_back();
            base_.edge[x].pop_back();
            if (base_.edge[x].empty()) base_.edge.erase(x);
        }
    }

    void finish() {
        // content must be exactly mu (initial intervals, nothing beyond)
        std::vector<std::set<int>> genes(k_);
        for (int i = 0; i < k_; ++i)
            for (const auto& [c, j] : occ_[i]) genes[i].insert(j);
        for (int i = 0; i < k_; ++i) {
            if ((int)genes[i].size() != mu_.parts[i]) return;
            if (mu_.parts[i] > 0 && *genes[i].rbegin() != mu_.parts[i]) return;
        }
        if (!is_ballot(base_)) return;
        // expand star subsets
        auto stars = starrable_boxes(base_);
        for (std::uint32_t mask = 0; mask < (1u << stars.size()); ++mask) {
            GenomicTableau T = base_;
            for (std::size_t s = 0; s < stars.size(); ++s)
                if (mask & (1u << s)) T.box[stars[s]].starred = true;
            out_.push_back(std::move(T));
        }
    }

    Partition lambda_, mu_, nu_;
    int n_, k_;
    std::vector<BoxPos> cells_;
    std::vector<BoxPos> edges_;
    GenomicTableau base_;
    std::array<std::vector<std::pair<int, int>>, 16> occ_ = {};
    std::vector<GenomicTableau> out_;
};

}  // namespace detail

inline std::vector<GenomicTableau> enumerate_tableaux(const Partition& lambda, const Partition& mu,
                                                      const Partition& nu) {
    if (nu.k > 16) fail("enumerate_tableaux: k too large");
    detail::TableauEnumerator en(lambda, mu, nu);
    return en.run();
}

inline std::vector<GenomicTableau> enumerate_tableaux(const GrIndex& lambda, const GrIndex& mu,
                                                      const GrIndex& nu) {
    return enumerate_tableaux(bits_to_partition(lambda), bits_to_partition(mu), bits_to_partition(nu));
}

inline LaurentPoly tableau_sum(const Partition& lambda, const Partition& mu, const Partition& nu) {
    LaurentPoly s(nu.n);
    for (const auto& T : enumerate_tableaux(lambda, mu, nu)) s += tableau_weight(T, mu);
    return s;
}

inline LaurentPoly tableau_sum(const GrIndex& lambda, const GrIndex& mu, const GrIndex& nu) {
    return tableau_sum(bits_to_partition(lambda), bits_to_partition(mu), bits_to_partition(nu));
}

}  // namespace kequiv
