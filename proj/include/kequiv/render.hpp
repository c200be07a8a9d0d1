#pragma once

// Deterministic drawings of puzzles: an SVG with one polygon per piece
// region (paper color code: black, white, grey, green, yellow, purple) and a
// two-lines-per-row ASCII form.

#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "puzzle.hpp"

namespace kequiv {

namespace detail {

inline const char* piece_fill(PieceKind k) {
    switch (k) {
        case PieceKind::WhiteUp:
        case PieceKind::WhiteDown: return "#fff";
        case PieceKind::BlackUp:
        case PieceKind::BlackDown: return "#000";
        case PieceKind::GreyH:
        case PieceKind::GreyV:
        case PieceKind::GreyD: return "#ccc";
        case PieceKind::Diamond: return "#0f0";
        case PieceKind::Yellow: return "#ff0";
        case PieceKind::Purple: return "#909";
    }
    return "#f0f";
}

inline char piece_glyph(PieceKind k, bool up) {
    switch (k) {
        case PieceKind::WhiteUp:
        case PieceKind::WhiteDown: return '.';
        case PieceKind::BlackUp:
        case PieceKind::BlackDown: return '#';
        case PieceKind::GreyH: return 'G';
        case PieceKind::GreyV: return 'V';
        case PieceKind::GreyD: return 'Z';
        case PieceKind::Diamond: return up ? 'E' : 'e';
        case PieceKind::Yellow: return 'Y';
        case PieceKind::Purple: return 'P';
    }
    return '?';
}

}  // namespace detail

inline std::string render_puzzle_svg(const Puzzle& P) {
    const double u = 40.0;
    const double hh = u * std::sqrt(3.0) / 2.0;
    const double margin = 10.0;
    const int n = P.n;
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (n * u + 2 * margin)
       << "\" height=\"" << (n * hh + 2 * margin) << "\">\n";
    auto px = [&](double x) { return margin + x * u; };
    auto py = [&](double row) { return margin + row * hh; };
    auto poly = [&](std::initializer_list<std::pair<double, double>> pts, const char* fill) {
        os << "<polygon points=\"";
        bool first = true;
        for (const auto& [x, row] : pts) {
            if (!first) os << " ";
            os << px(x) << "," << py(row);
            first = false;
        }
        os << "\" fill=\"" << fill << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    };
    for (const auto& p : P.placements) {
        const int t = p.t, j = p.j;
        const double a = (n - t) / 2.0 + (j - 1);  // x of U(t,j)'s bottom-left
        const char* fill = detail::piece_fill(p.kind);
        switch (p.kind) {
            case PieceKind::WhiteUp:
            case PieceKind::BlackUp:
                poly({{a, (double)t}, {a + 1, (double)t}, {a + 0.5, t - 1.0}}, fill);
                break;
            case PieceKind::WhiteDown:
            case PieceKind::BlackDown:
            case PieceKind::Yellow:
            case PieceKind::Purple:
                poly({{a + 0.5, t - 1.0}, {a + 1.5, t - 1.0}, {a + 1, (double)t}}, fill);
                break;
            case PieceKind::GreyH:
                poly({{a, (double)t}, {a + 1, (double)t}, {a + 1.5, t - 1.0}, {a + 0.5, t - 1.0}},
                     fill);
                break;
            case PieceKind::GreyV:
            case PieceKind::Diamond:
                poly({{a + 0.5, t - 1.0}, {a + 1, (double)t}, {a + 0.5, t + 1.0}, {a, (double)t}},
                     fill);
                break;
            case PieceKind::GreyD:
                poly({{a + 0.5, t - 1.0}, {a + 1, (double)t}, {a + 2, (double)t}, {a + 1.5, t - 1.0}},
                     fill);
                break;
        }
    }
    os << "</svg>\n";
    return os.str();
}

inline std::string render_puzzle_ascii(const Puzzle& P) {
    const int n = P.n;
    PuzzleGrid grid(n);
    std::vector<const Placement*> cover(grid.cell_count(), nullptr);
    for (const auto& p : P.placements)
        for (const auto& c : p.cells()) cover[grid.cell_id(c)] = &p;
    // horizontal edge labels, as asserted by the pieces (side 0, else side 1)
    std::map<std::pair<int, int>, int> hlabel;
    std::vector<SideClaim> sides;
    std::vector<GashClaim> gashes;
    for (const auto& p : P.placements) {
        piece_claims(p, sides, gashes);
        for (const auto& sc : sides)
            if (sc.edge.dir == 'H') hlabel.emplace(std::make_pair(sc.edge.t, sc.edge.j), sc.label);
    }
    std::ostringstream os;
    for (int t = 1; t <= n; ++t) {
        std::string cells(n - t, ' ');
        for (int j = 1; j <= t; ++j) {
            const Placement* up = cover[grid.cell_id(CellRef(t, j, true))];
            cells += detail::piece_glyph(up->kind, true);
            if (j < t) {
                const Placement* dn = cover[grid.cell_id(CellRef(t, j, false))];
                cells += detail::piece_glyph(dn->kind, false);
            }
        }
        std::string labels(n - t, ' ');
        for (int j = 1; j <= t; ++j) {
            auto it = hlabel.find({t, j});
            labels += it == hlabel.end() ? '-' : char('0' + it->second);
            if (j < t) labels += ' ';
        }
        os << cells << "\n" << labels << "\n";
    }
    return os.str();
}

inline std::string render_puzzle(const Puzzle& P, const std::string& format) {
    if (format == "svg") return render_puzzle_svg(P);
    if (format == "ascii") return render_puzzle_ascii(P);
    fail("render_puzzle: unknown format '" + format + "'");
}

}  // namespace kequiv
