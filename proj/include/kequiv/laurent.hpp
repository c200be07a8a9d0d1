#pragma once

// Exact arithmetic in the Laurent polynomial ring Z[t1^{+-1}, ..., tn^{+-1}].
//
// Terms are kept in graded-lexicographic order with no zero coefficients, so
// two equal polynomials always have identical term lists.  Coefficients are
// 64-bit integers with overflow checks; everything at the scales this library
// targets stays far below that bound, and any overflow aborts loudly instead
// of wrapping.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kequiv {

[[noreturn]] inline void fail(const std::string& msg) {
    throw std::runtime_error(msg);
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail("integer overflow (add)");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail("integer overflow (mul)");
    return r;
}

using Exps = std::vector<int>;

struct GradedLexLess {
    bool operator()(const Exps& a, const Exps& b) const {
        long long da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        return a < b;
    }
};

class LaurentPoly {
public:
    using TermMap = std::map<Exps, std::int64_t, GradedLexLess>;

    LaurentPoly() : nvars_(0) {}
    explicit LaurentPoly(int nvars) : nvars_(nvars) {
        if (nvars < 0) fail("negative variable count");
    }

    static LaurentPoly zero(int nvars) { return LaurentPoly(nvars); }

    static LaurentPoly constant(int nvars, std::int64_t c) {
        LaurentPoly p(nvars);
        if (c != 0) p.terms_[Exps(nvars, 0)] = c;
        return p;
    }

    static LaurentPoly monomial(int nvars, const Exps& e, std::int64_t c) {
        if ((int)e.size() != nvars) fail("monomial exponent size mismatch");
        LaurentPoly p(nvars);
        if (c != 0) p.terms_[e] = c;
        return p;
    }

    // var is 0-based
    static LaurentPoly variable(int nvars, int var, int power = 1) {
        Exps e(nvars, 0);
        e.at(var) = power;
        return monomial(nvars, e, 1);
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool operator==(const LaurentPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, checked_mul(c, -1));
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    LaurentPoly operator-() const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_[e] = checked_mul(c, -1);
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_vars(b);
        LaurentPoly r(a.nvars_);
        Exps e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, checked_mul(ca, cb));
            }
        }
        return r;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly scaled(std::int64_t c) const {
        LaurentPoly r(nvars_);
        if (c == 0) return r;
        for (const auto& [e, coef] : terms_) r.terms_[e] = checked_mul(coef, c);
        return r;
    }

    LaurentPoly pow(unsigned p) const {
        LaurentPoly r = constant(nvars_, 1);
        LaurentPoly base = *this;
        while (p) {
            if (p & 1) r *= base;
            base = (p >>= 1) ? base * base : base;
        }
        return r;
    }

    // Value of the polynomial with every variable set to 1.
    std::int64_t eval_all_ones() const {
        std::int64_t s = 0;
        for (const auto& [e, c] : terms_) s = checked_add(s, c);
        return s;
    }

    // Substitute variables by Laurent polynomials; unmapped variables stay.
    // A variable occurring with a negative exponent must map to a single-term
    // monomial with coefficient +-1 so an exact inverse exists.
    LaurentPoly substitute(const std::map<int, LaurentPoly>& assignment) const {
        LaurentPoly result(nvars_);
        for (const auto& [e, c] : terms_) {
            LaurentPoly term = constant(nvars_, c);
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                auto it = assignment.find(i);
                if (it == assignment.end()) {
                    term *= variable(nvars_, i, e[i]);
                    continue;
                }
                const LaurentPoly& v = it->second;
                if ((int)v.nvars() != nvars_) fail("substitute: variable-count mismatch");
                if (e[i] > 0) {
                    term *= v.pow((unsigned)e[i]);
                } else {
                    if (v.term_count() != 1) fail("substitute: negative power of a non-monomial");
                    const auto& [ve, vc] = *v.terms_.begin();
                    if (vc != 1 && vc != -1) fail("substitute: negative power of a non-unit");
                    Exps inv(nvars_);
                    for (int q = 0; q < nvars_; ++q) inv[q] = -ve[q];
                    term *= monomial(nvars_, inv, vc).pow((unsigned)(-e[i]));
                }
            }
            result += term;
        }
        return result;
    }

    // Exact division; nullopt when *this is not a multiple of q.
    std::optional<LaurentPoly> exact_div(const LaurentPoly& q) const {
        check_vars(q);
        if (q.is_zero()) fail("division by zero polynomial");
        LaurentPoly rem = *this;
        LaurentPoly quot(nvars_);
        const auto& qlead = *q.terms_.rbegin();
        std::size_t guard = 0;
        while (!rem.is_zero()) {
            if (++guard > 2000000) return std::nullopt;
            const auto& rlead = *rem.terms_.rbegin();
            if (rlead.second % qlead.second != 0) return std::nullopt;
            Exps de(nvars_);
            for (int i = 0; i < nvars_; ++i) de[i] = rlead.first[i] - qlead.first[i];
            std::int64_t dc = rlead.second / qlead.second;
            LaurentPoly m = monomial(nvars_, de, dc);
            quot += m;
            rem -= m * q;
            // Division in a Laurent ring cannot fail on monomial divisibility,
            // so a non-multiple shows up as the remainder's lead not shrinking.
            if (!rem.is_zero() &&
                !GradedLexLess{}(rem.terms_.rbegin()->first, rlead.first))
                return std::nullopt;
        }
        return quot;
    }

    // Canonical text, graded-lex ascending: "-1 + t2*t4^-1".
    std::string to_string(const std::string& var_prefix = "t") const {
        auto namer = [&](int i) { return var_prefix + std::to_string(i + 1); };
        return to_string_named(namer);
    }

    template <typename Namer>
    std::string to_string_named(Namer namer) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::int64_t coef = c;
            if (first) {
                if (coef < 0) { os << "-"; coef = -coef; }
            } else {
                os << (coef < 0 ? " - " : " + ");
                if (coef < 0) coef = -coef;
            }
            std::string mono;
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += namer(i);
                if (e[i] != 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty()) {
                os << coef;
            } else {
                if (coef != 1) os << coef << "*";
                os << mono;
            }
            first = false;
        }
        return os.str();
    }

private:
    void check_vars(const LaurentPoly& o) const {
        if (nvars_ != o.nvars_) fail("variable-count mismatch");
    }

    void add_term(const Exps& e, std::int64_t c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = c;
        } else {
            it->second = checked_add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    int nvars_;
    TermMap terms_;
};

// The factor 1 - t_a/t_b attached to an equivariant piece or a tableau
// star/edge label.  Indices are 1-based; a == b would be the zero factor and
// is rejected.
struct EquivFactor {
    int a;
    int b;

    EquivFactor(int a_, int b_) : a(a_), b(b_) {
        if (a == b) fail("EquivFactor: zero factor (a == b)");
        if (a < 1 || b < 1) fail("EquivFactor: indices must be >= 1");
    }

    bool operator==(const EquivFactor& o) const { return a == o.a && b == o.b; }
    bool operator<(const EquivFactor& o) const {
        return a != o.a ? a < o.a : b < o.b;
    }

    LaurentPoly to_poly(int nvars) const {
        if (a > nvars || b > nvars) fail("EquivFactor: index out of range");
        Exps e(nvars, 0);
        e[a - 1] = 1;
        e[b - 1] = -1;
        return LaurentPoly::constant(nvars, 1) - LaurentPoly::monomial(nvars, e, 1);
    }
};

inline LaurentPoly factor_to_poly(const EquivFactor& f, int nvars) {
    return f.to_poly(nvars);
}

// Membership test for the subring Z[z_1..z_{n-1}], z_i = 1 - t_i/t_{i+1}.
//
// A Laurent monomial t^e lies in Z[t_1/t_2, ..., t_{n-1}/t_n] exactly when all
// prefix sums of e are nonnegative and the total sum is zero; the rewrite into
// ratio variables is then unique, and substituting ratio = 1 - z gives the
// z-polynomial.  Returns a polynomial over n-1 variables (z_1..z_{n-1}), or
// nullopt when some monomial falls outside the subring.
inline std::optional<LaurentPoly> expand_in_z(const LaurentPoly& p) {
    const int n = p.nvars();
    if (n == 0) return p;
    LaurentPoly out(n - 1);
    for (const auto& [e, c] : p.terms()) {
        Exps ratio(n - 1, 0);
        long long run = 0;
        for (int i = 0; i < n; ++i) {
            run += e[i];
            if (i < n - 1) {
                if (run < 0) return std::nullopt;
                ratio[i] = (int)run;
            }
        }
        if (run != 0) return std::nullopt;
        // term = c * prod_i (1 - z_i)^{ratio[i]}
        LaurentPoly term = LaurentPoly::constant(n - 1, c);
        for (int i = 0; i < n - 1; ++i) {
            if (ratio[i] == 0) continue;
            LaurentPoly f = LaurentPoly::constant(n - 1, 1) - LaurentPoly::variable(n - 1, i);
            term *= f.pow((unsigned)ratio[i]);
        }
        out += term;
    }
    return out;
}

// Back-substitution z_i = 1 - t_i/t_{i+1}; input over n-1 z-variables,
// output over n t-variables.
inline LaurentPoly z_to_t(const LaurentPoly& zp) {
    const int nz = zp.nvars();
    const int n = nz + 1;
    LaurentPoly out(n);
    for (const auto& [e, c] : zp.terms()) {
        LaurentPoly term = LaurentPoly::constant(n, c);
        for (int i = 0; i < nz; ++i) {
            if (e[i] == 0) continue;
            if (e[i] < 0) fail("z_to_t: negative z exponent");
            Exps re(n, 0);
            re[i] = 1;
            re[i + 1] = -1;
            LaurentPoly zi = LaurentPoly::constant(n, 1) - LaurentPoly::monomial(n, re, 1);
            term *= zi.pow((unsigned)e[i]);
        }
        out += term;
    }
    return out;
}

}  // namespace kequiv
