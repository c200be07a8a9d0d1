#pragma once

// JSON forms of polynomials and result records.
//
// A polynomial is a list of terms {"coeff": c, "exps": {"2": 1, "4": -1}}
// with 1-based variable indices and zero exponents omitted; terms appear in
// the canonical graded-lex order.  A coefficient record is
// {"lambda", "mu", "nu", "method", "poly", "z_form"} where z_form is the
// expansion in z_i = 1 - t_i/t_{i+1} (null when the value is outside the
// subring, which does not happen for structure constants).

#include <string>

#include <json.hpp>

#include "gr_core.hpp"
#include "laurent.hpp"

namespace kequiv {

inline nlohmann::json poly_to_json(const LaurentPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) {
        nlohmann::json exps = nlohmann::json::object();
        for (int i = 0; i < p.nvars(); ++i)
            if (e[i] != 0) exps[std::to_string(i + 1)] = e[i];
        terms.push_back({{"coeff", c}, {"exps", exps}});
    }
    return terms;
}

inline LaurentPoly poly_from_json(const nlohmann::json& j, int nvars) {
    LaurentPoly p(nvars);
    for (const auto& term : j) {
        Exps e(nvars, 0);
        for (const auto& [key, val] : term.at("exps").items()) {
            int idx = std::stoi(key);
            if (idx < 1 || idx > nvars) fail("poly_from_json: variable index out of range");
            e[idx - 1] = val.get<int>();
        }
        p += LaurentPoly::monomial(nvars, e, term.at("coeff").get<std::int64_t>());
    }
    return p;
}

inline nlohmann::json coefficient_record(const GrIndex& lambda, const GrIndex& mu,
                                         const GrIndex& nu, const std::string& method,
                                         const LaurentPoly& poly) {
    nlohmann::json rec;
    rec["lambda"] = lambda.to_string();
    rec["mu"] = mu.to_string();
    rec["nu"] = nu.to_string();
    rec["method"] = method;
    rec["poly"] = poly_to_json(poly);
    auto z = expand_in_z(poly);
    rec["z_form"] = z ? poly_to_json(*z) : nlohmann::json();
    return rec;
}

}  // namespace kequiv
