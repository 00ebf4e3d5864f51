/*
   Copyright 2026 The fibercount authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fibercount/errors.hpp"
#include "fibercount/factorization.hpp"
#include "fibercount/numeric.hpp"

namespace fibercount {

struct RootMult {
    Rat root;
    unsigned mult = 1;
};

/// Polynomial given by leading coefficient and (root, multiplicity) pairs:
///   leading * prod_i (T - root_i)^mult_i.
/// Roots are pairwise distinct and kept sorted ascending. An empty root list
/// is the nonzero constant `leading`; parsing requires degree >= 1.
class FactoredPoly {
  public:
    FactoredPoly(Rat leading, std::vector<RootMult> roots)
        : leading_(std::move(leading)), roots_(std::move(roots)) {
        if (leading_ == 0) throw precondition_error("FactoredPoly: zero leading coefficient");
        for (const auto& rm : roots_)
            if (rm.mult == 0) throw precondition_error("FactoredPoly: zero multiplicity");
        std::sort(roots_.begin(), roots_.end(),
                  [](const RootMult& a, const RootMult& b) { return a.root < b.root; });
        for (std::size_t i = 1; i < roots_.size(); ++i)
            if (roots_[i - 1].root == roots_[i].root)
                throw precondition_error("FactoredPoly: duplicate root " + rat_str(roots_[i].root));
    }

    const Rat& leading() const { return leading_; }
    const std::vector<RootMult>& roots() const { return roots_; }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& rm : roots_) d += rm.mult;
        return d;
    }

    bool is_separable() const {
        return std::all_of(roots_.begin(), roots_.end(),
                           [](const RootMult& rm) { return rm.mult == 1; });
    }

    Rat evaluate(const Rat& x) const {
        Rat y = leading_;
        for (const auto& rm : roots_) {
            Rat base = x - rm.root;
            for (unsigned k = 0; k < rm.mult; ++k) y *= base;
        }
        return y;
    }

    /// Canonical textual form, e.g. "lead=4; roots=-1/2:1,1/2:1".
    std::string to_spec_string() const {
        auto rat_spec = [](const Rat& q) {
            std::string s = numerator(q).str();
            if (denominator(q) != 1) s += "/" + denominator(q).str();
            return s;
        };
        std::string out = "lead=" + rat_spec(leading_) + "; roots=";
        for (std::size_t i = 0; i < roots_.size(); ++i) {
            if (i > 0) out += ',';
            out += rat_spec(roots_[i].root) + ":" + std::to_string(roots_[i].mult);
        }
        return out;
    }

  private:
    Rat leading_;
    std::vector<RootMult> roots_;
};

/// Dense integer-coefficient view, coefficients[k] is the T^k coefficient.
struct IntPoly {
    std::vector<Int> coefficients;  // a0..ad, ad != 0 unless the zero polynomial (empty)

    unsigned degree() const {
        if (coefficients.empty()) throw precondition_error("IntPoly: degree of zero polynomial");
        return static_cast<unsigned>(coefficients.size() - 1);
    }

    Int evaluate(const Int& x) const {
        Int y = 0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) y = y * x + *it;
        return y;
    }

    Rat evaluate(const Rat& x) const {
        Rat y = 0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) y = y * x + *it;
        return y;
    }

    IntPoly derivative() const {
        IntPoly d;
        for (std::size_t k = 1; k < coefficients.size(); ++k)
            d.coefficients.push_back(coefficients[k] * Int(k));
        if (d.coefficients.empty()) d.coefficients.push_back(0);
        d.normalize();
        return d;
    }

    Int content() const {
        Int g = 0;
        for (const Int& c : coefficients) g = gcd(g, c);
        return g;
    }

    void normalize() {
        while (coefficients.size() > 1 && coefficients.back() == 0) coefficients.pop_back();
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        IntPoly c;
        c.coefficients.assign(a.coefficients.size() + b.coefficients.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.coefficients.size(); ++i)
            for (std::size_t j = 0; j < b.coefficients.size(); ++j)
                c.coefficients[i + j] += a.coefficients[i] * b.coefficients[j];
        c.normalize();
        return c;
    }
};

inline IntPoly pow(const IntPoly& base, unsigned e) {
    IntPoly acc;
    acc.coefficients = {Int(1)};
    for (unsigned k = 0; k < e; ++k) acc = acc * base;
    return acc;
}

/// Quotient of a by b when the division is exact in Z[T]; nullopt otherwise.
inline std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.coefficients.empty() || b.coefficients.back() == 0)
        throw precondition_error("divide_exact: zero divisor");
    if (a.coefficients.size() < b.coefficients.size()) return std::nullopt;

    std::vector<Rat> rem(a.coefficients.begin(), a.coefficients.end());
    const std::size_t db = b.coefficients.size() - 1;
    const Rat lead_b(b.coefficients.back());
    std::vector<Rat> quo(rem.size() - db, Rat(0));

    for (std::size_t k = rem.size(); k-- > db;) {
        Rat q = rem[k] / lead_b;
        quo[k - db] = q;
        if (q != 0)
            for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= q * Rat(b.coefficients[j]);
    }
    for (std::size_t j = 0; j < db; ++j)
        if (rem[j] != 0) return std::nullopt;
    IntPoly out;
    out.coefficients.reserve(quo.size());
    for (const Rat& q : quo) {
        if (!is_integer(q)) return std::nullopt;
        out.coefficients.push_back(numerator(q));
    }
    out.normalize();
    return out;
}

inline bool divides(const IntPoly& a, const IntPoly& b) { return divide_exact(b, a).has_value(); }

namespace detail {

inline Rat parse_rational(std::string_view text) {
    auto bad = [&] { throw parse_error("malformed rational '" + std::string(text) + "'"); };
    std::string_view num = text, den;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (den.empty()) bad();
    }
    auto check_int = [&](std::string_view s) {
        if (s.empty()) bad();
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) bad();
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad();
    };
    check_int(num);
    Int n{std::string(num)};
    if (den.empty()) return Rat(n);
    check_int(den);
    Int d{std::string(den)};
    if (d == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
    return make_rat(n, d);
}

inline std::string strip_spaces(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

}  // namespace detail

/// Parse "lead=<rational>; roots=<rational>:<mult>[,<rational>:<mult>]*".
/// Whitespace is ignored; rationals are normalized to lowest terms.
inline FactoredPoly parse_factored_poly(std::string_view spec) {
    const std::string s = detail::strip_spaces(spec);
    auto bad = [&](const std::string& why) {
        throw parse_error("malformed polynomial spec (" + why + "): '" + std::string(spec) + "'");
    };

    constexpr std::string_view lead_key = "lead=";
    if (s.rfind(lead_key, 0) != 0) bad("expected 'lead='");
    auto semi = s.find(';');
    if (semi == std::string::npos) bad("expected ';'");
    Rat leading = detail::parse_rational(std::string_view(s).substr(lead_key.size(), semi - lead_key.size()));
    if (leading == 0) throw parse_error("zero leading coefficient");

    constexpr std::string_view roots_key = "roots=";
    std::string_view rest = std::string_view(s).substr(semi + 1);
    if (rest.rfind(roots_key, 0) != 0) bad("expected 'roots='");
    rest = rest.substr(roots_key.size());
    if (rest.empty()) bad("empty root list");

    std::vector<RootMult> roots;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        auto colon = item.find(':');
        if (colon == std::string_view::npos) bad("expected '<root>:<mult>'");
        Rat root = detail::parse_rational(item.substr(0, colon));
        std::string_view mult_s = item.substr(colon + 1);
        if (mult_s.empty() || !std::all_of(mult_s.begin(), mult_s.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
            }))
            bad("bad multiplicity");
        unsigned long mult = 0;
        try {
            mult = std::stoul(std::string(mult_s));
        } catch (const std::exception&) {
            bad("multiplicity out of range");
        }
        if (mult == 0) throw parse_error("zero multiplicity");
        if (mult > 1u << 20) bad("multiplicity out of range");
        roots.push_back({std::move(root), static_cast<unsigned>(mult)});
    }
    try {
        return FactoredPoly(std::move(leading), std::move(roots));
    } catch (const precondition_error& e) {
        throw parse_error(e.what());
    }
}

/// Exact coefficient list (a0..ad) over the rationals.
inline std::vector<Rat> expand_rational(const FactoredPoly& f) {
    std::vector<Rat> coeffs{f.leading()};
    for (const auto& rm : f.roots()) {
        for (unsigned k = 0; k < rm.mult; ++k) {
            coeffs.push_back(0);
            for (std::size_t j = coeffs.size() - 1; j > 0; --j)
                coeffs[j] = coeffs[j - 1] - rm.root * coeffs[j];
            coeffs[0] *= -rm.root;
        }
    }
    return coeffs;
}

/// Coefficient view; requires all expanded coefficients to be integers.
inline IntPoly expand(const FactoredPoly& f) {
    IntPoly out;
    for (const Rat& c : expand_rational(f)) {
        if (!is_integer(c))
            throw precondition_error("expand: non-integral coefficient " + rat_str(c) +
                                     " (scale the polynomial first)");
        out.coefficients.push_back(numerator(c));
    }
    return out;
}

inline bool has_integer_coefficients(const FactoredPoly& f) {
    const auto coeffs = expand_rational(f);
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& c) { return is_integer(c); });
}

/// Evaluation at an integer point of an integer-coefficient polynomial.
inline Int evaluate_integer(const FactoredPoly& f, const Int& n) {
    Rat y = f.evaluate(Rat(n));
    if (!is_integer(y)) throw precondition_error("evaluate_integer: value is not an integer");
    return numerator(y);
}

struct ScaledPoly {
    FactoredPoly poly;  // a^e * F, with integer coefficients
    Int a;              // minimal positive scaling base
};

/// Replace F by a^e * F for the minimal positive integer a that clears all
/// denominators. The generated radical fields are unchanged.
inline ScaledPoly scale_to_integer(const FactoredPoly& f, unsigned e) {
    if (e < 2) throw precondition_error("scale_to_integer: e must be >= 2");
    Int d_all = 1;
    for (const Rat& c : expand_rational(f)) d_all = lcm(d_all, denominator(c));
    Int a = 1;
    if (d_all > 1) {
        for (const auto& [p, k] : factor_integer(d_all).exponents)
            a *= pow(p, (k + e - 1) / e);  // ceil(k/e)
    }
    FactoredPoly scaled(f.leading() * Rat(pow(a, e)), f.roots());
    if (!has_integer_coefficients(scaled))
        throw internal_error("scale_to_integer: scaled polynomial is not integral");
    return {std::move(scaled), std::move(a)};
}

struct MultiplicityReduction {
    FactoredPoly reduced;    // multiplicities in [1, e-1], leading of F kept whole
    FactoredPoly extracted;  // monic G with F = G^e * reduced
};

/// Write F = G^e * Fred with every multiplicity of Fred in [1, e-1].
/// Fails when F is an e-th power in the algebraic closure (all multiplicities
/// divisible by e): then every fiber field is trivial and there is nothing
/// to count.
inline MultiplicityReduction reduce_multiplicities(const FactoredPoly& f, unsigned e) {
    if (e < 2) throw precondition_error("reduce_multiplicities: e must be >= 2");
    std::vector<RootMult> kept, extracted;
    for (const auto& rm : f.roots()) {
        if (unsigned m = rm.mult % e; m > 0) kept.push_back({rm.root, m});
        if (unsigned g = rm.mult / e; g > 0) extracted.push_back({rm.root, g});
    }
    if (kept.empty())
        throw hypothesis_error("polynomial is a perfect " + std::to_string(e) +
                               "-th power; no field variation to count");
    MultiplicityReduction out{FactoredPoly(f.leading(), std::move(kept)),
                              FactoredPoly(Rat(1), std::move(extracted))};
    if (out.reduced.degree() + e * out.extracted.degree() != f.degree())
        throw internal_error("reduce_multiplicities: degree bookkeeping failed");
    return out;
}

/// The separable kernel: an integer polynomial sharing F's roots with
/// kernel | F and F | kernel^(e-1), both verified by exact division.
inline FactoredPoly radical_kernel(const FactoredPoly& f, unsigned e) {
    if (e < 2) throw precondition_error("radical_kernel: e must be >= 2");
    for (const auto& rm : f.roots())
        if (rm.mult > e - 1)
            throw precondition_error("radical_kernel: multiplicity " + std::to_string(rm.mult) +
                                     " outside [1, " + std::to_string(e - 1) + "]");
    if (f.roots().empty()) throw precondition_error("radical_kernel: constant polynomial");
    const IntPoly F = expand(f);  // also checks integrality

    // Signed content c with F = c * prod (v_i T - u_i)^{m_i}.
    Rat c(f.leading());
    Int lead_kernel = 1;
    std::vector<RootMult> roots;
    for (const auto& rm : f.roots()) {
        const Int v = denominator(rm.root);
        c /= Rat(pow(v, rm.mult));
        lead_kernel *= v;
        roots.push_back({rm.root, 1});
    }
    if (!is_integer(c)) throw internal_error("radical_kernel: content is not an integer");

    FactoredPoly kernel(c * Rat(lead_kernel), std::move(roots));
    const IntPoly K = expand(kernel);
    if (!divides(K, F) || !divides(F, pow(K, e - 1)))
        throw internal_error("radical_kernel: divisibility check failed");
    return kernel;
}

}  // namespace fibercount
