#include "rr/divisors.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

#include "rr/field.hpp"

namespace rr {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

std::string PlaceKey::str() const {
    return "[" + base.center() + ";" + std::to_string(index) + "]";
}

bool PlaceKeyLess::operator()(const PlaceKey& a, const PlaceKey& b) const {
    if (base_prime_less(a.base, b.base)) return true;
    if (base_prime_less(b.base, a.base)) return false;
    return a.index < b.index;
}

const std::vector<Place>& PlaceTable::over(const BasePrime& b) const {
    {
        std::shared_lock lock(mu_);
        auto it = cache_.find(b);
        if (it != cache_.end()) return *it->second;
    }
    auto ps = std::make_shared<const std::vector<Place>>(decompose(model_, b));
    std::unique_lock lock(mu_);
    auto [it, inserted] = cache_.emplace(b, ps);
    return *it->second;
}

const Place& PlaceTable::place(const PlaceKey& k) const {
    const auto& ps = over(k.base);
    if (k.index < 0 || k.index >= int(ps.size()))
        fail(ErrorCode::UnknownPlace, "no place " + k.str() + " (" + std::to_string(ps.size()) + " places over " +
                                          k.base.center() + ")");
    return ps[size_t(k.index)];
}

std::vector<BasePrime> PlaceTable::discriminant_primes() const {
    std::vector<BasePrime> out;
    for (auto& [q, k] : factor_poly(model_->disc_sf)) out.push_back(BasePrime::finite(q));
    std::sort(out.begin(), out.end(), base_prime_less);
    return out;
}

int Divisor::at(const PlaceKey& k) const {
    auto it = terms.find(k);
    return it == terms.end() ? 0 : it->second;
}

void Divisor::add(const PlaceKey& k, int n) {
    if (n == 0) return;
    int v = (terms[k] += n);
    if (v == 0) terms.erase(k);
}

Divisor& Divisor::operator+=(const Divisor& o) {
    for (auto& [k, n] : o.terms) add(k, n);
    return *this;
}

Divisor& Divisor::operator-=(const Divisor& o) {
    for (auto& [k, n] : o.terms) add(k, -n);
    return *this;
}

Divisor Divisor::operator-() const { return scaled(-1); }

Divisor Divisor::scaled(int k) const {
    Divisor r;
    if (k == 0) return r;
    for (auto& [key, n] : terms) r.terms.emplace(key, n * k);
    return r;
}

bool operator==(const Divisor& a, const Divisor& b) {
    if (a.terms.size() != b.terms.size()) return false;
    auto i = a.terms.begin();
    auto j = b.terms.begin();
    for (; i != a.terms.end(); ++i, ++j) {
        if (i->second != j->second) return false;
        if (PlaceKeyLess{}(i->first, j->first) || PlaceKeyLess{}(j->first, i->first)) return false;
    }
    return true;
}

Divisor Divisor::positive() const {
    Divisor r;
    for (auto& [k, n] : terms)
        if (n > 0) r.terms.emplace(k, n);
    return r;
}

Divisor Divisor::negative() const {
    Divisor r;
    for (auto& [k, n] : terms)
        if (n < 0) r.terms.emplace(k, -n);
    return r;
}

bool Divisor::effective() const {
    return std::all_of(terms.begin(), terms.end(), [](auto& kv) { return kv.second > 0; });
}

std::vector<BasePrime> Divisor::support_primes() const {
    std::vector<BasePrime> out;
    for (auto& [k, n] : terms)
        if (out.empty() || !(out.back() == k.base)) out.push_back(k.base);
    return out;
}

std::string to_string(const Divisor& D) {
    if (D.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto& [k, n] : D.terms) {
        int a = n < 0 ? -n : n;
        if (first)
            s += n < 0 ? "-" : "";
        else
            s += n < 0 ? " - " : " + ";
        first = false;
        if (a != 1) s += std::to_string(a) + "*";
        s += k.str();
    }
    return s;
}

namespace {

class DivisorParser {
public:
    DivisorParser(const PlaceTable& t, const std::string& s) : table_(t), s_(s) {}

    Divisor parse() {
        Divisor D;
        skip();
        if (pos_ >= s_.size()) return D;
        bool first = true;
        for (;;) {
            skip();
            int sign = 1;
            if (peek('+')) {
                ++pos_;
            } else if (peek('-')) {
                sign = -1;
                ++pos_;
            } else if (!first) {
                error("expected '+' or '-'");
            }
            first = false;
            skip();
            long coef = 1;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                coef = 0;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    coef = coef * 10 + (s_[pos_++] - '0');
                    if (coef > 1000000000L) error("coefficient too large");
                }
                skip();
                if (peek('*')) ++pos_;
                skip();
            }
            PlaceKey k = place_id();
            D.add(k, int(sign * coef));
            skip();
            if (pos_ >= s_.size()) return D;
        }
    }

    PlaceKey place_id() {
        skip();
        if (!peek('[')) error("expected '['");
        ++pos_;
        size_t semi = s_.find(';', pos_);
        size_t close = s_.find(']', pos_);
        if (semi == std::string::npos || close == std::string::npos || close < semi) error("expected '[center;index]'");
        size_t cstart = pos_;
        std::string center = s_.substr(pos_, semi - pos_);
        std::string trimmed;
        for (char c : center)
            if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
        BasePrime base;
        if (trimmed == "inf") {
            base = BasePrime::at_infinity(table_.model()->p);
        } else {
            Poly q(table_.model()->p);
            try {
                q = parse_tpoly(table_.model()->p, center);
            } catch (const Error& e) {
                pos_ = cstart;
                error(std::string("bad center: ") + e.what());
            }
            if (q.deg() < 1 || !is_irreducible(q.monic())) {
                pos_ = cstart;
                fail(ErrorCode::UnknownPlace, where() + "center " + trimmed + " is not an irreducible polynomial in t");
            }
            base = BasePrime::finite(q.monic());
        }
        pos_ = semi + 1;
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) error("expected place index");
        long idx = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            idx = idx * 10 + (s_[pos_++] - '0');
            if (idx > 1000000) error("index too large");
        }
        skip();
        if (!peek(']')) error("expected ']'");
        ++pos_;
        PlaceKey k{base, int(idx)};
        table_.place(k);
        return k;
    }

    bool done() {
        skip();
        return pos_ >= s_.size();
    }

    std::string where() const { return "column " + std::to_string(pos_ + 1) + ": "; }

    [[noreturn]] void error(const std::string& msg) const { fail(ErrorCode::Syntax, where() + msg); }

private:
    const PlaceTable& table_;
    const std::string& s_;
    size_t pos_ = 0;

    bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
};

}  // namespace

Divisor parse_divisor(const PlaceTable& table, const std::string& text) {
    return DivisorParser(table, text).parse();
}

PlaceKey parse_place_id(const PlaceTable& table, const std::string& text) {
    DivisorParser p(table, text);
    PlaceKey k = p.place_id();
    if (!p.done()) p.error("trailing characters after place id");
    return k;
}

int degree(const PlaceTable& table, const Divisor& D) {
    long s = 0;
    for (auto& [k, n] : D.terms) s += long(n) * table.place(k).degree;
    return int(s);
}

Divisor infinity_divisor(const PlaceTable& table) {
    Divisor D;
    for (auto& P : table.at_infinity()) D.add(key_of(P), P.e);
    return D;
}

std::vector<BasePrime> candidate_primes(const PlaceTable& table, const FFElement& b) {
    auto [H, d] = b.cleared();
    std::vector<BasePrime> out = table.discriminant_primes();
    auto push = [&](const Poly& a) {
        if (a.deg() < 1) return;
        for (auto& [q, k] : factor_poly(a)) out.push_back(BasePrime::finite(q));
    };
    push(d);
    push(resultant_in_X(table.model()->f, H));
    std::sort(out.begin(), out.end(), base_prime_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Divisor principal_divisor(const PlaceTable& table, const FFElement& b) {
    if (b.is_zero()) fail(ErrorCode::InvalidInput, "divisor of zero");
    std::vector<BasePrime> primes = candidate_primes(table, b);
    primes.push_back(BasePrime::at_infinity(table.model()->p));
    Divisor D;
    for (auto& bp : primes)
        for (auto& P : table.over(bp)) D.add(key_of(P), valuation(P, b));
    return D;
}

Divisor principal_divisor(const PlaceTable& table, const RatFunc& a) {
    if (a.is_zero()) fail(ErrorCode::InvalidInput, "divisor of zero");
    Divisor D;
    auto add_poly = [&](const Poly& g, int sign) {
        if (g.deg() < 1) return;
        for (auto& [q, k] : factor_poly(g))
            for (auto& P : table.over(BasePrime::finite(q))) D.add(key_of(P), sign * k * P.e);
    };
    add_poly(a.num, 1);
    add_poly(a.den, -1);
    for (auto& P : table.at_infinity()) D.add(key_of(P), -a.degree() * P.e);
    return D;
}

NormalizationData normalize(const PlaceTable& table, const Divisor& D) {
    uint32_t p = table.model()->p;
    NormalizationData nd;
    nd.q_I = RatFunc::constant(p, 1);
    int m_infinity = 0;
    for (const BasePrime& bp : D.support_primes()) {
        const auto& ps = table.over(bp);
        int m = 0;
        bool first = true;
        for (auto& P : ps) {
            int v = floor_div(D.at(key_of(P)), P.e);
            m = first ? v : std::min(m, v);
            first = false;
        }
        for (auto& P : ps) nd.star_exponents[key_of(P)] = P.e * m - D.at(key_of(P));
        if (bp.infinite) {
            m_infinity = m;
        } else {
            nd.m_p[bp] = m;
            RatFunc pm = RatFunc::t_power(p, 0);
            RatFunc q(bp.p);
            for (int i = 0; i < (m < 0 ? -m : m); ++i) pm = pm * q;
            nd.q_I = m > 0 ? nd.q_I / pm : nd.q_I * pm;
        }
    }
    nd.m_inf = -m_infinity;
    nd.r_D = nd.m_inf + nd.q_I.degree();
    nd.star = D + principal_divisor(table, nd.q_I) + infinity_divisor(table).scaled(nd.r_D);
    // Both routes to D* must agree.
    for (auto& [k, n] : nd.star.terms) {
        auto it = nd.star_exponents.find(k);
        if (it == nd.star_exponents.end() || it->second != -n)
            fail(ErrorCode::ContractViolation, "normalized divisor mismatch at " + k.str());
    }
    for (auto& [k, a] : nd.star_exponents)
        if (nd.star.at(k) != -a) fail(ErrorCode::ContractViolation, "normalized divisor mismatch at " + k.str());
    return nd;
}

}  // namespace rr
