#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "rr/places.hpp"

namespace rr {

struct PlaceKey {
    BasePrime base;
    int index = 0;
    std::string str() const;
};

struct PlaceKeyLess {
    bool operator()(const PlaceKey& a, const PlaceKey& b) const;
};

struct BasePrimeLess {
    bool operator()(const BasePrime& a, const BasePrime& b) const { return base_prime_less(a, b); }
};

inline PlaceKey key_of(const Place& P) { return {P.base, P.index}; }

// Decompositions cached per base prime. Entries are written once and never modified.
class PlaceTable {
public:
    explicit PlaceTable(Model m) : model_(std::move(m)) {}
    const Model& model() const { return model_; }
    const std::vector<Place>& over(const BasePrime& b) const;
    const Place& place(const PlaceKey& k) const;  // UnknownPlace if out of range
    // All places at infinity.
    const std::vector<Place>& at_infinity() const { return over(BasePrime::at_infinity(model_->p)); }
    // Primes dividing the square-free part of the discriminant.
    std::vector<BasePrime> discriminant_primes() const;

private:
    Model model_;
    mutable std::shared_mutex mu_;
    mutable std::map<BasePrime, std::shared_ptr<const std::vector<Place>>, BasePrimeLess> cache_;
};

using Table = std::shared_ptr<const PlaceTable>;
inline Table make_table(const Model& m) { return std::make_shared<const PlaceTable>(m); }

class Divisor {
public:
    std::map<PlaceKey, int, PlaceKeyLess> terms;  // nonzero multiplicities only

    bool is_zero() const { return terms.empty(); }
    int at(const PlaceKey& k) const;
    void add(const PlaceKey& k, int n);
    Divisor& operator+=(const Divisor& o);
    Divisor& operator-=(const Divisor& o);
    friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
    friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
    Divisor operator-() const;
    Divisor scaled(int k) const;
    friend bool operator==(const Divisor& a, const Divisor& b);
    Divisor positive() const;  // D+
    Divisor negative() const;  // D-, so D = D+ - D-
    bool effective() const;
    // Base primes in the support, sorted.
    std::vector<BasePrime> support_primes() const;
};

std::string to_string(const Divisor& D);
// Signed sums of place ids, e.g. "2*[t;0] - [t-1;1] + [inf;0]". Empty text is the zero divisor.
Divisor parse_divisor(const PlaceTable& table, const std::string& text);
// Parse a place id "[center;index]" and resolve it.
PlaceKey parse_place_id(const PlaceTable& table, const std::string& text);

int degree(const PlaceTable& table, const Divisor& D);
// div(t) at infinity with the sign flipped: sum of e_P P over P | inf.
Divisor infinity_divisor(const PlaceTable& table);
Divisor principal_divisor(const PlaceTable& table, const FFElement& b);
Divisor principal_divisor(const PlaceTable& table, const RatFunc& a);
// Finite primes where b may have nonzero valuation, plus discriminant primes.
std::vector<BasePrime> candidate_primes(const PlaceTable& table, const FFElement& b);

struct NormalizationData {
    std::map<BasePrime, int, BasePrimeLess> m_p;  // min over P | p of floor(n_P / e_P), finite primes
    RatFunc q_I;                                  // prod p^(-m_p)
    int m_inf = 0;                                // ideal exponent of I_inf(D) in u, i.e. -min floor(n_P/e_P) at infinity
    int r_D = 0;                                  // m_inf + deg q_I
    std::map<PlaceKey, int, PlaceKeyLess> star_exponents;  // e_P m_p - n_P, all <= 0
    Divisor star;                                 // D* = D + div(q_I) + r_D D_inf
};

// Exponents are recorded at every place over a prime in the support of D.
NormalizationData normalize(const PlaceTable& table, const Divisor& D);

}  // namespace rr
