#include "ffqe/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace ffqe {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; (long long)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomial arithmetic over F_p on int coefficient vectors
// (low-to-high), used only for field construction and the generic
// multiplication path.
std::vector<int> trim(std::vector<int> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    // m monic
    a = trim(std::move(a));
    const int dm = (int)m.size() - 1;
    while ((int)a.size() - 1 >= dm && !a.empty()) {
        int da = (int)a.size() - 1;
        int c = a[da];
        if (c != 0) {
            for (int i = 0; i <= dm; ++i) {
                int& t = a[da - dm + i];
                t = ((t - c * m[i]) % p + p) % p;
            }
        }
        a = trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b,
                             const std::vector<int>& m, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(prod), m, p);
}

// Remainder of a by monic b over F_p.
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& b, int p) {
    return poly_mod(std::move(a), b, p);
}

bool is_irreducible(const std::vector<int>& m, int p) {
    int deg = (int)m.size() - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    // Root test rules out linear factors; for degree 2 and 3 that is the
    // whole story.
    for (int x = 0; x < p; ++x) {
        long long v = 0, xp = 1;
        for (int c : m) {
            v = (v + c * xp) % p;
            xp = (xp * x) % p;
        }
        if (v % p == 0) return false;
    }
    if (deg <= 3) return true;
    // Trial division by every monic polynomial of degree 2..deg/2.
    for (int d = 2; d <= deg / 2; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long k = 0; k < count; ++k) {
            std::vector<int> cand(d + 1, 0);
            long long t = k;
            for (int i = 0; i < d; ++i) {
                cand[i] = (int)(t % p);
                t /= p;
            }
            cand[d] = 1;
            if (poly_rem(m, cand, p).empty()) return false;
        }
    }
    return true;
}

std::vector<int> default_modulus(int p, int r) {
    if (r == 1) return {0, 1}; // placeholder "x"
    long long count = 1;
    for (int i = 0; i < r; ++i) count *= p;
    for (long long k = 0; k < count; ++k) {
        std::vector<int> m(r + 1, 0);
        long long t = k;
        for (int i = 0; i < r; ++i) {
            m[i] = (int)(t % p);
            t /= p;
        }
        m[r] = 1;
        if (is_irreducible(m, p)) return m;
    }
    throw FieldError("no irreducible modulus found"); // unreachable for r >= 1
}

constexpr uint32_t kTableLimit = 256;

} // namespace

FieldSpec::FieldSpec(int p, int r, std::vector<int> modulus, std::string generator)
    : p_(p), r_(r), modulus_(std::move(modulus)), generator_(std::move(generator)) {
    uint64_t q = 1;
    for (int i = 0; i < r; ++i) q *= (uint32_t)p;
    q_ = (uint32_t)q;
    if (q_ <= kTableLimit) {
        mul_table_.resize((size_t)q_ * q_);
        add_table_.resize((size_t)q_ * q_);
        for (uint32_t a = 0; a < q_; ++a)
            for (uint32_t b = a; b < q_; ++b) {
                uint16_t v = (uint16_t)mul_generic(a, b);
                mul_table_[(size_t)a * q_ + b] = v;
                mul_table_[(size_t)b * q_ + a] = v;
                uint16_t s = (uint16_t)add_generic(a, b);
                add_table_[(size_t)a * q_ + b] = s;
                add_table_[(size_t)b * q_ + a] = s;
            }
        inv_table_.assign(q_, 0);
        for (uint32_t a = 1; a < q_; ++a)
            for (uint32_t b = 1; b < q_; ++b)
                if (mul_table_[(size_t)a * q_ + b] == 1) {
                    inv_table_[a] = (uint16_t)b;
                    break;
                }
        neg_table_.assign(q_, 0);
        for (uint32_t a = 0; a < q_; ++a) neg_table_[a] = (uint16_t)neg_generic(a);
    }
}

uint32_t FieldSpec::add_generic(uint32_t a, uint32_t b) const {
    if (r_ == 1) {
        uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    uint32_t out = 0, mult = 1;
    for (int i = 0; i < r_; ++i) {
        uint32_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        uint32_t d = da + db;
        if (d >= (uint32_t)p_) d -= p_;
        out += d * mult;
        mult *= p_;
    }
    return out;
}

uint32_t FieldSpec::add(uint32_t a, uint32_t b) const {
    if (!add_table_.empty()) return add_table_[(size_t)a * q_ + b];
    return add_generic(a, b);
}

uint32_t FieldSpec::neg_generic(uint32_t a) const {
    if (r_ == 1) return a == 0 ? 0 : q_ - a;
    uint32_t out = 0, mult = 1;
    for (int i = 0; i < r_; ++i) {
        uint32_t d = a % p_;
        a /= p_;
        out += (d == 0 ? 0 : (uint32_t)p_ - d) * mult;
        mult *= p_;
    }
    return out;
}

uint32_t FieldSpec::neg(uint32_t a) const {
    if (!neg_table_.empty()) return neg_table_[a];
    return neg_generic(a);
}

uint32_t FieldSpec::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t FieldSpec::mul_generic(uint32_t a, uint32_t b) const {
    if (r_ == 1) return (uint32_t)(((uint64_t)a * b) % q_);
    auto ca = coeffs_of(a);
    auto cb = coeffs_of(b);
    auto prod = poly_mulmod(trim(ca), trim(cb), modulus_, p_);
    prod.resize(r_, 0);
    return code_of(prod);
}

uint32_t FieldSpec::mul(uint32_t a, uint32_t b) const {
    if (!mul_table_.empty()) return mul_table_[(size_t)a * q_ + b];
    return mul_generic(a, b);
}

uint32_t FieldSpec::inv(uint32_t a) const {
    if (a == 0) throw FieldError("division by zero");
    if (!inv_table_.empty()) return inv_table_[a];
    return pow(a, q_ - 2);
}

uint32_t FieldSpec::pow(uint32_t a, uint64_t e) const {
    uint32_t base = a, out = q_ > 1 ? 1 : 0;
    while (e) {
        if (e & 1) out = mul(out, base);
        base = mul(base, base);
        e >>= 1;
    }
    return out;
}

std::vector<int> FieldSpec::coeffs_of(uint32_t code) const {
    std::vector<int> c(r_);
    for (int i = 0; i < r_; ++i) {
        c[i] = (int)(code % p_);
        code /= p_;
    }
    return c;
}

uint32_t FieldSpec::code_of(const std::vector<int>& coeffs) const {
    uint32_t out = 0, mult = 1;
    for (int i = 0; i < r_; ++i) {
        int c = i < (int)coeffs.size() ? coeffs[i] : 0;
        if (c < 0 || c >= p_) throw FieldError("coefficient out of range");
        out += (uint32_t)c * mult;
        mult *= p_;
    }
    return out;
}

uint32_t FieldSpec::from_integer(long long n) const {
    long long m = n % p_;
    if (m < 0) m += p_;
    return (uint32_t)m;
}

std::string FieldSpec::to_string(uint32_t code) const {
    if (r_ == 1) return std::to_string(code);
    auto c = coeffs_of(code);
    std::string out;
    for (int i = r_ - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c[i]);
        } else {
            if (c[i] != 1) out += std::to_string(c[i]) + "*";
            out += generator_;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

const FieldSpec& make_field(int p, int r, std::optional<std::vector<int>> modulus,
                            const std::string& generator) {
    if (!is_prime(p)) throw FieldError(std::to_string(p) + " is not prime");
    if (r < 1) throw FieldError("extension degree must be >= 1");
    uint64_t q = 1;
    for (int i = 0; i < r; ++i) {
        q *= (uint32_t)p;
        if (q > kMaxFieldOrder) throw FieldError("field order exceeds supported bound 2^16");
    }

    std::vector<int> m;
    if (modulus) {
        m = *modulus;
        if ((int)m.size() != r + 1 || m[r] != 1)
            throw FieldError("modulus must be monic of degree r");
        for (int c : m)
            if (c < 0 || c >= p) throw FieldError("modulus coefficient out of range");
        if (r > 1 && !is_irreducible(m, p)) throw FieldError("modulus is reducible over F_p");
        if (r == 1) m = {0, 1};
    } else {
        m = default_modulus(p, r);
    }

    using Key = std::tuple<int, int, std::vector<int>, std::string>;
    static std::mutex mu;
    static std::map<Key, std::unique_ptr<FieldSpec>>* registry =
        new std::map<Key, std::unique_ptr<FieldSpec>>();
    std::lock_guard<std::mutex> lock(mu);
    Key key{p, r, m, generator};
    auto it = registry->find(key);
    if (it == registry->end()) {
        it = registry->emplace(key, std::unique_ptr<FieldSpec>(
                                        new FieldSpec(p, r, m, generator)))
                 .first;
    }
    return *it->second;
}

std::vector<FieldElement> enumerate_elements(const FieldSpec& field) {
    std::vector<FieldElement> out;
    out.reserve(field.q());
    for (uint32_t c = 0; c < field.q(); ++c) out.emplace_back(field, c);
    return out;
}

namespace {

// Minimal expression parser for element text: integers, the generator name,
// + - * ^ and parentheses.
struct ElemParser {
    const FieldSpec& f;
    std::string_view s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }

    uint32_t sum() {
        uint32_t v = eat('-') ? f.neg(product()) : product();
        for (;;) {
            skip();
            if (eat('+'))
                v = f.add(v, product());
            else if (eat('-'))
                v = f.sub(v, product());
            else
                return v;
        }
    }
    uint32_t product() {
        uint32_t v = power();
        while (eat('*')) v = f.mul(v, power());
        return v;
    }
    uint32_t power() {
        uint32_t v = primary();
        if (eat('^')) {
            skip();
            uint64_t e = integer();
            v = f.pow(v, e);
        }
        return v;
    }
    uint64_t integer() {
        skip();
        if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
            throw ParseError("expected integer", 1, (int)i + 1);
        uint64_t n = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) {
            n = n * 10 + (uint64_t)(s[i] - '0');
            if (n > 1000000000ull) throw ParseError("integer too large", 1, (int)i + 1);
            ++i;
        }
        return n;
    }
    uint32_t primary() {
        skip();
        if (eat('(')) {
            uint32_t v = sum();
            if (!eat(')')) throw ParseError("expected ')'", 1, (int)i + 1);
            return v;
        }
        if (i < s.size() && std::isdigit((unsigned char)s[i]))
            return f.from_integer((long long)integer());
        // identifier
        size_t start = i;
        while (i < s.size() &&
               (std::isalnum((unsigned char)s[i]) || s[i] == '_'))
            ++i;
        std::string name(s.substr(start, i - start));
        if (name != f.generator_name())
            throw ParseError("unknown symbol '" + name + "' in field element", 1,
                             (int)start + 1);
        if (f.r() == 1)
            throw ParseError("generator symbol in a prime field", 1, (int)start + 1);
        return f.code_of([&] {
            std::vector<int> c(f.r(), 0);
            c[1] = 1;
            return c;
        }());
    }
};

} // namespace

FieldElement parse_element(const FieldSpec& field, std::string_view text) {
    ElemParser p{field, text};
    uint32_t v = p.sum();
    p.skip();
    if (p.i != text.size())
        throw ParseError("trailing characters in field element", 1, (int)p.i + 1);
    return FieldElement(field, v);
}

} // namespace ffqe
