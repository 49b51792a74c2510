#include "ffqe/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "ffqe/errors.hpp"

namespace ffqe {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
    for (size_t i = 0; i < names_.size(); ++i) {
        if (!index_.emplace(names_[i], i).second)
            throw Error("duplicate variable '" + names_[i] + "'");
    }
}

std::optional<size_t> VarTable::index_of(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    const size_t n = a.exps.size();
    if (kind_ == Kind::Lex) {
        for (size_t i = 0; i < n; ++i) {
            if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? -1 : 1;
        }
        return 0;
    }
    size_t start = 0;
    for (size_t bi = 0; bi <= block_ends_.size(); ++bi) {
        size_t end = bi < block_ends_.size() ? block_ends_[bi] : n;
        if (end > n) end = n;
        uint64_t da = 0, db = 0;
        for (size_t i = start; i < end; ++i) {
            da += a.exps[i];
            db += b.exps[i];
        }
        if (da != db) return da < db ? -1 : 1;
        for (size_t i = start; i < end; ++i)
            if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? -1 : 1;
        start = end;
        if (start >= n) break;
    }
    return 0;
}

bool MonomialOrder::valid_elimination_cut(size_t cut) const {
    if (kind_ == Kind::Lex) return true;
    if (cut == 0) return true;
    for (size_t e : block_ends_)
        if (e == cut) return true;
    return false;
}

RingPtr make_ring(const FieldSpec& field, std::vector<std::string> names,
                  MonomialOrder order) {
    auto vt = std::make_shared<const VarTable>(std::move(names));
    return std::make_shared<const Ring>(Ring{&field, std::move(vt), std::move(order)});
}

Polynomial Polynomial::constant(const RingPtr& ring, uint32_t code) {
    std::vector<Term> t;
    if (code != 0) t.emplace_back(Monomial::one(ring->vars->size()), code);
    return Polynomial(ring, std::move(t));
}

Polynomial Polynomial::constant(const RingPtr& ring, const FieldElement& c) {
    if (&c.field() != ring->field) throw RingMismatch("constant from a different field");
    return constant(ring, c.code());
}

Polynomial Polynomial::variable(const RingPtr& ring, const std::string& name) {
    auto idx = ring->vars->index_of(name);
    if (!idx) throw RingMismatch("unknown variable '" + name + "'");
    Monomial m = Monomial::one(ring->vars->size());
    m.exps[*idx] = 1;
    return Polynomial(ring, {{std::move(m), 1}});
}

Polynomial Polynomial::monomial(const RingPtr& ring, Monomial m, uint32_t code) {
    if (m.exps.size() != ring->vars->size()) throw RingMismatch("monomial arity mismatch");
    std::vector<Term> t;
    if (code != 0) t.emplace_back(std::move(m), code);
    return Polynomial(ring, std::move(t));
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
    const MonomialOrder& ord = ring->order;
    std::sort(terms.begin(), terms.end(), [&](const Term& x, const Term& y) {
        return ord.greater(x.first, y.first);
    });
    std::vector<Term> out;
    out.reserve(terms.size());
    const FieldSpec* f = ring->field;
    for (auto& t : terms) {
        if (t.first.exps.size() != ring->vars->size())
            throw RingMismatch("monomial arity mismatch");
        if (!out.empty() && out.back().first == t.first) {
            out.back().second = f->add(out.back().second, t.second);
            if (out.back().second == 0) out.pop_back();
        } else if (t.second != 0) {
            out.push_back(std::move(t));
        }
    }
    return Polynomial(std::move(ring), std::move(out));
}

FieldElement Polynomial::constant_value() const {
    if (!is_constant()) throw Error("polynomial is not constant");
    return FieldElement(*ring_->field, terms_.empty() ? 0 : terms_[0].second);
}

void Polynomial::check_same_ring(const Polynomial& o) const {
    if (ring_ != o.ring_ && !ring_->same(*o.ring_))
        throw RingMismatch("polynomials from different rings");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_same_ring(o);
    const FieldSpec* f = ring_->field;
    const MonomialOrder& ord = ring_->order;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = ord.compare(terms_[i].first, o.terms_[j].first);
        if (c > 0) {
            out.push_back(terms_[i++]);
        } else if (c < 0) {
            out.push_back(o.terms_[j++]);
        } else {
            uint32_t s = f->add(terms_[i].second, o.terms_[j].second);
            if (s != 0) out.emplace_back(terms_[i].first, s);
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
    return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::operator-() const {
    const FieldSpec* f = ring_->field;
    std::vector<Term> out = terms_;
    for (auto& t : out) t.second = f->neg(t.second);
    return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scale_code(uint32_t code) const {
    const FieldSpec* f = ring_->field;
    if (code == 0) return zero(ring_);
    std::vector<Term> out = terms_;
    for (auto& t : out) t.second = f->mul(t.second, code);
    return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::scale(const FieldElement& c) const {
    if (&c.field() != ring_->field) throw RingMismatch("scalar from a different field");
    return scale_code(c.code());
}

Polynomial Polynomial::mul_term(const Monomial& m, uint32_t code) const {
    const FieldSpec* f = ring_->field;
    if (code == 0) return zero(ring_);
    std::vector<Term> out = terms_;
    for (auto& t : out) {
        t.first = t.first * m;
        t.second = f->mul(t.second, code);
    }
    return Polynomial(ring_, std::move(out));
}

namespace {
struct MonoGreater {
    const MonomialOrder* ord;
    bool operator()(const Monomial& a, const Monomial& b) const {
        return ord->compare(a, b) > 0;
    }
};
} // namespace

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same_ring(o);
    const FieldSpec* f = ring_->field;
    if (is_zero() || o.is_zero()) return zero(ring_);
    // Multiply the smaller into the larger.
    const Polynomial& big = terms_.size() >= o.terms_.size() ? *this : o;
    const Polynomial& small = terms_.size() >= o.terms_.size() ? o : *this;
    std::map<Monomial, uint32_t, MonoGreater> acc{MonoGreater{&ring_->order}};
    for (const auto& ts : small.terms_) {
        for (const auto& tb : big.terms_) {
            Monomial m = ts.first * tb.first;
            uint32_t c = f->mul(ts.second, tb.second);
            auto it = acc.find(m);
            if (it == acc.end()) {
                acc.emplace(std::move(m), c);
            } else {
                it->second = f->add(it->second, c);
                if (it->second == 0) acc.erase(it);
            }
        }
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& kv : acc) out.emplace_back(kv.first, kv.second);
    return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::pow(uint32_t e) const {
    Polynomial out = constant(ring_, ring_->field->q() > 1 ? 1u : 0u);
    Polynomial base = *this;
    while (e) {
        if (e & 1) out = out * base;
        if (e >>= 1) base = base * base;
    }
    return out;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return scale_code(ring_->field->inv(terms_[0].second));
}

const Monomial& Polynomial::leading_monomial() const {
    if (is_zero()) throw Error("leading term of the zero polynomial");
    return terms_[0].first;
}

std::pair<Monomial, FieldElement> Polynomial::leading_term() const {
    if (is_zero()) throw Error("leading term of the zero polynomial");
    return {terms_[0].first, FieldElement(*ring_->field, terms_[0].second)};
}

uint32_t Polynomial::leading_coeff_code() const {
    if (is_zero()) throw Error("leading term of the zero polynomial");
    return terms_[0].second;
}

FieldElement Polynomial::evaluate(const std::vector<FieldElement>& point) const {
    const FieldSpec* f = ring_->field;
    if (point.size() != ring_->vars->size())
        throw Error("evaluation point arity mismatch");
    for (const auto& v : point)
        if (&v.field() != f) throw FieldError("evaluation point from a different field");
    uint32_t acc = 0;
    for (const auto& t : terms_) {
        uint32_t v = t.second;
        for (size_t i = 0; i < t.first.exps.size(); ++i) {
            if (t.first.exps[i]) v = f->mul(v, f->pow(point[i].code(), t.first.exps[i]));
        }
        acc = f->add(acc, v);
    }
    return FieldElement(*f, acc);
}

FieldElement Polynomial::evaluate(const std::map<std::string, FieldElement>& point) const {
    std::vector<FieldElement> by_index;
    by_index.reserve(ring_->vars->size());
    for (const auto& name : ring_->vars->names()) {
        auto it = point.find(name);
        if (it == point.end()) throw Error("missing binding for variable '" + name + "'");
        by_index.push_back(it->second);
    }
    return evaluate(by_index);
}

Polynomial Polynomial::reduce_exponents_by_field_polys() const {
    const uint32_t q = ring_->field->q();
    if (q < 2) return *this;
    std::vector<Term> out = terms_;
    bool changed = false;
    for (auto& t : out) {
        for (auto& e : t.first.exps) {
            if (e >= q) {
                e = (e - 1) % (q - 1) + 1;
                changed = true;
            }
        }
    }
    if (!changed) return *this;
    return from_terms(ring_, std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (ring_ != o.ring_ && !ring_->same(*o.ring_)) return false;
    return terms_ == o.terms_;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    const FieldSpec* f = ring_->field;
    const bool prime = f->r() == 1;
    const uint32_t p = (uint32_t)f->p();
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        uint32_t c = t.second;
        bool negative = false;
        uint32_t mag = c;
        if (prime && c > p / 2) {
            // Balanced representation: p-1 prints as -1, etc.
            negative = true;
            mag = p - c;
        }
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        std::string coeff_txt;
        bool need_coeff = true;
        if (prime) {
            if (mag == 1 && !t.first.is_one())
                need_coeff = false;
            else
                coeff_txt = std::to_string(mag);
        } else {
            if (c == 1 && !t.first.is_one()) {
                need_coeff = false;
            } else {
                coeff_txt = f->to_string(c);
                if (!t.first.is_one() &&
                    coeff_txt.find_first_of("+-") != std::string::npos)
                    coeff_txt = "(" + coeff_txt + ")";
            }
        }
        std::string mono_txt;
        for (size_t i = 0; i < t.first.exps.size(); ++i) {
            uint32_t e = t.first.exps[i];
            if (!e) continue;
            if (!mono_txt.empty()) mono_txt += "*";
            mono_txt += ring_->vars->name(i);
            if (e > 1) mono_txt += "^" + std::to_string(e);
        }
        if (need_coeff) {
            out += coeff_txt;
            if (!mono_txt.empty()) out += "*";
        }
        out += mono_txt;
    }
    return out;
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G) {
    const RingPtr& ring = f.ring();
    for (const auto& g : G) {
        if (g.is_zero()) throw Error("zero polynomial in reducer list");
        if (g.ring() != ring && !g.ring()->same(*ring))
            throw RingMismatch("reducers from a different ring");
    }
    if (G.empty()) throw Error("empty reducer list");
    const FieldSpec* fl = ring->field;
    std::map<Monomial, uint32_t, MonoGreater> work{MonoGreater{&ring->order}};
    for (const auto& t : f.terms()) work.emplace(t.first, t.second);
    std::vector<Polynomial::Term> result;
    while (!work.empty()) {
        auto it = work.begin();
        Monomial m = it->first;
        uint32_t c = it->second;
        work.erase(it);
        if (c == 0) continue;
        const Polynomial* red = nullptr;
        for (const auto& g : G) {
            if (g.leading_monomial().divides(m)) {
                red = &g;
                break;
            }
        }
        if (!red) {
            result.emplace_back(std::move(m), c);
            continue;
        }
        Monomial quot = m.divide(red->leading_monomial());
        uint32_t factor = fl->mul(c, fl->inv(red->leading_coeff_code()));
        // Subtract factor * quot * red; its leading term cancels m exactly.
        const auto& terms = red->terms();
        for (size_t k = 1; k < terms.size(); ++k) {
            Monomial mm = terms[k].first * quot;
            uint32_t sub = fl->mul(factor, terms[k].second);
            auto w = work.find(mm);
            if (w == work.end()) {
                work.emplace(std::move(mm), fl->neg(sub));
            } else {
                w->second = fl->sub(w->second, sub);
                if (w->second == 0) work.erase(w);
            }
        }
    }
    // result was produced in strictly descending order already
    return Polynomial::from_terms(ring, std::move(result));
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    if (f.is_zero() || g.is_zero()) throw Error("s-polynomial of zero");
    if (f.ring() != g.ring() && !f.ring()->same(*g.ring()))
        throw RingMismatch("s-polynomial across rings");
    const FieldSpec* fl = f.ring()->field;
    Monomial L = f.leading_monomial().lcm(g.leading_monomial());
    Polynomial a = f.mul_term(L.divide(f.leading_monomial()), fl->inv(f.leading_coeff_code()));
    Polynomial b = g.mul_term(L.divide(g.leading_monomial()), fl->inv(g.leading_coeff_code()));
    return a - b;
}

Polynomial field_polynomial(const RingPtr& ring, const std::string& var) {
    auto idx = ring->vars->index_of(var);
    if (!idx) throw RingMismatch("unknown variable '" + var + "'");
    const uint32_t q = ring->field->q();
    Monomial hi = Monomial::one(ring->vars->size());
    hi.exps[*idx] = q;
    Monomial lo = Monomial::one(ring->vars->size());
    lo.exps[*idx] = 1;
    return Polynomial::from_terms(
        ring, {{std::move(hi), 1u}, {std::move(lo), ring->field->neg(1)}});
}

Polynomial reindex(const Polynomial& f, const RingPtr& target) {
    if (f.ring()->field != target->field)
        throw RingMismatch("reindex across different fields");
    const size_t n_old = f.ring()->vars->size();
    std::vector<std::optional<size_t>> map(n_old);
    for (size_t i = 0; i < n_old; ++i)
        map[i] = target->vars->index_of(f.ring()->vars->name(i));
    std::vector<Polynomial::Term> out;
    out.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        Monomial m = Monomial::one(target->vars->size());
        for (size_t i = 0; i < n_old; ++i) {
            if (!t.first.exps[i]) continue;
            if (!map[i])
                throw RingMismatch("variable '" + f.ring()->vars->name(i) +
                                   "' missing from target ring");
            m.exps[*map[i]] = t.first.exps[i];
        }
        out.emplace_back(std::move(m), t.second);
    }
    return Polynomial::from_terms(target, std::move(out));
}

namespace {

// Recursive-descent parser over the term grammar, evaluated directly into a
// Polynomial. Shares its shape with the element parser but resolves
// identifiers against the ring's variables.
struct PolyParser {
    const RingPtr& ring;
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
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, 1, (int)i + 1); }

    Polynomial sum() {
        Polynomial v = eat('-') ? -product() : product();
        for (;;) {
            skip();
            if (eat('+'))
                v = v + product();
            else if (eat('-'))
                v = v - product();
            else
                return v;
        }
    }
    Polynomial product() {
        Polynomial v = power();
        while (eat('*')) v = v * power();
        return v;
    }
    Polynomial power() {
        Polynomial v = primary();
        if (eat('^')) {
            uint64_t e = integer();
            if (e > 1u << 20) fail("exponent too large");
            v = v.pow((uint32_t)e);
        }
        return v;
    }
    uint64_t integer() {
        skip();
        if (i >= s.size() || !std::isdigit((unsigned char)s[i])) fail("expected integer");
        uint64_t n = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) {
            n = n * 10 + (uint64_t)(s[i] - '0');
            if (n > 1000000000ull) fail("integer too large");
            ++i;
        }
        return n;
    }
    Polynomial primary() {
        skip();
        if (eat('(')) {
            Polynomial v = sum();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (i < s.size() && std::isdigit((unsigned char)s[i]))
            return Polynomial::constant(ring, ring->field->from_integer((long long)integer()));
        size_t start = i;
        while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) ++i;
        if (i == start) fail("expected term");
        std::string name(s.substr(start, i - start));
        if (name == ring->field->generator_name() && ring->field->r() > 1) {
            std::vector<int> c(ring->field->r(), 0);
            c[1] = 1;
            return Polynomial::constant(ring, ring->field->code_of(c));
        }
        if (!ring->vars->index_of(name)) fail("unknown variable '" + name + "'");
        return Polynomial::variable(ring, name);
    }
};

} // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
    PolyParser p{ring, text};
    Polynomial v = p.sum();
    p.skip();
    if (p.i != text.size())
        throw ParseError("trailing characters in polynomial", 1, (int)p.i + 1);
    return v;
}

} // namespace ffqe
