#include "ffqe/groebner.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "ffqe/errors.hpp"

namespace ffqe {

Ideal::Ideal(RingPtr r, std::vector<Polynomial> gens) : ring(std::move(r)) {
    generators.reserve(gens.size());
    for (auto& g : gens) {
        if (g.ring() != ring && !g.ring()->same(*ring))
            throw RingMismatch("generator from a different ring");
        if (!g.is_zero()) generators.push_back(std::move(g));
    }
}

Ideal add_field_polynomials(const Ideal& J, const std::vector<std::string>& vars) {
    std::vector<Polynomial> gens = J.generators;
    for (const auto& v : vars) {
        Polynomial fp = field_polynomial(J.ring, v);
        bool present = false;
        for (const auto& g : gens)
            if (g == fp) {
                present = true;
                break;
            }
        if (!present) gens.push_back(std::move(fp));
    }
    return Ideal(J.ring, std::move(gens));
}

namespace {

// ---------------------------------------------------------------------------
// Generic path: works for any variable count and exponent size. Also the
// reference the packed kernel below mirrors.
// ---------------------------------------------------------------------------

std::vector<Polynomial> interreduce(std::vector<Polynomial> G, const Budget* budget) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < G.size(); ++i) {
            if (budget) budget->check_time("interreduction");
            std::vector<Polynomial> others;
            others.reserve(G.size() - 1);
            for (size_t j = 0; j < G.size(); ++j)
                if (j != i) others.push_back(G[j]);
            if (others.empty()) break;
            Polynomial r = normal_form(G[i], others);
            if (r != G[i]) {
                changed = true;
                if (r.is_zero()) {
                    G.erase(G.begin() + (long)i);
                    --i;
                } else {
                    G[i] = std::move(r);
                }
            }
        }
    }
    return G;
}

struct PairKey {
    Monomial lcm;
    size_t i, j;
};

struct PairLess {
    const MonomialOrder* ord;
    bool operator()(const PairKey& a, const PairKey& b) const {
        int c = ord->compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

GroebnerBasis buchberger_generic(const Ideal& J, const Budget* budget) {
    const RingPtr& ring = J.ring;
    std::vector<Polynomial> G = interreduce(J.generators, budget);
    for (auto& g : G) g = g.monic();
    std::sort(G.begin(), G.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ring->order.less(a.leading_monomial(), b.leading_monomial());
    });

    if (G.empty()) return GroebnerBasis{ring, {}};

    PairLess less{&ring->order};
    std::set<PairKey, PairLess> queue(less);
    std::set<std::pair<size_t, size_t>> treated;
    auto enqueue = [&](size_t i, size_t j) {
        queue.insert(PairKey{G[i].leading_monomial().lcm(G[j].leading_monomial()), i, j});
    };
    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = i + 1; j < G.size(); ++j) enqueue(i, j);

    while (!queue.empty()) {
        if (budget) {
            budget->check_time("buchberger");
            budget->check_basis(G.size());
        }
        PairKey pk = *queue.begin();
        queue.erase(queue.begin());
        treated.emplace(pk.i, pk.j);

        const Monomial& lmi = G[pk.i].leading_monomial();
        const Monomial& lmj = G[pk.j].leading_monomial();
        if (lmi.coprime(lmj)) continue; // product criterion
        bool skip = false;
        for (size_t k = 0; k < G.size() && !skip; ++k) {
            if (k == pk.i || k == pk.j) continue;
            if (!G[k].leading_monomial().divides(pk.lcm)) continue;
            auto key1 = std::minmax(pk.i, k);
            auto key2 = std::minmax(pk.j, k);
            if (treated.count({key1.first, key1.second}) &&
                treated.count({key2.first, key2.second}))
                skip = true; // chain criterion
        }
        if (skip) continue;

        Polynomial s = s_polynomial(G[pk.i], G[pk.j]);
        if (s.is_zero()) continue;
        Polynomial r = normal_form(s, G);
        if (r.is_zero()) continue;
        r = r.monic();
        size_t t = G.size();
        G.push_back(std::move(r));
        for (size_t k = 0; k < t; ++k) enqueue(k, t);
    }

    std::vector<Polynomial> minimal;
    for (size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& lmj = G[j].leading_monomial();
            const Monomial& lmi = G[i].leading_monomial();
            if (lmj.divides(lmi) && (lmj != lmi || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Polynomial> others;
            others.reserve(minimal.size() - 1);
            for (size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            if (others.empty()) continue;
            Polynomial r = normal_form(minimal[i], others).monic();
            if (r != minimal[i]) {
                changed = true;
                if (r.is_zero()) {
                    minimal.erase(minimal.begin() + (long)i);
                    --i;
                } else {
                    minimal[i] = std::move(r);
                }
            }
        }
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ring->order.greater(a.leading_monomial(), b.leading_monomial());
    });
    return GroebnerBasis{ring, std::move(minimal)};
}

// ---------------------------------------------------------------------------
// Packed kernel: one byte per exponent, variables laid out high byte first so
// word comparison is the lexicographic order. Bails out (PackOverflow) when
// an exponent would leave the 7-bit range, falling back to the generic path.
// ---------------------------------------------------------------------------

struct PackOverflow {};

constexpr uint64_t kHighBits = 0x8080808080808080ull;
constexpr uint64_t kLowMask = 0x7f7f7f7f7f7f7f7full;

template <int NW>
struct PMono {
    std::array<uint64_t, NW> w{};
    bool operator==(const PMono& o) const { return w == o.w; }
};

template <int NW>
inline int pm_cmp_lex(const PMono<NW>& a, const PMono<NW>& b) {
    for (int k = 0; k < NW; ++k)
        if (a.w[k] != b.w[k]) return a.w[k] < b.w[k] ? -1 : 1;
    return 0;
}

template <int NW>
inline bool pm_divides(const PMono<NW>& a, const PMono<NW>& b) {
    // does a divide b; relies on every byte being <= 127
    for (int k = 0; k < NW; ++k)
        if ((b.w[k] - a.w[k]) & kHighBits) return false;
    return true;
}

inline uint64_t nonzero_byte_mask(uint64_t v) {
    return ((v & kLowMask) + kLowMask) & kHighBits;
}

template <int NW>
inline bool pm_coprime(const PMono<NW>& a, const PMono<NW>& b) {
    for (int k = 0; k < NW; ++k)
        if (nonzero_byte_mask(a.w[k]) & nonzero_byte_mask(b.w[k])) return false;
    return true;
}

template <int NW>
inline PMono<NW> pm_mul(const PMono<NW>& a, const PMono<NW>& b) {
    PMono<NW> out;
    for (int k = 0; k < NW; ++k) {
        out.w[k] = a.w[k] + b.w[k];
        if (out.w[k] & kHighBits) throw PackOverflow{};
    }
    return out;
}

template <int NW>
inline PMono<NW> pm_div(const PMono<NW>& a, const PMono<NW>& b) {
    PMono<NW> out;
    for (int k = 0; k < NW; ++k) out.w[k] = a.w[k] - b.w[k];
    return out;
}

inline uint32_t pm_byte(const uint64_t* w, int var) {
    return (uint32_t)((w[var / 8] >> (56 - 8 * (var % 8))) & 0xFF);
}

template <int NW>
inline PMono<NW> pm_lcm(const PMono<NW>& a, const PMono<NW>& b, int nvars) {
    PMono<NW> out;
    for (int i = 0; i < nvars; ++i) {
        uint32_t e = std::max(pm_byte(a.w.data(), i), pm_byte(b.w.data(), i));
        out.w[i / 8] |= (uint64_t)e << (56 - 8 * (i % 8));
    }
    return out;
}

template <int NW>
struct KOrder {
    bool lex = true;
    int nvars = 0;
    std::vector<std::pair<int, int>> blocks; // [start, end) variable ranges

    int cmp(const PMono<NW>& a, const PMono<NW>& b) const {
        if (lex) return pm_cmp_lex(a, b);
        for (auto [s, e] : blocks) {
            uint32_t da = 0, db = 0;
            for (int i = s; i < e; ++i) {
                da += pm_byte(a.w.data(), i);
                db += pm_byte(b.w.data(), i);
            }
            if (da != db) return da < db ? -1 : 1;
            for (int i = s; i < e; ++i) {
                uint32_t xa = pm_byte(a.w.data(), i), xb = pm_byte(b.w.data(), i);
                if (xa != xb) return xa < xb ? -1 : 1;
            }
        }
        return 0;
    }
};

template <int NW>
struct PPoly {
    std::vector<PMono<NW>> m; // descending under the kernel order
    std::vector<uint32_t> c;  // nonzero coefficient codes
    bool empty() const { return m.empty(); }
    size_t size() const { return m.size(); }
};

template <int NW>
PPoly<NW> k_mul_term(const PPoly<NW>& f, const PMono<NW>& quot, uint32_t coeff,
                     const FieldSpec& fl) {
    PPoly<NW> out;
    out.m.reserve(f.size());
    out.c.reserve(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        out.m.push_back(pm_mul(f.m[i], quot));
        out.c.push_back(fl.mul(f.c[i], coeff));
    }
    return out;
}

template <int NW>
PPoly<NW> k_sub(const PPoly<NW>& a, const PPoly<NW>& b, const KOrder<NW>& ord,
                const FieldSpec& fl) {
    PPoly<NW> out;
    out.m.reserve(a.size() + b.size());
    out.c.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = ord.cmp(a.m[i], b.m[j]);
        if (c > 0) {
            out.m.push_back(a.m[i]);
            out.c.push_back(a.c[i]);
            ++i;
        } else if (c < 0) {
            out.m.push_back(b.m[j]);
            out.c.push_back(fl.neg(b.c[j]));
            ++j;
        } else {
            uint32_t v = fl.sub(a.c[i], b.c[j]);
            if (v) {
                out.m.push_back(a.m[i]);
                out.c.push_back(v);
            }
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) {
        out.m.push_back(a.m[i]);
        out.c.push_back(a.c[i]);
    }
    for (; j < b.size(); ++j) {
        out.m.push_back(b.m[j]);
        out.c.push_back(fl.neg(b.c[j]));
    }
    return out;
}

template <int NW>
struct KTerm {
    PMono<NW> m;
    uint32_t c;
};

// Working accumulator for long reduction chains: sorted runs of geometrically
// growing capacity, merged on overflow. Terms are kept ascending so the
// leading term pops from the back in O(1).
template <int NW>
struct GeoBucket {
    const KOrder<NW>* ord;
    const FieldSpec* fl;
    std::vector<std::vector<KTerm<NW>>> buckets;

    static size_t cap(size_t i) { return 16ull << (2 * i); }

    std::vector<KTerm<NW>> merge(std::vector<KTerm<NW>>& a, std::vector<KTerm<NW>>& b) {
        std::vector<KTerm<NW>> out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            int c = ord->cmp(a[i].m, b[j].m);
            if (c < 0) {
                out.push_back(a[i++]);
            } else if (c > 0) {
                out.push_back(b[j++]);
            } else {
                uint32_t v = fl->add(a[i].c, b[j].c);
                if (v) out.push_back({a[i].m, v});
                ++i;
                ++j;
            }
        }
        for (; i < a.size(); ++i) out.push_back(a[i]);
        for (; j < b.size(); ++j) out.push_back(b[j]);
        return out;
    }

    void add(std::vector<KTerm<NW>>&& s) {
        if (s.empty()) return;
        size_t i = 0;
        while (cap(i) < s.size()) ++i;
        for (;;) {
            if (i >= buckets.size()) buckets.resize(i + 1);
            if (buckets[i].empty()) {
                buckets[i] = std::move(s);
                return;
            }
            s = merge(buckets[i], s);
            buckets[i].clear();
            if (s.size() <= cap(i)) {
                if (s.empty()) return;
                buckets[i] = std::move(s);
                return;
            }
            ++i;
        }
    }

    bool pop_leading(PMono<NW>& m_out, uint32_t& c_out) {
        for (;;) {
            int best = -1;
            for (size_t i = 0; i < buckets.size(); ++i) {
                if (buckets[i].empty()) continue;
                if (best < 0 || ord->cmp(buckets[i].back().m, buckets[best].back().m) > 0)
                    best = (int)i;
            }
            if (best < 0) return false;
            PMono<NW> m = buckets[best].back().m;
            uint32_t c = 0;
            for (auto& b : buckets) {
                if (!b.empty() && b.back().m == m) {
                    c = fl->add(c, b.back().c);
                    b.pop_back();
                }
            }
            if (c) {
                m_out = m;
                c_out = c;
                return true;
            }
        }
    }
};

// Full normal form against the list (optionally skipping one index). The
// reducer is the first dividing element in list order.
template <int NW>
PPoly<NW> k_nf(const PPoly<NW>& f, const std::vector<PPoly<NW>>& G, long skip,
               const KOrder<NW>& ord, const FieldSpec& fl, const Budget* budget) {
    GeoBucket<NW> work{&ord, &fl, {}};
    {
        std::vector<KTerm<NW>> init;
        init.reserve(f.size());
        for (size_t i = f.size(); i-- > 0;) init.push_back({f.m[i], f.c[i]});
        work.add(std::move(init));
    }
    PPoly<NW> out;
    size_t steps = 0;
    PMono<NW> mono;
    uint32_t coeff;
    while (work.pop_leading(mono, coeff)) {
        if (budget && (++steps & 1023) == 0) budget->check_time("reduction");
        long red = -1;
        for (size_t g = 0; g < G.size(); ++g) {
            if ((long)g == skip || G[g].empty()) continue;
            if (pm_divides(G[g].m[0], mono)) {
                red = (long)g;
                break;
            }
        }
        if (red < 0) {
            out.m.push_back(mono);
            out.c.push_back(coeff);
            continue;
        }
        const PPoly<NW>& g = G[(size_t)red];
        PMono<NW> quot = pm_div(mono, g.m[0]);
        uint32_t factor = fl.mul(coeff, fl.inv(g.c[0]));
        if (g.size() > 1) {
            std::vector<KTerm<NW>> stream;
            stream.reserve(g.size() - 1);
            for (size_t k = g.size(); k-- > 1;) {
                uint32_t v = fl.neg(fl.mul(factor, g.c[k]));
                if (v) stream.push_back({pm_mul(quot, g.m[k]), v});
            }
            work.add(std::move(stream));
        }
    }
    return out;
}

template <int NW>
void k_monic(PPoly<NW>& f, const FieldSpec& fl) {
    if (f.empty() || f.c[0] == 1) return;
    uint32_t inv = fl.inv(f.c[0]);
    for (auto& c : f.c) c = fl.mul(c, inv);
}

template <int NW>
GroebnerBasis buchberger_packed(const Ideal& J, const Budget* budget) {
    const RingPtr& ring = J.ring;
    const FieldSpec& fl = *ring->field;
    const int nvars = (int)ring->vars->size();

    KOrder<NW> ord;
    ord.nvars = nvars;
    if (ring->order.kind() == MonomialOrder::Kind::Lex) {
        ord.lex = true;
    } else {
        ord.lex = false;
        int start = 0;
        for (size_t e : ring->order.block_ends()) {
            if ((int)e > nvars) break;
            if ((int)e > start) ord.blocks.emplace_back(start, (int)e);
            start = (int)e;
        }
        if (start < nvars) ord.blocks.emplace_back(start, nvars);
    }

    auto pack_poly = [&](const Polynomial& p) {
        PPoly<NW> out;
        out.m.reserve(p.num_terms());
        out.c.reserve(p.num_terms());
        for (const auto& t : p.terms()) {
            PMono<NW> pm;
            for (int i = 0; i < nvars; ++i) {
                uint32_t e = t.first.exps[i];
                if (e > 96) throw PackOverflow{};
                pm.w[i / 8] |= (uint64_t)e << (56 - 8 * (i % 8));
            }
            out.m.push_back(pm);
            out.c.push_back(t.second);
        }
        return out;
    };
    auto unpack_poly = [&](const PPoly<NW>& p) {
        std::vector<Polynomial::Term> terms;
        terms.reserve(p.size());
        for (size_t i = 0; i < p.size(); ++i) {
            Monomial m = Monomial::one(nvars);
            for (int v = 0; v < nvars; ++v) m.exps[v] = pm_byte(p.m[i].w.data(), v);
            terms.emplace_back(std::move(m), p.c[i]);
        }
        return Polynomial::from_terms(ring, std::move(terms));
    };

    std::vector<PPoly<NW>> G;
    G.reserve(J.generators.size());
    for (const auto& g : J.generators) G.push_back(pack_poly(g));

    // interreduce
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < G.size(); ++i) {
            if (budget) budget->check_time("interreduction");
            if (G.size() == 1) break;
            PPoly<NW> r = k_nf(G[i], G, (long)i, ord, fl, budget);
            bool same = r.m == G[i].m && r.c == G[i].c;
            if (!same) {
                changed = true;
                if (r.empty()) {
                    G.erase(G.begin() + (long)i);
                    --i;
                } else {
                    G[i] = std::move(r);
                }
            }
        }
    }
    for (auto& g : G) k_monic(g, fl);
    std::sort(G.begin(), G.end(), [&](const PPoly<NW>& a, const PPoly<NW>& b) {
        return ord.cmp(a.m[0], b.m[0]) < 0;
    });

    if (G.empty()) return GroebnerBasis{ring, {}};

    struct KPair {
        PMono<NW> lcm;
        size_t i, j;
    };
    struct KPairLess {
        const KOrder<NW>* o;
        bool operator()(const KPair& a, const KPair& b) const {
            int c = o->cmp(a.lcm, b.lcm);
            if (c != 0) return c < 0;
            if (a.i != b.i) return a.i < b.i;
            return a.j < b.j;
        }
    };
    std::set<KPair, KPairLess> queue(KPairLess{&ord});

    // Gebauer-Moeller update: prune the candidate pairs of a new element by
    // the multiple/equal-lcm/coprime criteria and drop old pairs whose lcm
    // the new leading monomial refines.
    auto update_pairs = [&](size_t t) {
        const PMono<NW>& lm_t = G[t].m[0];
        struct Cand {
            PMono<NW> lcm;
            size_t i;
            bool coprime;
        };
        std::vector<Cand> cands;
        cands.reserve(t);
        for (size_t i = 0; i < t; ++i) {
            if (G[i].empty()) continue;
            cands.push_back(
                {pm_lcm(G[i].m[0], lm_t, nvars), i, pm_coprime(G[i].m[0], lm_t)});
        }
        std::vector<bool> keep(cands.size(), true);
        // drop candidates whose lcm is a proper multiple of another's
        for (size_t a = 0; a < cands.size(); ++a) {
            for (size_t b = 0; b < cands.size() && keep[a]; ++b) {
                if (a == b) continue;
                if (!(cands[b].lcm == cands[a].lcm) &&
                    pm_divides(cands[b].lcm, cands[a].lcm))
                    keep[a] = false;
            }
        }
        // one representative per lcm value; a coprime member kills the class
        for (size_t a = 0; a < cands.size(); ++a) {
            if (!keep[a]) continue;
            bool class_coprime = cands[a].coprime;
            size_t rep = a;
            for (size_t b = a + 1; b < cands.size(); ++b) {
                if (!keep[b] || !(cands[b].lcm == cands[a].lcm)) continue;
                keep[b] = false;
                class_coprime = class_coprime || cands[b].coprime;
                if (cands[b].i < cands[rep].i) rep = b;
            }
            if (class_coprime) {
                keep[a] = false;
            } else if (rep != a) {
                keep[a] = false;
                keep[rep] = true;
            }
        }
        // old pairs superseded by the new element
        for (auto it = queue.begin(); it != queue.end();) {
            if (pm_divides(lm_t, it->lcm) &&
                !(pm_lcm(G[it->i].m[0], lm_t, nvars) == it->lcm) &&
                !(pm_lcm(G[it->j].m[0], lm_t, nvars) == it->lcm))
                it = queue.erase(it);
            else
                ++it;
        }
        for (size_t a = 0; a < cands.size(); ++a)
            if (keep[a]) queue.insert(KPair{cands[a].lcm, cands[a].i, t});
    };
    for (size_t t = 1; t < G.size(); ++t) update_pairs(t);

    while (!queue.empty()) {
        if (budget) {
            budget->check_time("buchberger");
            budget->check_basis(G.size());
        }
        KPair pk = *queue.begin();
        queue.erase(queue.begin());

        const PPoly<NW>& f = G[pk.i];
        const PPoly<NW>& g = G[pk.j];
        PPoly<NW> a = k_mul_term(f, pm_div(pk.lcm, f.m[0]), fl.inv(f.c[0]), fl);
        PPoly<NW> b = k_mul_term(g, pm_div(pk.lcm, g.m[0]), fl.inv(g.c[0]), fl);
        PPoly<NW> s = k_sub(a, b, ord, fl);
        if (s.empty()) continue;
        PPoly<NW> r = k_nf(s, G, -1, ord, fl, budget);
        if (r.empty()) continue;
        k_monic(r, fl);
        size_t t = G.size();
        G.push_back(std::move(r));
        update_pairs(t);
    }

    // minimalize
    std::vector<PPoly<NW>> minimal;
    for (size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            if (pm_divides(G[j].m[0], G[i].m[0]) &&
                (!(G[j].m[0] == G[i].m[0]) || j < i))
                redundant = true;
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < minimal.size(); ++i) {
            if (minimal.size() == 1) break;
            PPoly<NW> r = k_nf(minimal[i], minimal, (long)i, ord, fl, budget);
            k_monic(r, fl);
            bool same = r.m == minimal[i].m && r.c == minimal[i].c;
            if (!same) {
                changed = true;
                if (r.empty()) {
                    minimal.erase(minimal.begin() + (long)i);
                    --i;
                } else {
                    minimal[i] = std::move(r);
                }
            }
        }
    }
    std::sort(minimal.begin(), minimal.end(), [&](const PPoly<NW>& a, const PPoly<NW>& b) {
        return ord.cmp(a.m[0], b.m[0]) > 0;
    });

    std::vector<Polynomial> out;
    out.reserve(minimal.size());
    for (const auto& g : minimal) out.push_back(unpack_poly(g));
    return GroebnerBasis{ring, std::move(out)};
}

} // namespace

GroebnerBasis buchberger(const Ideal& J, const Budget* budget) {
    const size_t n = J.ring->vars->size();
    if (n >= 1 && n <= 32) {
        bool fits = true;
        for (const auto& g : J.generators) {
            for (const auto& t : g.terms())
                for (auto e : t.first.exps)
                    if (e > 96) {
                        fits = false;
                        break;
                    }
            if (!fits) break;
        }
        if (fits) {
            try {
                switch ((n + 7) / 8) {
                    case 1: return buchberger_packed<1>(J, budget);
                    case 2: return buchberger_packed<2>(J, budget);
                    case 3: return buchberger_packed<3>(J, budget);
                    case 4: return buchberger_packed<4>(J, budget);
                }
            } catch (const PackOverflow&) {
                // exponents outgrew the packed range; redo generically
            }
        }
    }
    return buchberger_generic(J, budget);
}

std::vector<Polynomial> eliminate(const GroebnerBasis& G, size_t keep_from) {
    const RingPtr& ring = G.ring;
    if (keep_from > ring->vars->size())
        throw Error("elimination cut beyond the variable table");
    if (!ring->order.valid_elimination_cut(keep_from))
        throw Error("order does not support elimination at this cut");
    std::vector<Polynomial> out;
    for (const auto& g : G.polys) {
        bool in_subring = true;
        for (const auto& t : g.terms()) {
            for (size_t i = 0; i < keep_from && in_subring; ++i)
                if (t.first.exps[i]) in_subring = false;
            if (!in_subring) break;
        }
        if (in_subring) out.push_back(g);
    }
    return out;
}

std::vector<Polynomial> eliminate(const GroebnerBasis& G,
                                  const std::vector<std::string>& keep_vars) {
    const auto& names = G.ring->vars->names();
    if (keep_vars.size() > names.size())
        throw Error("keep set larger than the variable table");
    size_t cut = names.size() - keep_vars.size();
    for (size_t k = 0; k < keep_vars.size(); ++k) {
        if (names[cut + k] != keep_vars[k])
            throw Error("keep set is not the low-rank suffix of the variable order");
    }
    return eliminate(G, cut);
}

bool ideal_membership(const Polynomial& f, const GroebnerBasis& G) {
    if (f.ring() != G.ring && !f.ring()->same(*G.ring))
        throw RingMismatch("membership query across rings");
    if (G.polys.empty()) return f.is_zero();
    return normal_form(f, G.polys).is_zero();
}

} // namespace ffqe
