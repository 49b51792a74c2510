#include "ffqe/term.hpp"

#include <algorithm>

#include "ffqe/errors.hpp"

namespace ffqe {

TermPtr Term::constant(const FieldElement& c) {
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = Kind::Constant;
    t->value_ = std::make_shared<const FieldElement>(c);
    return t;
}

TermPtr Term::integer(const FieldSpec& f, long long n) {
    return constant(FieldElement(f, f.from_integer(n)));
}

TermPtr Term::variable(std::string name) {
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = Kind::Variable;
    t->var_ = std::move(name);
    return t;
}

namespace {
bool all_constant(const std::vector<TermPtr>& args) {
    for (const auto& a : args)
        if (a->kind() != Term::Kind::Constant) return false;
    return true;
}
} // namespace

TermPtr Term::add(std::vector<TermPtr> args) {
    if (args.size() == 1) return args[0];
    if (!args.empty() && all_constant(args)) {
        FieldElement acc = args[0]->value();
        for (size_t i = 1; i < args.size(); ++i) acc = acc + args[i]->value();
        return constant(acc);
    }
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = Kind::Add;
    t->args_ = std::move(args);
    return t;
}

TermPtr Term::mul(std::vector<TermPtr> args) {
    if (args.size() == 1) return args[0];
    if (!args.empty() && all_constant(args)) {
        FieldElement acc = args[0]->value();
        for (size_t i = 1; i < args.size(); ++i) acc = acc * args[i]->value();
        return constant(acc);
    }
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = Kind::Mul;
    t->args_ = std::move(args);
    return t;
}

TermPtr Term::neg(TermPtr arg) {
    if (arg->kind() == Kind::Constant) return constant(-arg->value());
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = Kind::Neg;
    t->args_ = {std::move(arg)};
    return t;
}

TermPtr Term::pow(TermPtr base, uint32_t e) {
    if (base->kind() == Kind::Constant) return constant(base->value().pow(e));
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = Kind::Pow;
    t->args_ = {std::move(base)};
    t->exp_ = e;
    return t;
}

TermPtr Term::sub(TermPtr a, TermPtr b) { return add({std::move(a), neg(std::move(b))}); }

void collect_variables(const TermPtr& t, std::vector<std::string>& out) {
    switch (t->kind()) {
        case Term::Kind::Constant:
            return;
        case Term::Kind::Variable:
            if (std::find(out.begin(), out.end(), t->var()) == out.end())
                out.push_back(t->var());
            return;
        default:
            for (const auto& a : t->args()) collect_variables(a, out);
    }
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
        case Term::Kind::Constant:
            return a->value() == b->value();
        case Term::Kind::Variable:
            return a->var() == b->var();
        case Term::Kind::Pow:
            if (a->exponent() != b->exponent()) return false;
            [[fallthrough]];
        default: {
            if (a->args().size() != b->args().size()) return false;
            for (size_t i = 0; i < a->args().size(); ++i)
                if (!term_equal(a->args()[i], b->args()[i])) return false;
            return true;
        }
    }
}

TermPtr rename_term(const TermPtr& t, const std::map<std::string, std::string>& renames) {
    switch (t->kind()) {
        case Term::Kind::Constant:
            return t;
        case Term::Kind::Variable: {
            auto it = renames.find(t->var());
            return it == renames.end() ? t : Term::variable(it->second);
        }
        case Term::Kind::Neg:
            return Term::neg(rename_term(t->args()[0], renames));
        case Term::Kind::Pow:
            return Term::pow(rename_term(t->args()[0], renames), t->exponent());
        case Term::Kind::Add:
        case Term::Kind::Mul: {
            std::vector<TermPtr> args;
            args.reserve(t->args().size());
            for (const auto& a : t->args()) args.push_back(rename_term(a, renames));
            return t->kind() == Term::Kind::Add ? Term::add(std::move(args))
                                                : Term::mul(std::move(args));
        }
    }
    throw Error("unreachable term kind");
}

namespace {

// Printer precedence levels: additive 1, multiplicative 2, power/primary 3.
int term_prec(const TermPtr& t) {
    switch (t->kind()) {
        case Term::Kind::Add:
            return 1;
        case Term::Kind::Neg:
            return 1;
        case Term::Kind::Mul:
            return 2;
        case Term::Kind::Pow:
            return 3;
        case Term::Kind::Constant:
            return t->value().str().find_first_of("+-") != std::string::npos ? 0 : 4;
        case Term::Kind::Variable:
            return 4;
    }
    return 4;
}

void print_term(const TermPtr& t, int ctx, std::string& out) {
    bool parens = term_prec(t) < ctx;
    if (parens) out += "(";
    switch (t->kind()) {
        case Term::Kind::Constant:
            out += t->value().str();
            break;
        case Term::Kind::Variable:
            out += t->var();
            break;
        case Term::Kind::Neg:
            out += "-";
            print_term(t->args()[0], 2, out);
            break;
        case Term::Kind::Add: {
            bool first = true;
            for (const auto& a : t->args()) {
                // Balanced rendering of prime-field constants: p-1 joins the
                // sum as "- 1" and round-trips to the same folded node.
                bool neg_const = false;
                uint32_t mag = 0;
                if (a->kind() == Term::Kind::Constant) {
                    const FieldSpec& fs = a->value().field();
                    if (fs.r() == 1 && a->value().code() > fs.q() / 2) {
                        neg_const = true;
                        mag = fs.q() - a->value().code();
                    }
                }
                if (a->kind() == Term::Kind::Neg) {
                    out += first ? "-" : " - ";
                    print_term(a->args()[0], 2, out);
                } else if (neg_const) {
                    out += first ? "-" : " - ";
                    out += std::to_string(mag);
                } else {
                    if (!first) out += " + ";
                    print_term(a, 2, out);
                }
                first = false;
            }
            break;
        }
        case Term::Kind::Mul: {
            bool first = true;
            for (const auto& a : t->args()) {
                if (!first) out += "*";
                print_term(a, 3, out);
                first = false;
            }
            break;
        }
        case Term::Kind::Pow:
            print_term(t->args()[0], 4, out);
            out += "^" + std::to_string(t->exponent());
            break;
    }
    if (parens) out += ")";
}

} // namespace

std::string term_str(const TermPtr& t) {
    std::string out;
    print_term(t, 0, out);
    return out;
}

uint64_t term_estimate(const TermPtr& t) {
    constexpr uint64_t kCap = 1ull << 60;
    switch (t->kind()) {
        case Term::Kind::Constant:
        case Term::Kind::Variable:
            return 1;
        case Term::Kind::Neg:
            return term_estimate(t->args()[0]);
        case Term::Kind::Add: {
            uint64_t s = 0;
            for (const auto& a : t->args()) {
                s += term_estimate(a);
                if (s >= kCap) return kCap;
            }
            return s;
        }
        case Term::Kind::Mul: {
            uint64_t s = 1;
            for (const auto& a : t->args()) {
                uint64_t e = term_estimate(a);
                if (e && s >= kCap / e) return kCap;
                s *= e;
            }
            return s;
        }
        case Term::Kind::Pow: {
            uint64_t b = term_estimate(t->args()[0]);
            uint64_t s = 1;
            for (uint32_t i = 0; i < t->exponent(); ++i) {
                if (b && s >= kCap / b) return kCap;
                s *= b;
            }
            return s;
        }
    }
    return 1;
}

TermPtr poly_to_term(const Polynomial& p) {
    const FieldSpec& f = *p.ring()->field;
    const bool prime = f.r() == 1;
    const uint32_t pp = (uint32_t)f.p();
    if (p.is_zero()) return Term::constant(FieldElement::zero(f));
    std::vector<TermPtr> sum;
    for (const auto& t : p.terms()) {
        uint32_t c = t.second;
        bool negative = false;
        if (prime && c > pp / 2) {
            negative = true;
            c = pp - c;
        }
        std::vector<TermPtr> factors;
        if (c != 1 || t.first.is_one())
            factors.push_back(Term::constant(FieldElement(f, c)));
        for (size_t i = 0; i < t.first.exps.size(); ++i) {
            uint32_t e = t.first.exps[i];
            if (!e) continue;
            TermPtr v = Term::variable(p.ring()->vars->name(i));
            factors.push_back(e == 1 ? v : Term::pow(v, e));
        }
        TermPtr term = Term::mul(std::move(factors));
        sum.push_back(negative ? Term::neg(term) : term);
    }
    return Term::add(std::move(sum));
}

namespace {

Polynomial post_reduce(Polynomial p, const ExpandOptions& opts) {
    if (opts.field_reduce) p = p.reduce_exponents_by_field_polys();
    if (opts.reducers && !opts.reducers->empty() && !p.is_zero())
        p = normal_form(p, *opts.reducers);
    if (opts.budget) {
        opts.budget->check_terms(p.num_terms());
        opts.budget->check_time("term expansion");
    }
    return p;
}

} // namespace

Polynomial expand_term(const TermPtr& t, const RingPtr& ring, const ExpandOptions& opts) {
    switch (t->kind()) {
        case Term::Kind::Constant:
            return Polynomial::constant(ring, t->value());
        case Term::Kind::Variable:
            return Polynomial::variable(ring, t->var());
        case Term::Kind::Neg:
            return -expand_term(t->args()[0], ring, opts);
        case Term::Kind::Add: {
            Polynomial acc = Polynomial::zero(ring);
            for (const auto& a : t->args()) acc = acc + expand_term(a, ring, opts);
            if (opts.budget) opts.budget->check_terms(acc.num_terms());
            return acc;
        }
        case Term::Kind::Mul: {
            Polynomial acc = Polynomial::constant(ring, ring->field->q() > 1 ? 1u : 0u);
            for (const auto& a : t->args()) {
                acc = post_reduce(acc * expand_term(a, ring, opts), opts);
                if (acc.is_zero()) break;
            }
            return acc;
        }
        case Term::Kind::Pow: {
            Polynomial base = expand_term(t->args()[0], ring, opts);
            Polynomial acc = Polynomial::constant(ring, ring->field->q() > 1 ? 1u : 0u);
            uint32_t e = t->exponent();
            while (e) {
                if (e & 1) acc = post_reduce(acc * base, opts);
                if (e >>= 1) base = post_reduce(base * base, opts);
            }
            return acc;
        }
    }
    throw Error("unreachable term kind");
}

FieldElement eval_term(const TermPtr& t, const FieldSpec& field,
                       const std::map<std::string, FieldElement>& point) {
    switch (t->kind()) {
        case Term::Kind::Constant:
            if (&t->value().field() != &field)
                throw FieldError("constant from a different field");
            return t->value();
        case Term::Kind::Variable: {
            auto it = point.find(t->var());
            if (it == point.end())
                throw Error("missing binding for variable '" + t->var() + "'");
            return it->second;
        }
        case Term::Kind::Neg:
            return -eval_term(t->args()[0], field, point);
        case Term::Kind::Add: {
            FieldElement acc = FieldElement::zero(field);
            for (const auto& a : t->args()) acc = acc + eval_term(a, field, point);
            return acc;
        }
        case Term::Kind::Mul: {
            FieldElement acc = FieldElement::one(field);
            for (const auto& a : t->args()) acc = acc * eval_term(a, field, point);
            return acc;
        }
        case Term::Kind::Pow:
            return eval_term(t->args()[0], field, point).pow(t->exponent());
    }
    throw Error("unreachable term kind");
}

TermEvaluator::TermEvaluator(const TermPtr& t, const FieldSpec& field,
                             const std::vector<std::string>& var_order)
    : field_(&field) {
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < var_order.size(); ++i) index.emplace(var_order[i], i);
    compile(t, index);
}

void TermEvaluator::compile(const TermPtr& t, const std::map<std::string, size_t>& index) {
    switch (t->kind()) {
        case Term::Kind::Constant:
            if (&t->value().field() != field_)
                throw FieldError("constant from a different field");
            prog_.push_back({Instr::PushConst, t->value().code()});
            return;
        case Term::Kind::Variable: {
            auto it = index.find(t->var());
            if (it == index.end())
                throw Error("unbound variable '" + t->var() + "' in evaluator");
            prog_.push_back({Instr::PushVar, (uint32_t)it->second});
            return;
        }
        case Term::Kind::Neg:
            compile(t->args()[0], index);
            prog_.push_back({Instr::Negate, 0});
            return;
        case Term::Kind::Add:
        case Term::Kind::Mul:
            for (const auto& a : t->args()) compile(a, index);
            prog_.push_back({t->kind() == Term::Kind::Add ? Instr::AddN : Instr::MulN,
                             (uint32_t)t->args().size()});
            return;
        case Term::Kind::Pow:
            compile(t->args()[0], index);
            prog_.push_back({Instr::Power, t->exponent()});
            return;
    }
}

uint32_t TermEvaluator::eval(const std::vector<uint32_t>& codes) const {
    // Stack machine on element codes.
    static thread_local std::vector<uint32_t> stack;
    stack.clear();
    for (const auto& in : prog_) {
        switch (in.op) {
            case Instr::PushConst:
                stack.push_back(in.a);
                break;
            case Instr::PushVar:
                stack.push_back(codes[in.a]);
                break;
            case Instr::Negate:
                stack.back() = field_->neg(stack.back());
                break;
            case Instr::Power:
                stack.back() = field_->pow(stack.back(), in.a);
                break;
            case Instr::AddN:
            case Instr::MulN: {
                uint32_t n = in.a;
                uint32_t acc = in.op == Instr::AddN ? 0 : (field_->q() > 1 ? 1 : 0);
                for (uint32_t k = 0; k < n; ++k) {
                    uint32_t v = stack[stack.size() - n + k];
                    acc = in.op == Instr::AddN ? field_->add(acc, v) : field_->mul(acc, v);
                }
                stack.resize(stack.size() - n);
                stack.push_back(acc);
                break;
            }
        }
    }
    return stack.back();
}

} // namespace ffqe
