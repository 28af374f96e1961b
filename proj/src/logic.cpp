#include "acgi/logic.hpp"

#include <sstream>
#include <stdexcept>

namespace acgi {

using u64 = std::uint64_t;

int Structure::rel_index(const std::string& name) const {
    for (std::size_t i = 0; i < rel_names.size(); ++i)
        if (rel_names[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("Structure: unknown relation " + name);
}

int Formula::max_var() const {
    int m = -1;
    switch (kind) {
        case Kind::Atom:
            for (int v : vars) m = std::max(m, v);
            break;
        case Kind::Eq:
            m = std::max(i, j);
            break;
        case Kind::Exists:
        case Kind::Count:
            m = var;
            break;
        default:
            break;
    }
    for (auto& k : kids) m = std::max(m, k->max_var());
    return m;
}

FormulaPtr f_atom(int rel, std::vector<int> vars) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Atom;
    f->rel = rel;
    f->vars = std::move(vars);
    return f;
}

FormulaPtr f_eq(int i, int j) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Eq;
    f->i = i;
    f->j = j;
    return f;
}

namespace {

FormulaPtr make_node(Formula::Kind kind, std::vector<FormulaPtr> kids) {
    auto f = std::make_shared<Formula>();
    f->kind = kind;
    f->kids = std::move(kids);
    return f;
}

}  // namespace

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return make_node(Formula::Kind::And, {a, b}); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return make_node(Formula::Kind::Or, {a, b}); }
FormulaPtr f_not(FormulaPtr a) { return make_node(Formula::Kind::Not, {a}); }

FormulaPtr f_exists(int var, FormulaPtr a) {
    auto f = make_node(Formula::Kind::Exists, {a});
    const_cast<Formula*>(f.get())->var = var;
    return f;
}

FormulaPtr f_count(int b, int var, FormulaPtr a) {
    auto f = make_node(Formula::Kind::Count, {a});
    const_cast<Formula*>(f.get())->var = var;
    const_cast<Formula*>(f.get())->count = b;
    return f;
}

namespace {

struct Sexp {
    std::string atom;
    std::vector<Sexp> kids;
    bool is_atom() const { return kids.empty() && !atom.empty(); }
};

Sexp parse_sexp(const std::string& text, std::size_t& pos) {
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos >= text.size()) throw std::invalid_argument("formula: unexpected end of input");
    if (text[pos] == '(') {
        ++pos;
        Sexp s;
        skip();
        while (pos < text.size() && text[pos] != ')') {
            s.kids.push_back(parse_sexp(text, pos));
            skip();
        }
        if (pos >= text.size()) throw std::invalid_argument("formula: missing )");
        ++pos;
        return s;
    }
    Sexp s;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(' &&
           text[pos] != ')')
        s.atom += text[pos++];
    return s;
}

int parse_var(const std::string& tok) {
    if (tok.size() < 2 || tok[0] != 'x') throw std::invalid_argument("formula: expected a variable, got " + tok);
    int idx = std::stoi(tok.substr(1));
    if (idx < 1) throw std::invalid_argument("formula: variables are x1, x2, ...");
    return idx - 1;
}

FormulaPtr build_formula(const Sexp& s, const std::vector<std::string>& rel_names) {
    if (s.is_atom()) throw std::invalid_argument("formula: bare atom " + s.atom);
    if (s.kids.empty()) throw std::invalid_argument("formula: empty expression");
    const std::string& head = s.kids[0].atom;
    auto arg = [&](std::size_t i) -> const Sexp& {
        if (i >= s.kids.size()) throw std::invalid_argument("formula: missing argument of " + head);
        return s.kids[i];
    };
    if (head == "and" || head == "or") {
        if (s.kids.size() < 3) throw std::invalid_argument("formula: " + head + " needs two arguments");
        FormulaPtr acc = build_formula(arg(1), rel_names);
        for (std::size_t i = 2; i < s.kids.size(); ++i) {
            FormulaPtr next = build_formula(arg(i), rel_names);
            acc = head == "and" ? f_and(acc, next) : f_or(acc, next);
        }
        return acc;
    }
    if (head == "not") return f_not(build_formula(arg(1), rel_names));
    if (head == "exists") return f_exists(parse_var(arg(1).atom), build_formula(arg(2), rel_names));
    if (head == "count")
        return f_count(std::stoi(arg(1).atom), parse_var(arg(2).atom), build_formula(arg(3), rel_names));
    if (head == "=") return f_eq(parse_var(arg(1).atom), parse_var(arg(2).atom));
    // relation atom
    for (std::size_t r = 0; r < rel_names.size(); ++r)
        if (rel_names[r] == head) {
            std::vector<int> vars;
            for (std::size_t i = 1; i < s.kids.size(); ++i) vars.push_back(parse_var(s.kids[i].atom));
            return f_atom(static_cast<int>(r), std::move(vars));
        }
    throw std::invalid_argument("formula: unknown operator or relation " + head);
}

}  // namespace

FormulaPtr parse_formula(const std::string& text, const std::vector<std::string>& rel_names) {
    std::size_t pos = 0;
    Sexp s = parse_sexp(text, pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw std::invalid_argument("formula: trailing input");
    return build_formula(s, rel_names);
}

std::string format_formula(const Formula& f, const std::vector<std::string>& rel_names) {
    std::ostringstream os;
    switch (f.kind) {
        case Formula::Kind::Atom: {
            os << "(" << rel_names.at(f.rel);
            for (int v : f.vars) os << " x" << v + 1;
            os << ")";
            break;
        }
        case Formula::Kind::Eq:
            os << "(= x" << f.i + 1 << " x" << f.j + 1 << ")";
            break;
        case Formula::Kind::And:
            os << "(and " << format_formula(*f.kids[0], rel_names) << " "
               << format_formula(*f.kids[1], rel_names) << ")";
            break;
        case Formula::Kind::Or:
            os << "(or " << format_formula(*f.kids[0], rel_names) << " "
               << format_formula(*f.kids[1], rel_names) << ")";
            break;
        case Formula::Kind::Not:
            os << "(not " << format_formula(*f.kids[0], rel_names) << ")";
            break;
        case Formula::Kind::Exists:
            os << "(exists x" << f.var + 1 << " " << format_formula(*f.kids[0], rel_names) << ")";
            break;
        case Formula::Kind::Count:
            os << "(count " << f.count << " x" << f.var + 1 << " "
               << format_formula(*f.kids[0], rel_names) << ")";
            break;
    }
    return os.str();
}

namespace {

bool holds_rec(const Structure& s, const Formula& f, std::vector<int>& asg) {
    switch (f.kind) {
        case Formula::Kind::Atom: {
            const Relation& rel = s.rels.at(f.rel);
            std::vector<int> tuple;
            tuple.reserve(f.vars.size());
            for (int v : f.vars) {
                if (asg[v] < 0) throw std::invalid_argument("holds: unbound variable x" + std::to_string(v + 1));
                tuple.push_back(asg[v]);
            }
            if (static_cast<int>(tuple.size()) != rel.arity)
                throw std::invalid_argument("holds: atom arity mismatch");
            return std::find(rel.tuples.begin(), rel.tuples.end(), tuple) != rel.tuples.end();
        }
        case Formula::Kind::Eq:
            if (asg[f.i] < 0 || asg[f.j] < 0) throw std::invalid_argument("holds: unbound variable");
            return asg[f.i] == asg[f.j];
        case Formula::Kind::And:
            return holds_rec(s, *f.kids[0], asg) && holds_rec(s, *f.kids[1], asg);
        case Formula::Kind::Or:
            return holds_rec(s, *f.kids[0], asg) || holds_rec(s, *f.kids[1], asg);
        case Formula::Kind::Not:
            return !holds_rec(s, *f.kids[0], asg);
        case Formula::Kind::Exists: {
            int saved = asg[f.var];
            bool found = false;
            for (int w = 0; w < s.n && !found; ++w) {
                asg[f.var] = w;
                found = holds_rec(s, *f.kids[0], asg);
            }
            asg[f.var] = saved;
            return found;
        }
        case Formula::Kind::Count: {
            int saved = asg[f.var];
            int cnt = 0;
            for (int w = 0; w < s.n; ++w) {
                asg[f.var] = w;
                cnt += holds_rec(s, *f.kids[0], asg);
            }
            asg[f.var] = saved;
            return cnt == f.count;
        }
    }
    throw std::logic_error("holds: unhandled kind");
}

}  // namespace

bool holds(const Structure& s, const Formula& f, std::vector<int> assignment) {
    int mv = f.max_var();
    if (static_cast<int>(assignment.size()) <= mv) assignment.resize(mv + 1, -1);
    return holds_rec(s, f, assignment);
}

FpVec truth_table(const FieldSpec& F, const Structure& s, const Formula& f, int d) {
    std::size_t len = 1;
    for (int i = 0; i < d; ++i) len *= static_cast<std::size_t>(s.n);
    FpVec out(len, 0);
    std::vector<int> asg(d, 0);
    for (std::size_t t = 0; t < len; ++t) {
        std::size_t tmp = t;
        for (int q = d - 1; q >= 0; --q) {
            asg[q] = static_cast<int>(tmp % s.n);
            tmp /= s.n;
        }
        out[t] = holds_rec(s, f, asg) ? 1 : 0;
    }
    (void)F;
    return out;
}

namespace {

// Lagrange interpolation through (x_i, y_i), x_i = 0..n; coefficients low-to-high.
FpVec interpolate(const FieldSpec& F, const std::vector<u64>& ys) {
    const std::size_t m = ys.size();
    FpVec coeffs(m, 0);
    for (std::size_t b = 0; b < m; ++b) {
        if (!ys[b]) continue;
        // basis polynomial prod_{j != b} (t - j) / (b - j)
        FpVec poly{1};
        u64 denom = 1;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == b) continue;
            FpVec next(poly.size() + 1, 0);
            u64 neg_j = F.neg(j % F.p);
            for (std::size_t c = 0; c < poly.size(); ++c) {
                next[c + 1] = F.add(next[c + 1], poly[c]);
                next[c] = F.add(next[c], F.mul(poly[c], neg_j));
            }
            poly = std::move(next);
            denom = F.mul(denom, F.sub(b % F.p, j % F.p));
        }
        u64 scale = F.mul(ys[b], F.inv(denom));
        for (std::size_t c = 0; c < poly.size(); ++c)
            coeffs[c] = F.add(coeffs[c], F.mul(scale, poly[c]));
    }
    return coeffs;
}

struct CompileCtx {
    const FieldSpec& F;
    int n;
    int d;
    std::size_t table_len;
    std::vector<std::size_t> block_offset;
    std::vector<int> arities;
    std::size_t const_offset;
    std::size_t enc_dim;
    Representation enc_rep;
    Representation table_rep;
};

EquivariantExpr ones_expr(const CompileCtx& ctx, u64 scale) {
    LinearMap m;
    m.kind = LinearMap::Kind::OnesTable;
    m.in_dim = ctx.enc_dim;
    m.out_dim = ctx.table_len;
    m.offset = ctx.const_offset;
    m.n = ctx.n;
    m.d = ctx.d;
    EquivariantExpr ones = EquivariantExpr::linear(ctx.F, ctx.enc_rep, ctx.table_rep, std::move(m));
    if (scale == 1) return ones;
    return EquivariantExpr::lin_comb(scale, ones, 0, ones);
}

// [q](w) by the recursion q(t) = t u(t) + a: [q](w) = [u](w) * w + a * ones
EquivariantExpr horner(const CompileCtx& ctx, const FpVec& coeffs, const EquivariantExpr& w) {
    if (coeffs.size() <= 1) return ones_expr(ctx, coeffs.empty() ? 0 : coeffs[0]);
    FpVec u(coeffs.begin() + 1, coeffs.end());
    EquivariantExpr tu = EquivariantExpr::star(horner(ctx, u, w), w);
    if (coeffs[0] == 0) return tu;
    return EquivariantExpr::lin_comb(1, tu, 1, ones_expr(ctx, coeffs[0]));
}

EquivariantExpr compile_rec(const CompileCtx& ctx, const Formula& f) {
    const FieldSpec& F = ctx.F;
    switch (f.kind) {
        case Formula::Kind::Atom: {
            LinearMap m;
            m.kind = LinearMap::Kind::AtomRead;
            m.in_dim = ctx.enc_dim;
            m.out_dim = ctx.table_len;
            m.offset = ctx.block_offset.at(f.rel);
            m.n = ctx.n;
            m.d = ctx.d;
            if (static_cast<int>(f.vars.size()) != ctx.arities.at(f.rel))
                throw std::invalid_argument("compile: atom arity mismatch");
            m.positions = f.vars;
            for (int v : f.vars)
                if (v >= ctx.d) throw std::invalid_argument("compile: variable index beyond d");
            return EquivariantExpr::linear(F, ctx.enc_rep, ctx.table_rep, std::move(m));
        }
        case Formula::Kind::Eq: {
            LinearMap m;
            m.kind = LinearMap::Kind::EqIndicator;
            m.in_dim = ctx.enc_dim;
            m.out_dim = ctx.table_len;
            m.offset = ctx.const_offset;
            m.n = ctx.n;
            m.d = ctx.d;
            m.i = f.i;
            m.j = f.j;
            if (f.i >= ctx.d || f.j >= ctx.d) throw std::invalid_argument("compile: variable index beyond d");
            return EquivariantExpr::linear(F, ctx.enc_rep, ctx.table_rep, std::move(m));
        }
        case Formula::Kind::And:
            return EquivariantExpr::star(compile_rec(ctx, *f.kids[0]), compile_rec(ctx, *f.kids[1]));
        case Formula::Kind::Or: {
            // a or b = not(not a and not b)
            EquivariantExpr na = EquivariantExpr::lin_comb(1, ones_expr(ctx, 1), F.neg(1),
                                                           compile_rec(ctx, *f.kids[0]));
            EquivariantExpr nb = EquivariantExpr::lin_comb(1, ones_expr(ctx, 1), F.neg(1),
                                                           compile_rec(ctx, *f.kids[1]));
            return EquivariantExpr::lin_comb(1, ones_expr(ctx, 1), F.neg(1),
                                             EquivariantExpr::star(na, nb));
        }
        case Formula::Kind::Not:
            return EquivariantExpr::lin_comb(1, ones_expr(ctx, 1), F.neg(1), compile_rec(ctx, *f.kids[0]));
        case Formula::Kind::Exists:
        case Formula::Kind::Count: {
            if (f.var >= ctx.d) throw std::invalid_argument("compile: variable index beyond d");
            EquivariantExpr body = compile_rec(ctx, *f.kids[0]);
            LinearMap pr;
            pr.kind = LinearMap::Kind::ProjSum;
            pr.in_dim = ctx.table_len;
            pr.out_dim = ctx.table_len;
            pr.n = ctx.n;
            pr.d = ctx.d;
            pr.i = f.var;
            EquivariantExpr counted = EquivariantExpr::compose(
                EquivariantExpr::linear(F, ctx.table_rep, ctx.table_rep, std::move(pr)), body);
            std::vector<u64> ys(ctx.n + 1, 0);
            if (f.kind == Formula::Kind::Exists) {
                for (int c = 1; c <= ctx.n; ++c) ys[c] = 1;
            } else {
                if (f.count >= 0 && f.count <= ctx.n) ys[f.count] = 1;
            }
            FpVec q = interpolate(F, ys);
            return horner(ctx, q, counted);
        }
    }
    throw std::logic_error("compile: unhandled kind");
}

}  // namespace

CompiledFormula compile_formula(const FieldSpec& F, int n, const std::vector<int>& arities,
                                const Formula& f, int d) {
    if (F.p <= static_cast<u64>(n))
        throw std::invalid_argument("compile_formula: requires p > n (got p = " + std::to_string(F.p) +
                                    ", n = " + std::to_string(n) + ")");
    if (f.max_var() >= d) throw std::invalid_argument("compile_formula: formula uses more than d variables");
    CompileCtx ctx{F, n, d, 1, {}, arities, 0, 0, {}, {}};
    for (int i = 0; i < d; ++i) ctx.table_len *= static_cast<std::size_t>(n);
    std::size_t off = 0;
    for (int a : arities) {
        ctx.block_offset.push_back(off);
        std::size_t len = 1;
        for (int i = 0; i < a; ++i) len *= static_cast<std::size_t>(n);
        off += len;
    }
    ctx.const_offset = off;
    ctx.enc_dim = off + 1;
    int ell = 0;
    for (int a : arities) ell = std::max(ell, a);
    ctx.enc_rep = rep_light(nullptr, ctx.enc_dim, ell, "enc");
    ctx.table_rep = rep_light(nullptr, ctx.table_len, d, "U^" + std::to_string(d));
    CompiledFormula out{compile_rec(ctx, f), d, n};
    if (out.expr.required_budget() > 2 * d)
        throw std::logic_error("compile_formula: budget accounting exceeded 2d");
    return out;
}

FpVec eval_compiled(const CompiledFormula& c, const StructureEncoding& enc) {
    return eval_equivariant(c.expr, enc.vec);
}

}  // namespace acgi
