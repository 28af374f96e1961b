#pragma once

#include <memory>
#include <string>

#include "acgi/functor.hpp"
#include "acgi/sym_model.hpp"

namespace acgi {

// Finite relational structure: named relations over [0, n).
struct Structure {
    int n = 0;
    std::vector<std::string> rel_names;
    std::vector<Relation> rels;

    int rel_index(const std::string& name) const;
};

// Counting-logic formulas with at most d variable symbols (reuse allowed):
// relation atoms, equality, and, not, exists, and exact-count quantifiers.
struct Formula {
    enum class Kind { Atom, Eq, And, Or, Not, Exists, Count };
    Kind kind;
    int rel = -1;               // Atom
    std::vector<int> vars;      // Atom arguments
    int i = 0, j = 0;           // Eq
    int var = 0;                // Exists / Count bound variable
    int count = 0;              // Count target b
    std::vector<std::shared_ptr<const Formula>> kids;

    int max_var() const;
};

using FormulaPtr = std::shared_ptr<const Formula>;

FormulaPtr f_atom(int rel, std::vector<int> vars);
FormulaPtr f_eq(int i, int j);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_exists(int var, FormulaPtr a);
FormulaPtr f_count(int b, int var, FormulaPtr a);

// S-expression syntax, e.g. "(exists x2 (and (edge x1 x2) (not (= x1 x2))))"
// and "(count 2 x2 (edge x1 x2))"; variables are x1..xd.
FormulaPtr parse_formula(const std::string& text, const std::vector<std::string>& rel_names);
std::string format_formula(const Formula& f, const std::vector<std::string>& rel_names);

// Direct semantics. assignment[i] is the value of x_{i+1}; entries must be
// set for every free variable (checked).
bool holds(const Structure& s, const Formula& f, std::vector<int> assignment);

// Indicator table of the satisfying assignments over [0, n)^d.
FpVec truth_table(const FieldSpec& F, const Structure& s, const Formula& f, int d);

// Compile into a constructible equivariant acting on structure encodings:
// evaluating the result on the encoding of any structure with these relation
// arities yields the truth table. Requires p > n.
struct CompiledFormula {
    EquivariantExpr expr;
    int d;
    int n;
};
CompiledFormula compile_formula(const FieldSpec& F, int n, const std::vector<int>& arities,
                                const Formula& f, int d);

// evaluation on an encoding produced with the same relation shape
FpVec eval_compiled(const CompiledFormula& c, const StructureEncoding& enc);

}  // namespace acgi
