#pragma once

#include <random>
#include <vector>

#include "hypergeom/factored_expr.hpp"

namespace hypergeom::testgen {

// Deterministic stream of expressions over the parseable alphabet, exercising
// fractions, negative scalars, inverse factors, and repeated forms.
class ExprCorpus {
  public:
    explicit ExprCorpus(unsigned seed) : rng_(seed) {}

    Rat scalar() {
        Rat num(pick(-12, 12));
        if (num == 0) num = 1;
        if (pick(0, 3) == 0) return num / Rat(pick(2, 7));
        return num;
    }

    LinearForm form() {
        LinearForm l;
        while (l.is_zero() || l.is_constant()) {
            l = LinearForm();
            for (const Variable& v : vars())
                if (pick(0, 2) == 0) l.add_term(v, Rat(pick(-4, 4)));
            if (pick(0, 2) == 0) l.add_constant(Rat(pick(-5, 5)));
        }
        return l;
    }

    FactoredExpr expr() {
        FactoredExpr e = FactoredExpr::from_scalar(scalar());
        int nfactors = pick(0, 5);
        for (int i = 0; i < nfactors; ++i) {
            long exp = 0;
            while (exp == 0) exp = pick(-3, 3);
            e.multiply_form(form(), exp);
        }
        return e;
    }

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  private:
    static const std::vector<Variable>& vars() {
        static const std::vector<Variable> v = [] {
            std::vector<Variable> a{Variable::x(), Variable::alpha()};
            for (int i = 1; i <= 4; ++i) a.push_back(Variable::u(i));
            for (int i = 1; i <= 3; ++i) a.push_back(Variable::H(i));
            for (int i = 1; i <= 3; ++i) a.push_back(Variable::kappa(i));
            for (int i = 1; i <= 4; ++i) a.push_back(Variable::y(i));
            return a;
        }();
        return v;
    }

    std::mt19937 rng_;
};

}  // namespace hypergeom::testgen
